#include "conelip/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "conelip/exact.hpp"
#include "conelip/json_io.hpp"
#include "conelip/mcshane.hpp"

namespace conelip {

bool RunReport::all_pass() const {
    for (const auto& r : records)
        if (!r.pass) return false;
    return true;
}

double RunReport::max_residual() const {
    double m = 0.0;
    for (const auto& r : records) m = std::max(m, r.residual);
    return m;
}

namespace testgen {

Vec random_vec(SplitMix64& rng, int dim, double lo, double hi) {
    Vec v(dim);
    for (double& c : v) c = rng.uniform(lo, hi);
    return v;
}

Vec random_unit(SplitMix64& rng, int dim, NormTag norm) {
    for (;;) {
        Vec v = random_vec(rng, dim, -1.0, 1.0);
        const double n = norm_of(norm, v);
        if (n < 0.1) continue;
        for (double& c : v) c /= n;
        return v;
    }
}

PointedSpace random_embedded_space(SplitMix64& rng, int dim, int npts, NormTag norm) {
    std::vector<Vec> pts;
    while (static_cast<int>(pts.size()) < npts) {
        Vec p = random_vec(rng, dim, -3.0, 3.0);
        bool ok = true;
        for (const Vec& q : pts)
            if (dist_of(norm, p, q) < 1e-3) ok = false;
        if (ok) pts.push_back(std::move(p));
    }
    return make_embedded_space(dim, norm, std::move(pts));
}

PointedSpace random_matrix_space(SplitMix64& rng, int npts) {
    std::vector<std::vector<double>> d(npts, std::vector<double>(npts, 0.0));
    for (int i = 0; i < npts; ++i)
        for (int j = i + 1; j < npts; ++j) d[i][j] = d[j][i] = rng.dyadic(1.0, 2.0);
    return make_matrix_space(d);
}

PointedSpace random_space(SplitMix64& rng, int max_pts) {
    const int n = rng.randint(2, max_pts);
    if (rng.coin()) return random_matrix_space(rng, n);
    return random_embedded_space(rng, rng.randint(1, 3), n, random_norm(rng));
}

ScalarField random_field(SplitMix64& rng, const PointedSpace& space, double amp) {
    std::vector<double> v(space.n, 0.0);
    for (int i = 1; i < space.n; ++i) v[i] = rng.dyadic(-amp, amp);
    return make_scalar_field(space, std::move(v));
}

RaySystem random_rays(SplitMix64& rng, int dim, int count, NormTag norm) {
    if (dim == 1) {
        std::vector<Vec> dirs = {{1.0}, {-1.0}};
        dirs.resize(std::min(count, 2));
        return make_ray_system(1, norm, std::move(dirs));
    }
    std::vector<Vec> dirs;
    while (static_cast<int>(dirs.size()) < count) {
        Vec u = random_unit(rng, dim, norm);
        bool ok = true;
        for (const Vec& w : dirs)
            if (dist_of(norm, u, w) < 1e-2) ok = false;
        if (ok) dirs.push_back(std::move(u));
    }
    return make_ray_system(dim, norm, std::move(dirs));
}

PHField random_ph_field(SplitMix64& rng, const RaySystem& rays, double amp) {
    std::vector<double> v(rays.count());
    for (double& c : v) c = rng.dyadic(-amp, amp);
    return PHField{std::move(v)};
}

FreeElement random_element(SplitMix64& rng, const PointedSpace& space, int max_terms) {
    std::vector<std::pair<int, double>> raw;
    const int k = rng.randint(1, max_terms);
    for (int t = 0; t < k; ++t) {
        double a = rng.dyadic(-2.0, 2.0);
        if (a == 0.0) a = 1.0;
        raw.emplace_back(rng.randint(1, space.n - 1), a);
    }
    return make_free_element(space, raw);
}

NormTag random_norm(SplitMix64& rng) {
    switch (rng.randint(0, 2)) {
        case 0: return NormTag::l1;
        case 1: return NormTag::l2;
        default: return NormTag::linf;
    }
}

std::vector<ScalarField> random_generators(SplitMix64& rng, const PointedSpace& space, int k) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<ScalarField> gens;
        for (int a = 0; a < k; ++a) gens.push_back(random_field(rng, space));
        // quick rank probe on the value vectors
        std::vector<std::vector<double>> m;
        for (const auto& f : gens) m.push_back(f.values);
        int rank = 0;
        for (int col = 0; col < space.n && rank < k; ++col) {
            int piv = -1;
            for (int r = rank; r < k; ++r)
                if (piv < 0 || std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
            if (piv < 0 || std::abs(m[piv][col]) <= 1e-6) continue;
            std::swap(m[piv], m[rank]);
            for (int r = rank + 1; r < k; ++r) {
                const double f = m[r][col] / m[rank][col];
                for (int c = col; c < space.n; ++c) m[r][c] -= f * m[rank][c];
            }
            ++rank;
        }
        if (rank == k) return gens;
    }
    throw NumericalFailure("could not sample independent generators");
}

}  // namespace testgen

namespace {

using namespace testgen;

class Case {
  public:
    Case(int idx, std::string op, std::string primary)
        : idx_(idx) {
        rec_.case_index = idx;
        rec_.operation = std::move(op);
        rec_.relation = std::move(primary);
    }

    void input(const std::string& role, std::string json) {
        inputs_.emplace_back(role, std::move(json));
    }

    void measure(double v) { rec_.measured.push_back(v); }

    // residual: how far past the allowed slack the check is (<= 0 passes)
    void require(bool ok, const std::string& relation, double residual) {
        rec_.residual = std::max(rec_.residual, residual);
        if (!ok && rec_.pass) {
            rec_.pass = false;
            rec_.relation = relation;
        }
    }

    void fail(const std::string& relation) { require(false, relation, 1.0); }

    CaseRecord finish(const std::string& suite, const std::string& dump_dir) {
        std::string all;
        for (const auto& [role, js] : inputs_) all += js;
        rec_.inputs_digest = digest(all);
        if (!rec_.pass) {
            std::string paths;
            for (const auto& [role, js] : inputs_) {
                const std::string p = dump_dir + "/counterexample_" + suite + "_" +
                                      std::to_string(idx_) + "_" + role + ".json";
                write_text_file(p, js + "\n");
                if (!paths.empty()) paths += ";";
                paths += p;
            }
            rec_.counterexample = paths;
        }
        return rec_;
    }

  private:
    int idx_;
    CaseRecord rec_;
    std::vector<std::pair<std::string, std::string>> inputs_;
};

double rel_excess(double value, double bound, double tol) {
    // positive when value > bound beyond tol*scale
    return (value - bound) - tol * std::max(1.0, std::abs(bound));
}

bool within(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// ---------------------------------------------------------------- lipschitz

void case_lipschitz(int idx, SplitMix64 rng, Case& c) {
    const PointedSpace space = random_space(rng, 8);
    const ScalarField f = random_field(rng, space);
    const ScalarField g = random_field(rng, space);
    c.input("space", space_to_json(space));
    c.input("field", field_to_json(f));

    const double lf = lip_const(space, f).value;
    const double lg = lip_const(space, g).value;
    c.measure(lf);

    const double alpha = rng.dyadic(-4.0, 4.0);
    ScalarField af{f.values};
    for (double& v : af.values) v *= alpha;
    const double laf = lip_const(space, af).value;
    c.require(within(laf, std::abs(alpha) * lf, 1e-12), "Lip(a f) = |a| Lip(f)",
              std::abs(laf - std::abs(alpha) * lf));

    ScalarField fg{f.values};
    for (int i = 0; i < space.n; ++i) fg.values[i] += g.values[i];
    const double lfg = lip_const(space, fg).value;
    c.require(rel_excess(lfg, lf + lg, 1e-12) <= 0, "Lip(f+g) <= Lip(f) + Lip(g)",
              rel_excess(lfg, lf + lg, 1e-12));

    std::vector<int> subset = {0};
    for (int i = 1; i < space.n; ++i)
        if (rng.coin()) subset.push_back(i);
    const PointedSpace sub = restrict_space(space, subset);
    const ScalarField fsub = restrict_field(f, subset);
    const double lsub = lip_const(sub, fsub).value;
    c.require(rel_excess(lsub, lf, 1e-12) <= 0, "restriction does not increase Lip",
              rel_excess(lsub, lf, 1e-12));

    if (space.embedded()) {
        const PointedSpace again = make_embedded_space(space.dim, space.norm, space.points);
        c.require(again.dist_ == space.dist_, "regenerated distance matrix is bit-identical",
                  again.dist_ == space.dist_ ? 0.0 : 1.0);
    }
}

// ------------------------------------------------------------------ mcshane

void case_mcshane(int idx, SplitMix64 rng, Case& c) {
    const PointedSpace space = random_space(rng, 10);
    std::vector<int> domain = {0};
    for (int i = 1; i < space.n; ++i)
        if (rng.coin()) domain.push_back(i);
    std::vector<double> vals(domain.size(), 0.0);
    for (std::size_t a = 1; a < domain.size(); ++a) vals[a] = rng.dyadic(-3.0, 3.0);
    const PartialField pf = make_partial_field(space, domain, vals);
    c.input("space", space_to_json(space));
    c.input("partial", partial_field_to_json(pf));

    const double L = partial_lip(space, pf).value;
    const ScalarField F = mcshane_sup(space, pf);
    const ScalarField G = mcshane_inf(space, pf);
    c.measure(L);

    for (std::size_t a = 0; a < domain.size(); ++a) {
        const bool okF = F.values[domain[a]] == vals[a];
        const bool okG = G.values[domain[a]] == vals[a];
        c.require(okF && okG, "extensions agree with the data on E", okF && okG ? 0.0 : 1.0);
    }
    const double lF = lip_const(space, F).value;
    const double lG = lip_const(space, G).value;
    c.require(within(lF, L, 1e-12) && within(lG, L, 1e-12),
              "extension preserves the Lipschitz constant",
              std::max(std::abs(lF - L), std::abs(lG - L)));
    for (int i = 0; i < space.n; ++i)
        c.require(F.values[i] <= G.values[i] + 1e-12, "sup-extension <= inf-extension",
                  F.values[i] - G.values[i]);

    // monotonicity when E grows with consistent values
    if (static_cast<int>(domain.size()) < space.n) {
        int extra = -1;
        for (int i = 1; i < space.n && extra < 0; ++i)
            if (std::find(domain.begin(), domain.end(), i) == domain.end()) extra = i;
        std::vector<int> domain2 = domain;
        std::vector<double> vals2 = vals;
        domain2.push_back(extra);
        vals2.push_back(F.values[extra]);
        const PartialField pf2 = make_partial_field(space, domain2, vals2);
        const ScalarField F2 = mcshane_sup(space, pf2);
        const ScalarField G2 = mcshane_inf(space, pf2);
        for (int i = 0; i < space.n; ++i) {
            c.require(F2.values[i] >= F.values[i] - 1e-12,
                      "sup-extension grows when E grows", F.values[i] - F2.values[i]);
            c.require(G2.values[i] <= G.values[i] + 1e-12,
                      "inf-extension shrinks when E grows", G2.values[i] - G.values[i]);
        }
    }

    // sample a vertex of the Lip-L extension polytope and sandwich it
    {
        LPProblem p;
        p.sense = Sense::maximize;
        for (int i = 1; i < space.n; ++i)
            p.add_variable(rng.dyadic(-1.0, 1.0), -L * space.dist(0, i), L * space.dist(0, i));
        for (int i = 1; i < space.n; ++i)
            for (int j = i + 1; j < space.n; ++j) {
                std::vector<double> row(space.n - 1, 0.0);
                row[i - 1] = 1.0;
                row[j - 1] = -1.0;
                p.add_row(row, Rel::le, L * space.dist(i, j));
                for (double& v : row) v = -v;
                p.add_row(std::move(row), Rel::le, L * space.dist(i, j));
            }
        for (std::size_t a = 0; a < domain.size(); ++a) {
            if (domain[a] == 0) continue;
            std::vector<double> row(space.n - 1, 0.0);
            row[domain[a] - 1] = 1.0;
            p.add_row(std::move(row), Rel::eq, vals[a]);
        }
        const LPSolution s = solve_lp(p);
        if (s.status != LPStatus::optimal) {
            c.fail("Lip-L extension polytope is nonempty");
        } else {
            for (int i = 1; i < space.n; ++i) {
                const double h = s.primal[i - 1];
                c.require(h >= F.values[i] - 1e-9 && h <= G.values[i] + 1e-9,
                          "every Lip-L extension lies between the extremal ones",
                          std::max(F.values[i] - h, h - G.values[i]));
            }
        }
    }

    // exact-rational spot check on exactly representable metrics
    if (!space.embedded() && idx % 25 == 0) {
        const int n = space.n;
        auto D = [&](int i, int j) { return Rational(space.dist(i, j)); };
        Rational Lx(0);
        for (std::size_t a = 0; a < domain.size(); ++a)
            for (std::size_t b = a + 1; b < domain.size(); ++b) {
                Rational q = Rational(vals[a]) - Rational(vals[b]);
                if (q < 0) q = -q;
                q /= D(domain[a], domain[b]);
                if (q > Lx) Lx = q;
            }
        std::vector<Rational> Fx(n);
        for (int x = 0; x < n; ++x) {
            bool inE = false;
            for (std::size_t a = 0; a < domain.size(); ++a)
                if (domain[a] == x) {
                    Fx[x] = Rational(vals[a]);
                    inE = true;
                }
            if (inE) continue;
            bool first = true;
            for (std::size_t a = 0; a < domain.size(); ++a) {
                const Rational cand = Rational(vals[a]) - Lx * D(x, domain[a]);
                if (first || cand > Fx[x]) Fx[x] = cand;
                first = false;
            }
        }
        Rational lip_exact(0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Rational q = Fx[i] - Fx[j];
                if (q < 0) q = -q;
                q /= D(i, j);
                if (q > lip_exact) lip_exact = q;
            }
        const bool same = (domain.size() < 2) ? (lip_exact == 0) : (lip_exact == Lx);
        c.require(same, "extension preserves the Lipschitz constant (exact)", same ? 0.0 : 1.0);
    }
}

// --------------------------------------------------------------------- cone

void case_cone(int idx, SplitMix64 rng, Case& c) {
    const NormTag norm = random_norm(rng);
    const int dim = rng.randint(1, 3);
    const int count = (dim == 1) ? 2 : rng.randint(2, 12);
    const RaySystem rays = random_rays(rng, dim, count, norm);
    const PHField f = random_ph_field(rng, rays);
    c.input("rays", rays_to_json(rays, f));

    const double cl = cone_lip(rays, f);
    c.measure(cl);

    if (dim == 1) {
        const double want = std::max(std::abs(f.values[0]), std::abs(f.values[1]));
        c.require(within(cl, want, 1e-9), "cone Lip on the line is max(|f(1)|,|f(-1)|)",
                  std::abs(cl - want));
    }

    const PointedSpace sphere = sphere_space(rays);
    const ScalarField lam = lambda_restrict(rays, f);
    const double sl = lip_const(sphere, lam).value;
    c.require(rel_excess(sl, cl, 1e-9) <= 0, "sphere restriction is a contraction",
              rel_excess(sl, cl, 1e-9));
    c.require(rel_excess(cl, 3.0 * sl, 1e-9) <= 0, "homogeneous extension is 3-bounded",
              rel_excess(cl, 3.0 * sl, 1e-9));
    const PHField back = lambda_inverse(rays, lam);
    c.require(back.values == f.values, "restriction followed by extension is the identity",
              back.values == f.values ? 0.0 : 1.0);

    for (int rep = 0; rep < 10; ++rep) {
        Vec x = random_vec(rng, dim, -3.0, 3.0);
        Vec y = random_vec(rng, dim, -3.0, 3.0);
        const double nx = norm_of(norm, x), ny = norm_of(norm, y);
        if (nx < 1e-3 || ny < 1e-3) continue;
        const double lhs = nx * dist_of(norm, normalized(x, norm), normalized(y, norm));
        const double rhs = 2.0 * dist_of(norm, x, y);
        c.require(rel_excess(lhs, rhs, 1e-9) <= 0, "radial two-point bound <= 2||x-y||",
                  rel_excess(lhs, rhs, 1e-9));
        const Vec gx = ball_projection(x, norm), gy = ball_projection(y, norm);
        const double pl = dist_of(norm, gx, gy);
        const double pr = 2.0 * dist_of(norm, x, y);
        c.require(rel_excess(pl, pr, 1e-9) <= 0, "ball projection is 2-Lipschitz",
                  rel_excess(pl, pr, 1e-9));
    }

    if (rays.count() >= 2) {
        const int nsub = rng.randint(1, rays.count() - 1);
        std::vector<int> perm(rays.count());
        for (int i = 0; i < rays.count(); ++i) perm[i] = i;
        for (int i = rays.count() - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.randint(0, i)]);
        std::vector<int> sub(perm.begin(), perm.begin() + nsub);
        std::vector<double> fsub(nsub);
        for (int a = 0; a < nsub; ++a) fsub[a] = rng.dyadic(-3.0, 3.0);

        std::vector<Vec> sub_dirs;
        for (int s : sub) sub_dirs.push_back(rays.dirs[s]);
        const RaySystem sub_sys{rays.dim, rays.norm, sub_dirs};
        const double L = cone_lip(sub_sys, PHField{fsub});

        const PHField ext = ph_mcshane_extend(rays, sub, fsub);
        for (int a = 0; a < nsub; ++a)
            c.require(ext.values[sub[a]] == fsub[a], "ph-extension agrees on the sub-cone",
                      ext.values[sub[a]] == fsub[a] ? 0.0 : 1.0);
        const double lext = cone_lip(rays, ext);
        c.require(within(lext, L, 1e-9), "ph-extension preserves the cone Lip constant",
                  std::abs(lext - L));

        // two-step extension through an intermediate sub-cone
        if (nsub + 1 < rays.count()) {
            std::vector<int> mid(perm.begin(), perm.begin() + nsub + 1);
            std::vector<Vec> mid_dirs;
            for (int s : mid) mid_dirs.push_back(rays.dirs[s]);
            const RaySystem mid_sys{rays.dim, rays.norm, mid_dirs};
            std::vector<int> sub_in_mid(nsub);
            for (int a = 0; a < nsub; ++a) sub_in_mid[a] = a;
            const PHField step1 = ph_mcshane_extend(mid_sys, sub_in_mid, fsub);
            const PHField step2 = ph_mcshane_extend(rays, mid, step1.values);
            const double l2step = cone_lip(rays, step2);
            c.require(within(l2step, L, 1e-9), "two-step ph-extension keeps the constant",
                      std::abs(l2step - L));
        }

        // sampled cone points never exceed the cone Lip constant
        std::vector<Vec> pts(1, Vec(dim, 0.0));
        std::vector<double> vals(1, 0.0);
        for (int i = 0; i < rays.count(); ++i) {
            const double r = rng.dyadic(0.25, 4.0);
            Vec p = rays.dirs[i];
            for (double& pc : p) pc *= r;
            pts.push_back(std::move(p));
            vals.push_back(r * f.values[i]);
        }
        const PointedSpace sample = make_embedded_space(dim, norm, pts);
        const double lsamp = lip_const(sample, make_scalar_field(sample, vals)).value;
        c.require(rel_excess(lsamp, cl, 1e-9) <= 0,
                  "sampled-field Lip is dominated by the cone Lip", rel_excess(lsamp, cl, 1e-9));
    }
}

// ------------------------------------------------------------------ algebra

void case_algebra(int idx, SplitMix64 rng, Case& c) {
    const NormTag norm = random_norm(rng);
    const int dim = rng.randint(1, 3);
    const int count = (dim == 1) ? 2 : rng.randint(2, 10);
    const RaySystem rays = random_rays(rng, dim, count, norm);
    const PHField f = random_ph_field(rng, rays);
    const PHField g = random_ph_field(rng, rays);
    c.input("rays_f", rays_to_json(rays, f));
    c.input("rays_g", rays_to_json(rays, g));

    const PHField fg = odot(rays, f, g);
    for (int i = 0; i < rays.count(); ++i) {
        const bool ok = fg.values[i] == f.values[i] * g.values[i] * 0.2;
        c.require(ok, "product values are f*g/5", ok ? 0.0 : 1.0);
    }
    const double lf = cone_lip(rays, f);
    const double lg = cone_lip(rays, g);
    const double lfg = cone_lip(rays, fg);
    c.measure(lfg);
    c.require(rel_excess(lfg, lf * lg, 1e-9) <= 0, "Lip(f.g) <= Lip(f) Lip(g)",
              rel_excess(lfg, lf * lg, 1e-9));

    const PHField h = random_ph_field(rng, rays);
    const PHField left = odot(rays, fg, h);
    const PHField right = odot(rays, f, odot(rays, g, h));
    for (int i = 0; i < rays.count(); ++i)
        c.require(within(left.values[i], right.values[i], 1e-14), "product is associative",
                  std::abs(left.values[i] - right.values[i]));
}

// ---------------------------------------------------------------- freespace

void case_freespace(int idx, SplitMix64 rng, Case& c) {
    const PointedSpace space = random_space(rng, 8);
    const FreeElement mu = random_element(rng, space);
    const FreeElement nu = random_element(rng, space);
    c.input("space", space_to_json(space));
    c.input("element", free_element_to_json(mu));

    const KrResult both = kr_norm(space, mu, KrMethod::both);
    c.measure(both.value);
    c.require(both.lp_gap <= 1e-9, "LP primal/dual gap <= 1e-9", both.lp_gap - 1e-9);
    c.require(both.route_gap <= 1e-9 * std::max(1.0, both.value),
              "LP and flow routes agree on the KR norm",
              both.route_gap - 1e-9 * std::max(1.0, both.value));

    const double alpha = rng.dyadic(-3.0, 3.0);
    const double va = kr_norm(space, scale_element(mu, alpha)).value;
    c.require(within(va, std::abs(alpha) * both.value, 1e-9), "KR norm is homogeneous",
              std::abs(va - std::abs(alpha) * both.value));

    const double vmu = both.value;
    const double vnu = kr_norm(space, nu).value;
    const double vsum = kr_norm(space, add_elements(space, mu, nu)).value;
    c.require(rel_excess(vsum, vmu + vnu, 1e-9) <= 0, "KR norm satisfies the triangle inequality",
              rel_excess(vsum, vmu + vnu, 1e-9));

    if (space.n >= 3) {
        const int x = 1, y = 2;
        const FreeElement mol = make_free_element(space, {{x, 1.0}, {y, -1.0}});
        const double vm = kr_norm(space, mol).value;
        c.require(within(vm, space.dist(x, y), 1e-9), "molecule norm equals the distance",
                  std::abs(vm - space.dist(x, y)));
    }
}

// --------------------------------------------------------------- ph-isometry

void case_ph_isometry(int idx, SplitMix64 rng, Case& c) {
    const NormTag norm = static_cast<NormTag>(idx % 3);
    Vec x = random_vec(rng, 2, -3.0, 3.0);
    Vec y = random_vec(rng, 2, -3.0, 3.0);
    if (idx % 10 == 3) {  // collinear pair: same or opposite ray
        const double s = rng.dyadic(-2.0, 2.0);
        y = x;
        for (double& v : y) v *= s;
    }
    if (dist_of(norm, x, y) < 1e-3) x[0] += 1.0;
    const PHFreeElement mu = make_ph_free_element(2, norm, {{x, 1.0}, {y, -1.0}});
    c.input("element", ph_free_element_to_json(mu));

    const PhNormResult pn = ph_norm(mu, 1e-9);
    const double want = dist_of(norm, x, y);
    c.measure(pn.value);
    c.measure(want);
    c.require(std::abs(pn.value - want) <= 1e-6, "delta-ph embedding is an isometry",
              std::abs(pn.value - want) - 1e-6);
    c.require(pn.max_violation <= 1e-9, "cutting planes certify the constraint slack",
              pn.max_violation - 1e-9);
}

// ------------------------------------------------------------------ duality

void case_duality(int idx, SplitMix64 rng, Case& c) {
    if (idx == 0) {
        // pinned instance: g = (0,-1,0), generator = identity on {0,1,2}
        const PointedSpace space = make_embedded_space(1, NormTag::l2, {{0.0}, {1.0}, {2.0}});
        const ScalarField g = make_scalar_field(space, {0.0, -1.0, 0.0});
        const std::vector<ScalarField> gens = {make_scalar_field(space, {0.0, 1.0, 2.0})};
        c.input("space", space_to_json(space));
        c.input("field", field_to_json(g));
        const QuotientPrimal qp = quotient_dist_primal(space, g, gens);
        const QuotientDual qd = quotient_dist_dual(space, g, gens);
        c.measure(qp.dist);
        c.measure(qd.value);
        c.require(within(qp.dist, 1.0, 1e-9), "pinned quotient distance equals 1",
                  std::abs(qp.dist - 1.0));
        c.require(std::abs(qp.coeffs[0]) <= 1e-9, "pinned optimal coefficient is 0",
                  std::abs(qp.coeffs[0]));
        c.require(within(qd.value, 1.0, 1e-7), "pinned dual value equals 1",
                  std::abs(qd.value - 1.0));
        double a1 = 0.0, a2 = 0.0;
        for (const auto& [p, a] : qd.witness.terms) {
            if (p == 1) a1 = a;
            if (p == 2) a2 = a;
        }
        c.require(std::abs(a1 + 1.0) <= 1e-7 && std::abs(a2 - 0.5) <= 1e-7,
                  "pinned dual witness is -d1 + d2/2",
                  std::max(std::abs(a1 + 1.0), std::abs(a2 - 0.5)));
        return;
    }

    if (idx % 10 == 5) {
        // exact-rational certification on a small exact metric
        const PointedSpace space = random_matrix_space(rng, rng.randint(3, 5));
        const ScalarField g = random_field(rng, space);
        const int k = rng.randint(0, std::min(3, space.n - 2));
        const std::vector<ScalarField> gens = random_generators(rng, space, k);
        c.input("space", space_to_json(space));
        c.input("field", field_to_json(g));
        const Rational p = quotient_dist_primal_exact(space, g, gens);
        const Rational d = quotient_dist_dual_exact(space, g, gens);
        c.measure(rational_to_double(p));
        c.require(p == d, "quotient distance equals its dual (exact)", p == d ? 0.0 : 1.0);
        return;
    }

    if (idx % 10 == 7) {
        // identity generator on a line through the origin: the witness lies
        // in the kernel of the barycenter map
        const int n = rng.randint(3, 6);
        std::vector<Vec> pts = {{0.0}};
        while (static_cast<int>(pts.size()) < n) {
            const double v = rng.dyadic(-3.0, 3.0);
            bool ok = std::abs(v) > 1e-3;
            for (const auto& q : pts) ok = ok && std::abs(q[0] - v) > 1e-3;
            if (ok) pts.push_back({v});
        }
        const PointedSpace space = make_embedded_space(1, NormTag::l2, pts);
        const ScalarField g = random_field(rng, space);
        std::vector<double> idv(space.n);
        for (int i = 0; i < space.n; ++i) idv[i] = space.points[i][0];
        const std::vector<ScalarField> gens = {make_scalar_field(space, idv)};
        c.input("space", space_to_json(space));
        c.input("field", field_to_json(g));
        const QuotientPrimal qp = quotient_dist_primal(space, g, gens);
        const QuotientDual qd = quotient_dist_dual(space, g, gens);
        c.measure(qp.dist);
        c.require(within(qp.dist, qd.value, 1e-7), "quotient distance equals its dual",
                  std::abs(qp.dist - qd.value));
        const Vec b = barycenter(space, qd.witness);
        c.require(std::abs(b[0]) <= 1e-9, "dual witness annihilates the barycenter",
                  std::abs(b[0]) - 1e-9);
        return;
    }

    const PointedSpace space = random_space(rng, 8);
    const ScalarField g = random_field(rng, space);
    const int k = rng.randint(0, std::min(3, space.n - 2));
    const std::vector<ScalarField> gens = random_generators(rng, space, k);
    c.input("space", space_to_json(space));
    c.input("field", field_to_json(g));
    const QuotientPrimal qp = quotient_dist_primal(space, g, gens);
    const QuotientDual qd = quotient_dist_dual(space, g, gens);
    c.measure(qp.dist);
    c.measure(qd.value);
    c.require(within(qp.dist, qd.value, 1e-7), "quotient distance equals its dual",
              std::abs(qp.dist - qd.value));
    if (k == 0) {
        const double lg = lip_const(space, g).value;
        c.require(within(qp.dist, lg, 1e-9), "quotient by {0} is the Lipschitz norm",
                  std::abs(qp.dist - lg));
    }
}

// -------------------------------------------------------------- annihilator

void case_annihilator(int idx, SplitMix64 rng, Case& c) {
    const NormTag norm = random_norm(rng);
    const int dim = rng.randint(1, 3);
    Vec x = random_vec(rng, dim, -3.0, 3.0);
    if (norm_of(norm, x) < 1e-3) x[0] = 1.0;
    double r;
    bool exact_r = true;
    switch (idx % 5) {
        case 0: r = 0.0; break;
        case 1: r = 1.0; break;
        case 2: r = std::ldexp(1.0, rng.randint(-3, 3)); break;
        default:
            r = rng.uniform(0.0, 4.0);
            exact_r = false;
    }
    Vec rx = x;
    for (double& v : rx) v *= r;
    const PHFreeElement mu = make_ph_free_element(dim, norm, {{x, r}, {rx, -1.0}});
    c.input("element", ph_free_element_to_json(mu));

    const PhNormResult pn = ph_norm(mu, 1e-9);
    c.measure(pn.value);
    c.require(std::abs(pn.value) <= 1e-9, "scaling differences annihilate the ph ball",
              std::abs(pn.value) - 1e-9);

    // pairing with an arbitrary ph field vanishes
    std::vector<Vec> dirs = {normalized(x, norm)};
    while (static_cast<int>(dirs.size()) < std::min(dim + 1, 3)) {
        Vec u = random_unit(rng, dim, norm);
        bool ok = true;
        for (const Vec& w : dirs)
            if (dist_of(norm, u, w) < 1e-2) ok = false;
        if (ok) dirs.push_back(std::move(u));
    }
    const RaySystem rays = make_ray_system(dim, norm, dirs);
    const PHField f = random_ph_field(rng, rays);
    const double pair = ph_pairing(rays, f, mu);
    const double scale = (1.0 + r) * norm_of(norm, x) * (1.0 + cone_lip(rays, f));
    if (exact_r)
        c.require(pair == 0.0, "pairing with scaling differences is exactly zero",
                  std::abs(pair));
    else
        c.require(std::abs(pair) <= 1e-12 * scale, "pairing with scaling differences vanishes",
                  std::abs(pair) - 1e-12 * scale);
}

// ---------------------------------------------------------------- theta-phi

void case_theta_phi(int idx, SplitMix64 rng, Case& c) {
    const NormTag norm = random_norm(rng);
    const int dim = rng.randint(2, 3);
    const RaySystem rays = random_rays(rng, dim, rng.randint(1, 6), norm);
    const PointedSpace sphere = sphere_space(rays);
    const FreeElement mu = random_element(rng, sphere);
    c.input("space", space_to_json(sphere));
    c.input("element", free_element_to_json(mu));

    const PHFreeElement th = theta(sphere, mu);
    const double pn = ph_norm(th, 1e-9).value;
    const double kr = kr_norm(sphere, mu).value;
    c.measure(pn);
    c.measure(kr);
    c.require(pn <= kr + 1e-6, "theta is a contraction", pn - kr - 1e-6);
    c.require(kr <= 3.0 * pn + 1e-6, "phi is bounded by the constant 3", kr - 3.0 * pn - 1e-6);

    const PhiResult back = phi(th);
    bool same = back.element.terms.size() == mu.terms.size();
    if (same) {
        for (const auto& [idx0, a0] : mu.terms) {
            bool found = false;
            for (const auto& [idx1, a1] : back.element.terms)
                if (dist_of(norm, sphere.points[idx0], back.sphere.points[idx1]) <= 1e-9 &&
                    a0 == a1)
                    found = true;
            same = same && found;
        }
    }
    c.require(same, "phi inverts theta on finitely supported data", same ? 0.0 : 1.0);
}

// ------------------------------------------------------------------ q-bound

void case_q_bound(int idx, SplitMix64 rng, Case& c) {
    const NormTag norm = random_norm(rng);
    const int dim = rng.randint(2, 3);
    const RaySystem rays = random_rays(rng, dim, rng.randint(2, 6), norm);
    const PointedSpace sphere = sphere_space(rays);

    if (idx == 0) {
        const FreeElement mu = make_free_element(sphere, {{1, 1.0}, {2, 1.0}});
        c.input("space", space_to_json(sphere));
        c.input("element", free_element_to_json(mu));
        const double q = q_functional(sphere, mu);
        const double kr = kr_norm(sphere, mu).value;
        c.measure(q);
        c.measure(kr);
        c.require(q == 2.0, "Q(d_a + d_b) = 2", std::abs(q - 2.0));
        c.require(within(kr, 2.0, 1e-9), "KR norm of d_a + d_b on the sphere is 2",
                  std::abs(kr - 2.0));
        return;
    }

    const FreeElement mu = random_element(rng, sphere);
    c.input("space", space_to_json(sphere));
    c.input("element", free_element_to_json(mu));
    const double q = q_functional(sphere, mu);
    const double kr = kr_norm(sphere, mu).value;
    c.measure(q);
    c.measure(kr);
    c.require(std::abs(q) <= kr + 1e-9, "mass functional is dominated by the KR norm",
              std::abs(q) - kr - 1e-9);

    // the witness field min(1, ||x||) is 1 off the basepoint and certifies Q
    std::vector<double> ones(sphere.n, 1.0);
    ones[0] = 0.0;
    const ScalarField wit = make_scalar_field(sphere, ones);
    c.require(lip_const(sphere, wit).value <= 1.0 + 1e-12, "witness field is a contraction",
              lip_const(sphere, wit).value - 1.0);
    c.require(eval_pairing(sphere, wit, mu) == q, "witness field evaluates to Q",
              std::abs(eval_pairing(sphere, wit, mu) - q));
}

using CaseFn = void (*)(int, SplitMix64, Case&);

const std::map<std::string, std::pair<CaseFn, const char*>>& suites() {
    static const std::map<std::string, std::pair<CaseFn, const char*>> m = {
        {"lipschitz", {case_lipschitz, "Lipschitz norm axioms"}},
        {"mcshane", {case_mcshane, "extremal extensions"}},
        {"cone", {case_cone, "cone Lipschitz geometry"}},
        {"algebra", {case_algebra, "submultiplicative product"}},
        {"freespace", {case_freespace, "KR norm consistency"}},
        {"ph-isometry", {case_ph_isometry, "delta-ph embedding is an isometry"}},
        {"duality", {case_duality, "quotient distance equals its dual"}},
        {"annihilator", {case_annihilator, "scaling differences annihilate"}},
        {"theta-phi", {case_theta_phi, "theta/phi constants"}},
        {"q-bound", {case_q_bound, "mass functional bound"}},
    };
    return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, fn] : suites()) v.push_back(k);
        return v;
    }();
    return names;
}

RunReport run_suite(const std::string& name, int cases, std::uint64_t seed,
                    const std::string& dump_dir) {
    const auto it = suites().find(name);
    if (it == suites().end()) throw ValidationError("unknown suite '" + name + "'");
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.suite = name;
    rep.seed = seed;
    rep.cases = cases;
    const std::uint64_t tag = fnv1a64(name.data(), name.size());
    for (int i = 0; i < cases; ++i) {
        Case c(i, name, it->second.second);
        try {
            it->second.first(i, case_rng(seed, tag, static_cast<std::uint64_t>(i)), c);
        } catch (const Error& e) {
            c.fail(std::string("unexpected error: ") + e.what());
        }
        rep.records.push_back(c.finish(name, dump_dir));
    }
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        if (ch == '\n') {
            out += "\\n";
            continue;
        }
        out += ch;
    }
    return out;
}

}  // namespace

std::string report_to_json(const RunReport& r) {
    std::string s = "{\"suite\":\"" + json_escape(r.suite) +
                    "\",\"seed\":" + std::to_string(r.seed) +
                    ",\"cases\":" + std::to_string(r.cases) + ",\"records\":[";
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        const CaseRecord& c = r.records[i];
        if (i) s += ",";
        s += "{\"case\":" + std::to_string(c.case_index) + ",\"operation\":\"" +
             json_escape(c.operation) + "\",\"inputs\":\"" + c.inputs_digest +
             "\",\"relation\":\"" + json_escape(c.relation) +
             "\",\"measured\":" + json_doubles(c.measured) +
             ",\"pass\":" + (c.pass ? "true" : "false") +
             ",\"residual\":" + format_double(c.residual) + ",\"counterexample\":\"" +
             json_escape(c.counterexample) + "\"}";
    }
    return s + "]}\n";
}

std::string report_to_csv(const RunReport& r) {
    std::string s = "case,suite,operation,inputs,relation,pass,residual\n";
    for (const CaseRecord& c : r.records) {
        s += std::to_string(c.case_index) + "," + r.suite + "," + c.operation + "," +
             c.inputs_digest + ",\"" + c.relation + "\"," + (c.pass ? "1" : "0") + "," +
             format_double(c.residual) + "\n";
    }
    return s;
}

}  // namespace conelip
