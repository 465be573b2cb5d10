#include "conelip/freespace.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace conelip {

namespace {

constexpr int kExactVarLimit = 50;  // above this, the exact flag falls back to doubles
constexpr int kCutRoundCap = 500;

void check_in_range(const PointedSpace& space, int idx) {
    if (idx < 0 || idx >= space.n)
        throw ValidationError("point index " + std::to_string(idx) + " out of range");
}

double solve_or_throw(const LPProblem& p, bool exact, std::vector<double>* primal,
                      double* lp_gap) {
    if (exact && p.num_vars() <= kExactVarLimit) {
        const ExactLPSolution s = solve_lp_exact(p);
        if (s.status != LPStatus::optimal)
            throw NumericalFailure("internal LP came back non-optimal");
        if (primal) {
            primal->resize(s.primal.size());
            for (std::size_t i = 0; i < s.primal.size(); ++i)
                (*primal)[i] = rational_to_double(s.primal[i]);
        }
        if (lp_gap) *lp_gap = 0.0;
        return rational_to_double(s.objective);
    }
    const LPSolution s = solve_lp(p);
    if (s.status != LPStatus::optimal)
        throw NumericalFailure("internal LP came back non-optimal");
    if (primal) *primal = s.primal;
    if (lp_gap) *lp_gap = s.gap;
    return s.objective;
}

Rational solve_exact_or_throw(const LPProblem& p) {
    const ExactLPSolution s = solve_lp_exact(p);
    if (s.status != LPStatus::optimal)
        throw NumericalFailure("internal LP came back non-optimal");
    return s.objective;
}

// max mu(f) over the unit Lipschitz ball vanishing at the basepoint;
// variables f_1..f_{n-1}, pair constraints as rows, basepoint pairs as bounds
LPProblem build_kr_lp(const PointedSpace& space, const FreeElement& mu) {
    LPProblem p;
    p.sense = Sense::maximize;
    const int n = space.n;
    for (int i = 1; i < n; ++i) {
        const double d0 = space.dist(0, i);
        p.add_variable(0.0, -d0, d0);
    }
    for (const auto& [idx, a] : mu.terms) p.objective[idx - 1] = a;
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = space.dist(i, j);
            std::vector<double> row(n - 1, 0.0);
            row[i - 1] = 1.0;
            row[j - 1] = -1.0;
            p.add_row(row, Rel::le, d);
            for (double& c : row) c = -c;
            p.add_row(std::move(row), Rel::le, d);
        }
    return p;
}

void check_generators(const PointedSpace& space, const ScalarField& g,
                      const std::vector<ScalarField>& gens) {
    check_aligned(space, g);
    for (const auto& f : gens) check_aligned(space, f);
    // rank check: generators must be independent as value vectors
    const int k = static_cast<int>(gens.size());
    if (k == 0) return;
    std::vector<std::vector<double>> m(k, std::vector<double>(space.n));
    for (int a = 0; a < k; ++a)
        for (int i = 0; i < space.n; ++i) m[a][i] = gens[a].values[i];
    double scale = 0.0;
    for (const auto& row : m)
        for (double v : row) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw DependentGenerators("zero generator supplied");
    int row = 0;
    for (int col = 0; col < space.n && row < k; ++col) {
        int piv = row;
        for (int r = row + 1; r < k; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) <= 1e-9 * scale) continue;
        std::swap(m[piv], m[row]);
        for (int r = 0; r < k; ++r) {
            if (r == row) continue;
            const double f = m[r][col] / m[row][col];
            for (int c = col; c < space.n; ++c) m[r][c] -= f * m[row][c];
        }
        ++row;
    }
    if (row < k) throw DependentGenerators("generators are linearly dependent");
}

LPProblem build_quotient_primal_lp(const PointedSpace& space, const ScalarField& g,
                                   const std::vector<ScalarField>& gens) {
    const int k = static_cast<int>(gens.size());
    LPProblem p;
    p.sense = Sense::minimize;
    for (int a = 0; a < k; ++a) p.add_variable(0.0);
    const int L = p.add_variable(1.0, 0.0, kInf);
    for (int i = 0; i < space.n; ++i)
        for (int j = i + 1; j < space.n; ++j) {
            const double d = space.dist(i, j);
            const double dg = g.values[i] - g.values[j];
            std::vector<double> row(k + 1, 0.0);
            for (int a = 0; a < k; ++a) row[a] = -(gens[a].values[i] - gens[a].values[j]);
            row[L] = -d;
            p.add_row(row, Rel::le, -dg);
            for (int a = 0; a < k; ++a) row[a] = -row[a];
            p.add_row(std::move(row), Rel::le, dg);
        }
    return p;
}

// variables: a_1..a_{n-1} free, then flow y_pq >= 0 over ordered pairs;
// rows: generator annihilation (eq), node balance (eq), transport cost <= 1
LPProblem build_quotient_dual_lp(const PointedSpace& space, const ScalarField& g,
                                 const std::vector<ScalarField>& gens) {
    const int n = space.n;
    const int na = n - 1;
    std::vector<std::pair<int, int>> arcs;
    for (int pp = 0; pp < n; ++pp)
        for (int qq = 0; qq < n; ++qq)
            if (pp != qq) arcs.emplace_back(pp, qq);
    const int ny = static_cast<int>(arcs.size());

    LPProblem p;
    p.sense = Sense::maximize;
    for (int i = 1; i < n; ++i) p.add_variable(g.values[i]);
    for (int y = 0; y < ny; ++y) p.add_variable(0.0, 0.0, kInf);
    const int nv = na + ny;

    for (const auto& f : gens) {
        std::vector<double> row(nv, 0.0);
        for (int i = 1; i < n; ++i) row[i - 1] = f.values[i];
        p.add_row(std::move(row), Rel::eq, 0.0);
    }
    for (int i = 1; i < n; ++i) {
        std::vector<double> row(nv, 0.0);
        row[i - 1] = -1.0;
        for (int y = 0; y < ny; ++y) {
            if (arcs[y].second == i) row[na + y] += 1.0;
            if (arcs[y].first == i) row[na + y] -= 1.0;
        }
        p.add_row(std::move(row), Rel::eq, 0.0);
    }
    {
        std::vector<double> row(nv, 0.0);
        for (int y = 0; y < ny; ++y) row[na + y] = space.dist(arcs[y].first, arcs[y].second);
        p.add_row(std::move(row), Rel::le, 1.0);
    }
    return p;
}

void check_cone_sample(const PointedSpace& space) {
    if (!space.embedded())
        throw NotScalingClosed("scaling relations need an embedded space");
    if (norm_of(space.norm, space.points[0]) > 1e-12)
        throw NotScalingClosed("the basepoint of a cone sample must be the origin");
}

LPProblem build_ph_quotient_primal_lp(const PointedSpace& space, const ScalarField& g,
                                      const std::vector<ScalingPair>& pairs) {
    const int n = space.n;
    const int nh = n - 1;
    LPProblem p;
    p.sense = Sense::minimize;
    for (int i = 0; i < nh; ++i) p.add_variable(0.0);
    const int L = p.add_variable(1.0, 0.0, kInf);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = space.dist(i, j);
            const double dg = g.values[i] - g.values[j];
            std::vector<double> row(nh + 1, 0.0);
            if (i > 0) row[i - 1] = -1.0;
            row[j - 1] = 1.0;
            row[L] = -d;
            p.add_row(row, Rel::le, -dg);
            if (i > 0) row[i - 1] = 1.0;
            row[j - 1] = -1.0;
            p.add_row(std::move(row), Rel::le, dg);
        }
    for (const auto& sp : pairs) {
        std::vector<double> row(nh + 1, 0.0);
        row[sp.j - 1] = 1.0;
        row[sp.i - 1] -= sp.r;
        p.add_row(std::move(row), Rel::eq, 0.0);
    }
    return p;
}

LPProblem build_ph_quotient_dual_lp(const PointedSpace& space, const ScalarField& g,
                                    const std::vector<ScalingPair>& pairs) {
    const int n = space.n;
    const int np = static_cast<int>(pairs.size());
    std::vector<std::pair<int, int>> arcs;
    for (int pp = 0; pp < n; ++pp)
        for (int qq = 0; qq < n; ++qq)
            if (pp != qq) arcs.emplace_back(pp, qq);
    const int ny = static_cast<int>(arcs.size());

    LPProblem p;
    p.sense = Sense::maximize;
    for (int c = 0; c < np; ++c)
        p.add_variable(pairs[c].r * g.values[pairs[c].i] - g.values[pairs[c].j]);
    for (int y = 0; y < ny; ++y) p.add_variable(0.0, 0.0, kInf);
    const int nv = np + ny;

    for (int i = 1; i < n; ++i) {
        std::vector<double> row(nv, 0.0);
        for (int c = 0; c < np; ++c) {
            if (pairs[c].i == i) row[c] -= pairs[c].r;
            if (pairs[c].j == i) row[c] += 1.0;
        }
        for (int y = 0; y < ny; ++y) {
            if (arcs[y].second == i) row[np + y] += 1.0;
            if (arcs[y].first == i) row[np + y] -= 1.0;
        }
        p.add_row(std::move(row), Rel::eq, 0.0);
    }
    {
        std::vector<double> row(nv, 0.0);
        for (int y = 0; y < ny; ++y) row[np + y] = space.dist(arcs[y].first, arcs[y].second);
        p.add_row(std::move(row), Rel::le, 1.0);
    }
    return p;
}

void check_sphere_point(const PointedSpace& space, int idx) {
    if (std::abs(norm_of(space.norm, space.points[idx]) - 1.0) > 1e-9)
        throw NonUnitSupport("support point " + std::to_string(idx) + " is not a unit vector");
}

}  // namespace

FreeElement make_free_element(const PointedSpace& space,
                              const std::vector<std::pair<int, double>>& raw) {
    std::map<int, double> acc;
    for (const auto& [idx, a] : raw) {
        check_in_range(space, idx);
        if (idx == 0) continue;  // delta at the basepoint is the zero functional
        acc[idx] += a;
    }
    FreeElement mu;
    for (const auto& [idx, a] : acc)
        if (a != 0.0) mu.terms.emplace_back(idx, a);
    return mu;
}

FreeElement scale_element(const FreeElement& mu, double alpha) {
    FreeElement out;
    if (alpha == 0.0) return out;
    out.terms = mu.terms;
    for (auto& [idx, a] : out.terms) a *= alpha;
    return out;
}

FreeElement add_elements(const PointedSpace& space, const FreeElement& a, const FreeElement& b) {
    std::vector<std::pair<int, double>> raw = a.terms;
    raw.insert(raw.end(), b.terms.begin(), b.terms.end());
    return make_free_element(space, raw);
}

double eval_pairing(const PointedSpace& space, const ScalarField& f, const FreeElement& mu) {
    check_aligned(space, f);
    double acc = 0.0;
    for (const auto& [idx, a] : mu.terms) acc += a * f.values[idx];
    return acc;
}

Vec barycenter(const PointedSpace& space, const FreeElement& mu) {
    if (!space.embedded())
        throw MatrixSpaceUnsupported("barycenter needs coordinates, not just distances");
    Vec out(space.dim, 0.0);
    for (const auto& [idx, a] : mu.terms)
        for (int c = 0; c < space.dim; ++c) out[c] += a * space.points[idx][c];
    return out;
}

KrResult kr_norm(const PointedSpace& space, const FreeElement& mu, KrMethod method, bool exact) {
    for (const auto& [idx, a] : mu.terms) check_in_range(space, idx);
    KrResult out;
    if (method == KrMethod::lp || method == KrMethod::both) {
        const LPProblem p = build_kr_lp(space, mu);
        std::vector<double> primal;
        out.value = solve_or_throw(p, exact, &primal, &out.lp_gap);
        out.witness_field.assign(space.n, 0.0);
        for (int i = 1; i < space.n; ++i) out.witness_field[i] = primal[i - 1];
    }
    if (method == KrMethod::flow || method == KrMethod::both) {
        FlowNetwork net;
        net.node_count = space.n;
        net.divergence.assign(space.n, 0.0);
        double total = 0.0;
        for (const auto& [idx, a] : mu.terms) {
            net.divergence[idx] += a;
            total += a;
        }
        net.divergence[0] -= total;
        for (int i = 0; i < space.n; ++i)
            for (int j = 0; j < space.n; ++j)
                if (i != j) net.add_arc(i, j, space.dist(i, j));
        const FlowResult fr = min_cost_flow(net);
        out.arc_flow = fr.flow;
        if (method == KrMethod::flow) out.value = fr.cost;
        if (method == KrMethod::both) {
            out.route_gap = std::abs(out.value - fr.cost);
            if (out.route_gap > 1e-9 * std::max(1.0, std::abs(out.value)))
                throw NumericalFailure("LP and flow routes disagree beyond 1e-9");
        }
    }
    return out;
}

QuotientPrimal quotient_dist_primal(const PointedSpace& space, const ScalarField& g,
                                    const std::vector<ScalarField>& gens, bool exact) {
    check_generators(space, g, gens);
    const LPProblem p = build_quotient_primal_lp(space, g, gens);
    QuotientPrimal out;
    std::vector<double> primal;
    out.dist = solve_or_throw(p, exact, &primal, nullptr);
    out.coeffs.assign(primal.begin(), primal.begin() + gens.size());
    return out;
}

QuotientDual quotient_dist_dual(const PointedSpace& space, const ScalarField& g,
                                const std::vector<ScalarField>& gens, bool exact) {
    check_generators(space, g, gens);
    const LPProblem p = build_quotient_dual_lp(space, g, gens);
    QuotientDual out;
    std::vector<double> primal;
    out.value = solve_or_throw(p, exact, &primal, nullptr);
    double scale = 1.0;
    for (int i = 1; i < space.n; ++i) scale = std::max(scale, std::abs(primal[i - 1]));
    std::vector<std::pair<int, double>> raw;
    for (int i = 1; i < space.n; ++i)
        if (std::abs(primal[i - 1]) > 1e-12 * scale) raw.emplace_back(i, primal[i - 1]);
    out.witness = make_free_element(space, raw);
    return out;
}

Rational quotient_dist_primal_exact(const PointedSpace& space, const ScalarField& g,
                                    const std::vector<ScalarField>& gens) {
    check_generators(space, g, gens);
    return solve_exact_or_throw(build_quotient_primal_lp(space, g, gens));
}

Rational quotient_dist_dual_exact(const PointedSpace& space, const ScalarField& g,
                                  const std::vector<ScalarField>& gens) {
    check_generators(space, g, gens);
    return solve_exact_or_throw(build_quotient_dual_lp(space, g, gens));
}

PhNormResult ph_norm(const PHFreeElement& mu, double tol) {
    PhNormResult out;
    out.support = reduce(mu);
    if (out.support.empty()) return out;
    const int ns = static_cast<int>(out.support.dirs.size());
    const RaySystem rays = make_ray_system(mu.dim, mu.norm, out.support.dirs);

    LPProblem p;
    p.sense = Sense::maximize;
    for (int i = 0; i < ns; ++i) p.add_variable(out.support.weights[i], -1.0, 1.0);

    struct Cut {
        int i, j;
        double t;
    };
    std::vector<Cut> cuts;
    for (int i = 0; i < ns; ++i)
        for (int j = i + 1; j < ns; ++j) cuts.push_back({i, j, 0.5});

    auto add_cut_rows = [&](LPProblem& lp, const Cut& c) {
        const double den = segment_norm(rays.dirs[c.i], rays.dirs[c.j], c.t, rays.norm);
        std::vector<double> row(ns, 0.0);
        row[c.i] = 1.0 - c.t;
        row[c.j] = -c.t;
        lp.add_row(row, Rel::le, den);
        for (double& v : row) v = -v;
        lp.add_row(std::move(row), Rel::le, den);
    };

    for (int round = 1; round <= kCutRoundCap; ++round) {
        LPProblem lp = p;
        for (const Cut& c : cuts) add_cut_rows(lp, c);
        const LPSolution sol = solve_lp(lp);
        if (sol.status != LPStatus::optimal)
            throw NumericalFailure("cutting-plane master LP came back non-optimal");

        double maxviol = 0.0;
        std::vector<Cut> fresh;
        for (int i = 0; i < ns; ++i)
            for (int j = i + 1; j < ns; ++j) {
                const PairSup v = pair_violation(rays.dirs[i], rays.dirs[j], sol.primal[i],
                                                 sol.primal[j], rays.norm);
                if (v.value > maxviol) maxviol = v.value;
                if (v.value > tol) fresh.push_back({i, j, v.t});
            }
        out.rounds = round;
        if (maxviol <= tol) {
            out.value = sol.objective;
            out.max_violation = maxviol;
            out.witness = sol.primal;
            return out;
        }
        cuts.insert(cuts.end(), fresh.begin(), fresh.end());
    }
    throw NoConvergence("cutting planes did not reach the violation tolerance in " +
                        std::to_string(kCutRoundCap) + " rounds");
}

PHFreeElement theta(const PointedSpace& sphere, const FreeElement& mu) {
    if (!sphere.embedded())
        throw MatrixSpaceUnsupported("theta needs coordinates, not just distances");
    std::vector<PHFreeElement::Term> terms;
    for (const auto& [idx, a] : mu.terms) {
        check_in_range(sphere, idx);
        check_sphere_point(sphere, idx);
        terms.push_back({sphere.points[idx], a});
    }
    return make_ph_free_element(sphere.dim, sphere.norm, std::move(terms));
}

PhiResult phi(const PHFreeElement& mu) {
    // group support points that agree within the direction tolerance,
    // keeping exact coefficient sums
    std::vector<Vec> pts;
    std::vector<double> coeffs;
    for (const auto& t : mu.terms) {
        if (t.a == 0.0) continue;
        if (std::abs(norm_of(mu.norm, t.x) - 1.0) > 1e-9)
            throw NonUnitSupport("ph element support must lie on the unit sphere");
        int hit = -1;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (kernels::table().diff_linf(pts[i].data(), t.x.data(), t.x.size()) <= 1e-9) {
                hit = static_cast<int>(i);
                break;
            }
        if (hit < 0) {
            pts.push_back(t.x);
            coeffs.push_back(t.a);
        } else {
            coeffs[hit] += t.a;
        }
    }
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });

    std::vector<Vec> points;
    points.emplace_back(mu.dim, 0.0);
    std::vector<std::pair<int, double>> raw;
    int next = 1;
    for (std::size_t i : order) {
        points.push_back(pts[i]);
        raw.emplace_back(next++, coeffs[i]);
    }
    PhiResult out{make_embedded_space(mu.dim, mu.norm, std::move(points)), {}};
    out.element = make_free_element(out.sphere, raw);
    return out;
}

double q_functional(const PointedSpace& sphere, const FreeElement& mu) {
    if (!sphere.embedded())
        throw MatrixSpaceUnsupported("the Q functional is defined on sphere samples");
    if (norm_of(sphere.norm, sphere.points[0]) > 1e-12)
        throw ValidationError("sphere space must have the origin as basepoint");
    for (int i = 1; i < sphere.n; ++i) check_sphere_point(sphere, i);
    double q = 0.0;
    for (const auto& [idx, a] : mu.terms) q += a;
    return q;
}

std::vector<ScalingPair> scaling_pairs(
    const PointedSpace& space,
    const std::optional<std::vector<std::pair<int, int>>>& declared) {
    check_cone_sample(space);
    std::vector<ScalingPair> out;
    auto ratio_of = [&](int i, int j) -> double {
        // r with points[j] = r * points[i], or -1
        const double ri = norm_of(space.norm, space.points[i]);
        const double rj = norm_of(space.norm, space.points[j]);
        const double r = rj / ri;
        Vec scaled(space.points[i]);
        for (double& c : scaled) c *= r;
        if (dist_of(space.norm, scaled, space.points[j]) > 1e-9 * std::max(1.0, rj)) return -1.0;
        return r;
    };
    if (declared) {
        for (const auto& [i, j] : *declared) {
            if (i <= 0 || j <= 0 || i >= space.n || j >= space.n || i == j)
                throw NotScalingClosed("declared scaling pair (" + std::to_string(i) + "," +
                                       std::to_string(j) + ") is not valid");
            const double r = ratio_of(i, j);
            if (r < 0.0)
                throw NotScalingClosed("points " + std::to_string(j) + " and " +
                                       std::to_string(i) + " are not positive multiples");
            out.push_back({i, j, r});
        }
        return out;
    }
    for (int i = 1; i < space.n; ++i)
        for (int j = i + 1; j < space.n; ++j) {
            const double r = ratio_of(i, j);
            if (r > 0.0) out.push_back({i, j, r});
        }
    return out;
}

PhQuotient ph_quotient_check(const PointedSpace& space, const ScalarField& g,
                             const std::optional<std::vector<std::pair<int, int>>>& declared,
                             bool exact) {
    check_aligned(space, g);
    PhQuotient out;
    out.pairs = scaling_pairs(space, declared);
    out.primal = solve_or_throw(build_ph_quotient_primal_lp(space, g, out.pairs), exact, nullptr,
                                nullptr);
    out.dual = solve_or_throw(build_ph_quotient_dual_lp(space, g, out.pairs), exact, nullptr,
                              nullptr);
    return out;
}

std::pair<Rational, Rational> ph_quotient_check_exact(
    const PointedSpace& space, const ScalarField& g,
    const std::optional<std::vector<std::pair<int, int>>>& declared) {
    check_aligned(space, g);
    const std::vector<ScalingPair> pairs = scaling_pairs(space, declared);
    return {solve_exact_or_throw(build_ph_quotient_primal_lp(space, g, pairs)),
            solve_exact_or_throw(build_ph_quotient_dual_lp(space, g, pairs))};
}

}  // namespace conelip
