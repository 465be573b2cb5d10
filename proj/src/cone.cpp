#include "conelip/cone.hpp"

#include <algorithm>
#include <cmath>

#include "conelip/kernels.hpp"

namespace conelip {

namespace {

constexpr int kGridPoints = 1025;  // dyadic grid on [0,1], endpoints included
constexpr double kRefineWidth = 1e-12;
constexpr double kDirectionTol = 1e-9;

struct BestPoint {
    double x = 0.0;
    double value = -std::numeric_limits<double>::infinity();
};

template <class F>
BestPoint ternary_max(F&& f, double lo, double hi) {
    BestPoint best;
    auto consider = [&](double x, double v) {
        if (v > best.value) best = {x, v};
    };
    consider(lo, f(lo));
    consider(hi, f(hi));
    while (hi - lo > kRefineWidth) {
        const double third = (hi - lo) / 3.0;
        const double m1 = lo + third;
        const double m2 = hi - third;
        const double f1 = f(m1), f2 = f(m2);
        consider(m1, f1);
        consider(m2, f2);
        if (f1 < f2)
            lo = m1;
        else
            hi = m2;
    }
    return best;
}

// indices of local maxima of out[], best first (ties: lower index first)
std::vector<int> top_local_maxima(const double* out, int m, int keep) {
    std::vector<int> cells;
    for (int k = 0; k < m; ++k) {
        const double left = (k > 0) ? out[k - 1] : -std::numeric_limits<double>::infinity();
        const double right = (k + 1 < m) ? out[k + 1] : -std::numeric_limits<double>::infinity();
        if (out[k] >= left && out[k] >= right) cells.push_back(k);
    }
    std::sort(cells.begin(), cells.end(), [&](int a, int b) {
        if (out[a] != out[b]) return out[a] > out[b];
        return a < b;
    });
    if (static_cast<int>(cells.size()) > keep) cells.resize(keep);
    return cells;
}

enum class PairKind { ratio, gap };

double eval_pair(PairKind kind, const Vec& u, const Vec& v, double a, double b, NormTag norm,
                 double t) {
    double out;
    const auto& kt = kernels::table();
    const int ni = norm_index(norm);
    if (kind == PairKind::ratio)
        kt.pair_ratio_grid[ni](u.data(), v.data(), u.size(), a, b, t, 0.0, &out, 1);
    else
        kt.pair_gap_grid[ni](u.data(), v.data(), u.size(), a, b, t, 0.0, &out, 1);
    return out;
}

// shared by pair_sup (ratio) and the cutting-plane separation (gap)
BestPoint pair_scan(PairKind kind, const Vec& u, const Vec& v, double a, double b, NormTag norm) {
    const auto& kt = kernels::table();
    const int ni = norm_index(norm);
    double out[kGridPoints];
    const double dt = 1.0 / (kGridPoints - 1);
    if (kind == PairKind::ratio)
        kt.pair_ratio_grid[ni](u.data(), v.data(), u.size(), a, b, 0.0, dt, out, kGridPoints);
    else
        kt.pair_gap_grid[ni](u.data(), v.data(), u.size(), a, b, 0.0, dt, out, kGridPoints);

    BestPoint best;
    for (int k = 0; k < kGridPoints; ++k)
        if (out[k] > best.value) best = {k * dt, out[k]};

    auto f = [&](double t) { return eval_pair(kind, u, v, a, b, norm, t); };
    for (int k : top_local_maxima(out, kGridPoints, 3)) {
        const double lo = std::max(0.0, (k - 1) * dt);
        const double hi = std::min(1.0, (k + 1) * dt);
        const BestPoint r = ternary_max(f, lo, hi);
        if (r.value > best.value) best = r;
    }
    return best;
}

void check_unit(const Vec& x, NormTag norm, const char* what) {
    if (std::abs(norm_of(norm, x) - 1.0) > kDirectionTol)
        throw ValidationError(std::string(what) + " must be a unit vector");
}

int match_direction(const RaySystem& rays, const Vec& unit) {
    for (int i = 0; i < rays.count(); ++i)
        if (dist_of(rays.norm, rays.dirs[i], unit) <= kDirectionTol) return i;
    return -1;
}

void check_field(const RaySystem& rays, const PHField& f) {
    if (static_cast<int>(f.values.size()) != rays.count())
        throw RaySystemMismatch("field has " + std::to_string(f.values.size()) +
                                " values, system has " + std::to_string(rays.count()) +
                                " directions");
}

}  // namespace

Vec normalized(const Vec& x, NormTag norm) {
    const double r = norm_of(norm, x);
    Vec u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) u[i] = x[i] / r;
    return u;
}

RaySystem make_ray_system(int dim, NormTag norm, std::vector<Vec> directions) {
    if (dim <= 0) throw BadDimension("ray system needs a positive dimension");
    if (directions.empty()) throw ValidationError("ray system needs at least one direction");
    for (std::size_t i = 0; i < directions.size(); ++i) {
        if (static_cast<int>(directions[i].size()) != dim)
            throw BadDimension("direction " + std::to_string(i) + " has wrong dimension");
        if (std::abs(norm_of(norm, directions[i]) - 1.0) > 1e-12)
            throw ValidationError("direction " + std::to_string(i) + " is not a unit vector");
    }
    for (std::size_t i = 0; i < directions.size(); ++i)
        for (std::size_t j = i + 1; j < directions.size(); ++j)
            if (dist_of(norm, directions[i], directions[j]) <= 1e-12)
                throw DuplicatePoint(static_cast<int>(i), static_cast<int>(j));
    return RaySystem{dim, norm, std::move(directions)};
}

PHField make_ph_field(const RaySystem& rays, std::vector<double> values) {
    PHField f{std::move(values)};
    check_field(rays, f);
    return f;
}

bool same_rays(const RaySystem& a, const RaySystem& b) {
    if (a.dim != b.dim || a.norm != b.norm || a.count() != b.count()) return false;
    for (int i = 0; i < a.count(); ++i)
        if (kernels::table().diff_linf(a.dirs[i].data(), b.dirs[i].data(), a.dirs[i].size()) >
            1e-12)
            return false;
    return true;
}

double ph_eval(const RaySystem& rays, const PHField& f, const Vec& x) {
    check_field(rays, f);
    if (static_cast<int>(x.size()) != rays.dim) throw BadDimension("point has wrong dimension");
    const double r = norm_of(rays.norm, x);
    if (r == 0.0) return 0.0;
    const int i = match_direction(rays, normalized(x, rays.norm));
    if (i < 0) throw DirectionNotRepresented("point does not lie on a represented ray");
    return r * f.values[i];
}

PairSup pair_sup(const Vec& u, const Vec& v, double a, double b, NormTag norm) {
    if (u.size() != v.size()) throw BadDimension("direction dimensions differ");
    check_unit(u, norm, "first direction");
    check_unit(v, norm, "second direction");
    if (kernels::table().diff_linf(u.data(), v.data(), u.size()) <= 1e-12)
        throw DegeneratePair("directions coincide");
    const BestPoint best = pair_scan(PairKind::ratio, u, v, a, b, norm);
    return PairSup{best.x, best.value};
}

PairSup pair_violation(const Vec& u, const Vec& v, double a, double b, NormTag norm) {
    const BestPoint best = pair_scan(PairKind::gap, u, v, a, b, norm);
    return PairSup{best.x, best.value};
}

double segment_norm(const Vec& u, const Vec& v, double t, NormTag norm) {
    Vec e(u.size());
    const double s = 1.0 - t;
    for (std::size_t i = 0; i < u.size(); ++i) e[i] = s * u[i] - t * v[i];
    return norm_of(norm, e);
}

double cone_lip(const RaySystem& rays, const PHField& f) {
    check_field(rays, f);
    double best = 0.0;
    for (double v : f.values) best = std::max(best, std::abs(v));
    for (int i = 0; i < rays.count(); ++i)
        for (int j = i + 1; j < rays.count(); ++j) {
            const BestPoint p = pair_scan(PairKind::ratio, rays.dirs[i], rays.dirs[j], f.values[i],
                                          f.values[j], rays.norm);
            best = std::max(best, p.value);
        }
    return best;
}

PointedSpace sphere_space(const RaySystem& rays) {
    std::vector<Vec> points;
    points.reserve(rays.dirs.size() + 1);
    points.emplace_back(rays.dim, 0.0);
    for (const Vec& u : rays.dirs) points.push_back(u);
    return make_embedded_space(rays.dim, rays.norm, std::move(points));
}

ScalarField lambda_restrict(const RaySystem& rays, const PHField& f) {
    check_field(rays, f);
    std::vector<double> vals;
    vals.reserve(f.values.size() + 1);
    vals.push_back(0.0);
    vals.insert(vals.end(), f.values.begin(), f.values.end());
    return ScalarField{std::move(vals)};
}

PHField lambda_inverse(const RaySystem& rays, const ScalarField& sphere_field) {
    if (static_cast<int>(sphere_field.values.size()) != rays.count() + 1)
        throw RaySystemMismatch("sphere field size does not match the ray system");
    if (sphere_field.values[0] != 0.0)
        throw NonzeroAtBasepoint("sphere field must vanish at the basepoint");
    return PHField{{sphere_field.values.begin() + 1, sphere_field.values.end()}};
}

PHField odot(const RaySystem& rays, const PHField& f, const PHField& g, bool raw) {
    check_field(rays, f);
    if (f.values.size() != g.values.size())
        throw RaySystemMismatch("odot factors live on different ray systems");
    std::vector<double> vals(f.values.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        vals[i] = f.values[i] * g.values[i];
        if (!raw) vals[i] *= 0.2;
    }
    return PHField{std::move(vals)};
}

PHField ph_mcshane_extend(const RaySystem& rays, const std::vector<int>& sub,
                          const std::vector<double>& sub_values) {
    if (sub.empty()) throw EmptySubcone("extension needs a nonempty sub-cone");
    if (sub.size() != sub_values.size())
        throw MisalignedField("sub-cone index/value size mismatch");
    std::vector<int> seen(rays.count(), 0);
    for (int idx : sub) {
        if (idx < 0 || idx >= rays.count())
            throw ValidationError("sub-cone index " + std::to_string(idx) + " out of range");
        if (seen[idx]++) throw ValidationError("duplicate sub-cone index " + std::to_string(idx));
    }

    std::vector<Vec> sub_dirs;
    sub_dirs.reserve(sub.size());
    for (int idx : sub) sub_dirs.push_back(rays.dirs[idx]);
    const RaySystem sub_sys{rays.dim, rays.norm, sub_dirs};
    const double L = cone_lip(sub_sys, PHField{sub_values});

    const auto& kt = kernels::table();
    const int ni = norm_index(rays.norm);
    const int m = kGridPoints - 1;          // s in {k/1024, k=0..1023}, r <= 1023
    const double ds = 1.0 / m;
    const double s_cap = 1.0 - 0x1.0p-20;   // refinement stays below r ~ 1e6
    double out[kGridPoints];

    std::vector<double> result(rays.count(), 0.0);
    for (int i = 0; i < rays.count(); ++i) {
        if (seen[i]) continue;
        const Vec& u = rays.dirs[i];
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < sub_dirs.size(); ++a) {
            const Vec& w = sub_dirs[a];
            const double fw = sub_values[a];
            kt.ray_ext_grid[ni](u.data(), w.data(), u.size(), fw, L, 0.0, ds, out, m);
            BestPoint bp;
            for (int k = 0; k < m; ++k)
                if (out[k] > bp.value) bp = {k * ds, out[k]};
            auto f1 = [&](double s) {
                double v;
                kt.ray_ext_grid[ni](u.data(), w.data(), u.size(), fw, L, s, 0.0, &v, 1);
                return v;
            };
            const int kbest = static_cast<int>(bp.x * m + 0.5);
            const double lo = std::max(0.0, (kbest - 1) * ds);
            const double hi = std::min(s_cap, (kbest + 1) * ds);
            const BestPoint r = ternary_max(f1, lo, hi);
            double sup = std::max(bp.value, r.value);

            const double tau_inf = kernels::tau_infinity(ni, u.data(), w.data(), u.size());
            if (fw == L) {
                // slope vanishes: the sup is the r->infinity limit
                sup = std::max(sup, L * tau_inf);
            } else {
                // upper bound for the unexplored tail r >= 2^20
                const double r_cap = 0x1.0p20;
                const double tail_upper = (fw - L) * r_cap + L * tau_inf;
                if (tail_upper > sup + 1e-10 * std::max(1.0, L))
                    sup = std::max(sup, L * tau_inf);
            }
            best = std::max(best, sup);
        }
        result[i] = best;
    }
    for (std::size_t a = 0; a < sub.size(); ++a) result[sub[a]] = sub_values[a];
    return PHField{std::move(result)};
}

Vec ball_projection(const Vec& x, NormTag norm) {
    const double r = norm_of(norm, x);
    if (r <= 1.0) return x;
    Vec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / r;
    return y;
}

PHFreeElement make_ph_free_element(int dim, NormTag norm,
                                   std::vector<PHFreeElement::Term> terms) {
    if (dim <= 0) throw BadDimension("ph free element needs a positive dimension");
    std::vector<PHFreeElement::Term> kept;
    kept.reserve(terms.size());
    for (auto& t : terms) {
        if (static_cast<int>(t.x.size()) != dim)
            throw BadDimension("support point has wrong dimension");
        if (t.a == 0.0 || norm_of(norm, t.x) == 0.0) continue;  // delta^ph_0 = 0
        kept.push_back(std::move(t));
    }
    return PHFreeElement{dim, norm, std::move(kept)};
}

ReducedPH reduce(const PHFreeElement& mu) {
    ReducedPH red;
    double mass = 0.0;
    for (const auto& t : mu.terms) {
        const double r = norm_of(mu.norm, t.x);
        if (r == 0.0 || t.a == 0.0) continue;
        mass += std::abs(t.a) * r;
        const Vec u = normalized(t.x, mu.norm);
        int hit = -1;
        for (std::size_t i = 0; i < red.dirs.size(); ++i)
            if (kernels::table().diff_linf(red.dirs[i].data(), u.data(), u.size()) <=
                kDirectionTol) {
                hit = static_cast<int>(i);
                break;
            }
        if (hit < 0) {
            red.dirs.push_back(u);
            red.weights.push_back(t.a * r);
        } else {
            red.weights[hit] += t.a * r;
        }
    }
    // drop weights that are zero at the scale of the element
    std::vector<Vec> dirs;
    std::vector<double> weights;
    for (std::size_t i = 0; i < red.dirs.size(); ++i)
        if (std::abs(red.weights[i]) > 1e-12 * mass) {
            dirs.push_back(std::move(red.dirs[i]));
            weights.push_back(red.weights[i]);
        }
    std::vector<std::size_t> order(dirs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return dirs[a] < dirs[b]; });
    ReducedPH out;
    for (std::size_t i : order) {
        out.dirs.push_back(std::move(dirs[i]));
        out.weights.push_back(weights[i]);
    }
    return out;
}

Vec PHMap::apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != in_dim) throw BadDimension("point has wrong dimension");
    if (matrix) {
        Vec y(out_dim, 0.0);
        for (int r = 0; r < out_dim; ++r)
            for (int c = 0; c < in_dim; ++c) y[r] += (*matrix)[r][c] * x[c];
        return y;
    }
    const double r = norm_of(sample_rays->norm, x);
    if (r == 0.0) return Vec(out_dim, 0.0);
    const int i = match_direction(*sample_rays, normalized(x, sample_rays->norm));
    if (i < 0) throw DirectionNotRepresented("map is not sampled on this ray");
    Vec y = sample_values[i];
    for (double& c : y) c *= r;
    return y;
}

PHFreeElement ph_pushforward(const PHMap& f, const PHFreeElement& mu) {
    std::vector<PHFreeElement::Term> terms;
    terms.reserve(mu.terms.size());
    for (const auto& t : mu.terms) terms.push_back({f.apply(t.x), t.a});
    return make_ph_free_element(f.out_dim, f.out_norm, std::move(terms));
}

double ph_pairing(const RaySystem& rays, const PHField& f, const PHFreeElement& mu) {
    check_field(rays, f);
    if (mu.dim != rays.dim) throw BadDimension("element/system dimension mismatch");
    double acc = 0.0;
    for (const auto& t : mu.terms) {
        const double r = norm_of(rays.norm, t.x);
        if (r == 0.0 || t.a == 0.0) continue;
        const int i = match_direction(rays, normalized(t.x, rays.norm));
        if (i < 0) throw DirectionNotRepresented("support point off the represented rays");
        acc += t.a * r * f.values[i];
    }
    return acc;
}

}  // namespace conelip
