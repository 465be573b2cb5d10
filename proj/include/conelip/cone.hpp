#pragma once
#include <optional>
#include <vector>

#include "conelip/metric.hpp"
#include "conelip/norms.hpp"

namespace conelip {

// Finitely many unit directions; represents the cone {r*u_i : r >= 0}.
struct RaySystem {
    int dim = 0;
    NormTag norm = NormTag::l2;
    std::vector<Vec> dirs;

    int count() const { return static_cast<int>(dirs.size()); }
};

RaySystem make_ray_system(int dim, NormTag norm, std::vector<Vec> directions);

// Positively homogeneous function on the cone: f(r*u_i) = r*values[i].
struct PHField {
    std::vector<double> values;
};

PHField make_ph_field(const RaySystem& rays, std::vector<double> values);

bool same_rays(const RaySystem& a, const RaySystem& b);

// f at an arbitrary cone point (x must be 0 or lie on a represented ray
// within 1e-9).
double ph_eval(const RaySystem& rays, const PHField& f, const Vec& x);

struct PairSup {
    double t = 0.0;
    double value = 0.0;
};

// sup over t in [0,1] of |(1-t)a - t*b| / ||(1-t)u - t*v|| and its argmax.
// 1025-point grid plus ternary refinement to width 1e-12; the objective is
// not assumed unimodal, local refinement runs on the top grid cells.
PairSup pair_sup(const Vec& u, const Vec& v, double a, double b, NormTag norm);

// sup over t in [0,1] of |(1-t)a - t*b| - ||(1-t)u - t*v||, same machinery.
// Separation oracle for the cutting-plane norm solver.
PairSup pair_violation(const Vec& u, const Vec& v, double a, double b, NormTag norm);

// ||(1-t)u - t*v||
double segment_norm(const Vec& u, const Vec& v, double t, NormTag norm);

// Lipschitz constant of the ph function over the sampled cone: max of the
// per-ray slopes |values[i]| and all pairwise sups.
double cone_lip(const RaySystem& rays, const PHField& f);

// {0} u {u_i} with the restricted metric.
PointedSpace sphere_space(const RaySystem& rays);

// Restriction to the sphere sample: field (0, values...) on sphere_space.
ScalarField lambda_restrict(const RaySystem& rays, const PHField& f);

// Homogeneous extension of a sphere field: h(x) = ||x|| g(x/||x||).
PHField lambda_inverse(const RaySystem& rays, const ScalarField& sphere_field);

// f (.) g with values f_i * g_i / 5; `raw` drops the 1/5 factor.
PHField odot(const RaySystem& rays, const PHField& f, const PHField& g, bool raw = false);

// Extends values given on the sub-cone spanned by directions `sub` to the
// whole system, preserving the cone Lipschitz constant. The per-direction
// value is sup over w in sub, r >= 0 of r*f(w) - L*||u - r*w||, computed on
// an s = r/(1+r) grid with ternary refinement and an exact r->infinity
// candidate when the slope f(w) - L vanishes.
PHField ph_mcshane_extend(const RaySystem& rays, const std::vector<int>& sub,
                          const std::vector<double>& sub_values);

// x for ||x|| <= 1, else x/||x||. 2-Lipschitz.
Vec ball_projection(const Vec& x, NormTag norm);

// Finitely supported element of the ph free space: sum a_i * delta^ph_{x_i}.
struct PHFreeElement {
    int dim = 0;
    NormTag norm = NormTag::l2;

    struct Term {
        Vec x;
        double a;
    };
    std::vector<Term> terms;
};

PHFreeElement make_ph_free_element(int dim, NormTag norm, std::vector<PHFreeElement::Term> terms);

// Collinear support merged into per-direction weights w_i = sum a*||x||,
// directions sorted lexicographically, weights below 1e-12 of the total mass
// dropped.
struct ReducedPH {
    std::vector<Vec> dirs;
    std::vector<double> weights;

    bool empty() const { return dirs.empty(); }
};

ReducedPH reduce(const PHFreeElement& mu);

// Positively homogeneous Lipschitz map, either linear (matrix) or sampled
// (value vector per represented direction).
struct PHMap {
    int in_dim = 0, out_dim = 0;
    NormTag out_norm = NormTag::l2;
    std::optional<std::vector<Vec>> matrix;  // out_dim rows of in_dim
    std::optional<RaySystem> sample_rays;
    std::vector<Vec> sample_values;          // one out_dim vector per ray

    Vec apply(const Vec& x) const;
};

// C_f: sum a_i delta^ph_{x_i} -> sum a_i delta^ph_{f(x_i)}.
PHFreeElement ph_pushforward(const PHMap& f, const PHFreeElement& mu);

// <f, mu> = sum a_i r_i f(u_i) with x_i = r_i u_i.
double ph_pairing(const RaySystem& rays, const PHField& f, const PHFreeElement& mu);

Vec normalized(const Vec& x, NormTag norm);

}  // namespace conelip
