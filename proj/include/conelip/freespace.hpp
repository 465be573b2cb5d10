#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "conelip/cone.hpp"
#include "conelip/exact.hpp"
#include "conelip/flow.hpp"
#include "conelip/lp.hpp"
#include "conelip/metric.hpp"

namespace conelip {

// Finitely supported element of the free space over a PointedSpace.
// Canonical form: indices sorted and distinct, basepoint and zero
// coefficients dropped (delta_0 = 0).
struct FreeElement {
    std::vector<std::pair<int, double>> terms;  // (point index, coefficient)

    bool empty() const { return terms.empty(); }
};

FreeElement make_free_element(const PointedSpace& space,
                              const std::vector<std::pair<int, double>>& raw);

FreeElement scale_element(const FreeElement& mu, double alpha);
FreeElement add_elements(const PointedSpace& space, const FreeElement& a, const FreeElement& b);

// <f, mu> = sum a_i f(x_i)
double eval_pairing(const PointedSpace& space, const ScalarField& f, const FreeElement& mu);

// sum a_i * points[x_i] (embedded spaces only)
Vec barycenter(const PointedSpace& space, const FreeElement& mu);

enum class KrMethod { lp, flow, both };

struct KrResult {
    double value = 0.0;
    std::vector<double> witness_field;  // optimal f per point (LP route)
    std::vector<double> arc_flow;       // optimal transport (flow route)
    double lp_gap = 0.0;                // primal/dual gap of the LP route
    double route_gap = 0.0;             // |lp - flow| when method = both
};

// Kantorovich-Rubinstein norm of mu: LP route maximizes mu(f) over the unit
// Lipschitz ball vanishing at 0; flow route solves the transport problem with
// divergences a_i balanced at the basepoint. method = both solves both and
// throws NumericalFailure if they disagree beyond 1e-9.
KrResult kr_norm(const PointedSpace& space, const FreeElement& mu,
                 KrMethod method = KrMethod::lp, bool exact = false);

struct QuotientPrimal {
    double dist = 0.0;
    std::vector<double> coeffs;
};

// min over c of lip_const(g - sum c_i f_i), as a single LP.
QuotientPrimal quotient_dist_primal(const PointedSpace& space, const ScalarField& g,
                                    const std::vector<ScalarField>& gens, bool exact = false);

struct QuotientDual {
    double value = 0.0;
    FreeElement witness;
};

// sup mu(g) over ||mu||_KR <= 1 with f_hat_i(mu) = 0; the KR ball is encoded
// with explicit flow variables so the whole thing is one LP.
QuotientDual quotient_dist_dual(const PointedSpace& space, const ScalarField& g,
                                const std::vector<ScalarField>& gens, bool exact = false);

// Exact-rational route for certifying primal == dual as an identity.
Rational quotient_dist_primal_exact(const PointedSpace& space, const ScalarField& g,
                                    const std::vector<ScalarField>& gens);
Rational quotient_dist_dual_exact(const PointedSpace& space, const ScalarField& g,
                                  const std::vector<ScalarField>& gens);

struct PhNormResult {
    double value = 0.0;
    double max_violation = 0.0;  // constraint slack certified in the last round
    int rounds = 0;
    ReducedPH support;
    std::vector<double> witness;  // optimal f(u_i) per support direction
};

// Free-space norm on the ph side, solved by cutting planes over the
// semi-infinite constraint family |(1-t)f(u_i) - t f(u_j)| <= ||(1-t)u_i -
// t u_j||. Initial cuts at t = 1/2 plus the endpoint bounds |f(u_i)| <= 1;
// one worst-violated cut per pair per round; 500-round cap.
PhNormResult ph_norm(const PHFreeElement& mu, double tol = 1e-9);

// Coefficient-preserving conversions between F(S_X) and F^ph(X).
PHFreeElement theta(const PointedSpace& sphere, const FreeElement& mu);

struct PhiResult {
    PointedSpace sphere;
    FreeElement element;
};

PhiResult phi(const PHFreeElement& mu);

// Q(sum a_i delta_{x_i}) = sum a_i on a sphere space; |Q| <= KR norm.
double q_functional(const PointedSpace& sphere, const FreeElement& mu);

struct ScalingPair {
    int i, j;    // points[j] = r * points[i]
    double r;
};

// Detects (or validates) the scaling pairs of an embedded cone sample.
std::vector<ScalingPair> scaling_pairs(const PointedSpace& space,
                                       const std::optional<std::vector<std::pair<int, int>>>&
                                           declared = std::nullopt);

struct PhQuotient {
    double primal = 0.0;  // min over sampled-ph h of lip_const(g - h)
    double dual = 0.0;    // sup mu(g), ||mu|| <= 1, mu in span{r delta_x - delta_rx}
    std::vector<ScalingPair> pairs;
};

PhQuotient ph_quotient_check(const PointedSpace& space, const ScalarField& g,
                             const std::optional<std::vector<std::pair<int, int>>>& declared =
                                 std::nullopt,
                             bool exact = false);

std::pair<Rational, Rational> ph_quotient_check_exact(
    const PointedSpace& space, const ScalarField& g,
    const std::optional<std::vector<std::pair<int, int>>>& declared = std::nullopt);

}  // namespace conelip
