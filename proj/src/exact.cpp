#include "conelip/exact.hpp"

#include "conelip/detail/canonical.hpp"

namespace conelip {

ExactLPSolution solve_lp_exact(const LPProblem& p) {
    detail::GenericSolution<Rational> g = detail::solve_generic<Rational>(p);
    ExactLPSolution s;
    s.status = g.status;
    if (g.status != LPStatus::optimal) return s;
    s.objective = std::move(g.objective);
    s.primal = std::move(g.primal);
    s.dual = std::move(g.dual);
    return s;
}

}  // namespace conelip
