#include "conelip/lp.hpp"

#include <algorithm>
#include <cmath>

#include "conelip/detail/canonical.hpp"

namespace conelip {

LPSolution solve_lp(const LPProblem& p) {
    detail::GenericSolution<double> g = detail::solve_generic<double>(p);
    LPSolution s;
    s.status = g.status;
    if (g.status != LPStatus::optimal) return s;
    s.objective = g.objective;
    s.primal = std::move(g.primal);
    s.dual = std::move(g.dual);

    double res = 0.0;
    for (const auto& row : p.rows) {
        double lhs = 0.0;
        for (int j = 0; j < p.num_vars(); ++j) lhs += row.coeffs[j] * s.primal[j];
        switch (row.rel) {
            case Rel::le: res = std::max(res, lhs - row.rhs); break;
            case Rel::eq: res = std::max(res, std::abs(lhs - row.rhs)); break;
            case Rel::ge: res = std::max(res, row.rhs - lhs); break;
        }
    }
    for (int j = 0; j < p.num_vars(); ++j) {
        if (p.lower[j] > -kInf) res = std::max(res, p.lower[j] - s.primal[j]);
        if (p.upper[j] < kInf) res = std::max(res, s.primal[j] - p.upper[j]);
    }
    s.feas_residual = res;
    s.gap = std::abs(g.primal_canon - g.dual_canon) / std::max(1.0, std::abs(g.primal_canon));
    return s;
}

}  // namespace conelip
