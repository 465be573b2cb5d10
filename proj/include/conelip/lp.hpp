#pragma once
#include <limits>
#include <vector>

#include "conelip/errors.hpp"

namespace conelip {

enum class Rel { le, eq, ge };
enum class Sense { minimize, maximize };
enum class LPStatus { optimal, infeasible, unbounded };

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense LP. Bounds default to free; rows are Σ a_j x_j rel rhs.
struct LPProblem {
    Sense sense = Sense::maximize;
    std::vector<double> objective;
    std::vector<double> lower, upper;

    struct Row {
        std::vector<double> coeffs;
        Rel rel = Rel::le;
        double rhs = 0.0;
    };
    std::vector<Row> rows;

    int num_vars() const { return static_cast<int>(objective.size()); }

    int add_variable(double obj, double lo = -kInf, double hi = kInf) {
        objective.push_back(obj);
        lower.push_back(lo);
        upper.push_back(hi);
        return num_vars() - 1;
    }

    void add_row(std::vector<double> coeffs, Rel rel, double rhs) {
        rows.push_back(Row{std::move(coeffs), rel, rhs});
    }
};

struct LPSolution {
    LPStatus status = LPStatus::optimal;
    double objective = 0.0;
    std::vector<double> primal;
    std::vector<double> dual;      // one multiplier per input row
    double feas_residual = 0.0;    // max violation of rows/bounds at the solution
    double gap = 0.0;              // relative primal/dual objective gap
};

// Two-phase dense simplex with Bland's pivot rule, iteration cap 1e6.
// Deterministic for identical input. Throws NumericalFailure when the cap is
// hit or the refactored solution fails its own optimality check.
LPSolution solve_lp(const LPProblem& p);

}  // namespace conelip
