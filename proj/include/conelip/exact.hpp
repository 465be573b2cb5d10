#pragma once
#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

#include "conelip/lp.hpp"

namespace conelip {

// Exact arithmetic lane. Doubles convert to cpp_rational without rounding, so
// any LP whose data originates from doubles can be certified exactly. Meant
// for small instances (<= 50 variables); the acceptance suite uses it to turn
// tolerance checks into equalities.
using Rational = boost::multiprecision::cpp_rational;

struct ExactLPSolution {
    LPStatus status = LPStatus::optimal;
    Rational objective;
    std::vector<Rational> primal;
    std::vector<Rational> dual;
};

ExactLPSolution solve_lp_exact(const LPProblem& p);

inline double rational_to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace conelip
