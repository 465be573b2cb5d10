#pragma once
#include <vector>

#include "conelip/norms.hpp"

namespace conelip {

// Finite pointed metric space. The basepoint is always index 0. Distances are
// computed once at construction and cached; every downstream operation reads
// the cache, never recomputes.
struct PointedSpace {
    enum class Kind { embedded, matrix };

    Kind kind = Kind::matrix;
    int dim = 0;                   // embedded only
    NormTag norm = NormTag::l2;    // embedded only
    std::vector<Vec> points;       // embedded only
    std::vector<double> dist_;     // n*n cache, row-major
    int n = 0;

    double dist(int i, int j) const { return dist_[static_cast<std::size_t>(i) * n + j]; }
    const double* dist_row(int i) const { return dist_.data() + static_cast<std::size_t>(i) * n; }
    bool embedded() const { return kind == Kind::embedded; }
};

// Real-valued function sampled on a PointedSpace, zero at the basepoint.
struct ScalarField {
    std::vector<double> values;
};

inline constexpr double kMetricTol = 1e-12;      // triangle-inequality slack
inline constexpr double kDuplicateTol = 1e-12;   // dist below this = same point

PointedSpace make_embedded_space(int dim, NormTag norm, std::vector<Vec> points);
PointedSpace make_matrix_space(const std::vector<std::vector<double>>& dist);

ScalarField make_scalar_field(const PointedSpace& space, std::vector<double> values);

struct LipResult {
    double value = 0.0;
    int i = -1, j = -1;  // maximizing pair (lexicographically first), -1 if n < 2
};

// Exact Lipschitz constant: max over i<j of |f(i)-f(j)| / dist(i,j).
LipResult lip_const(const PointedSpace& space, const ScalarField& f);

// Sub-space on the given indices (must contain the basepoint, which is moved
// to the front). Cached distances are copied, not recomputed.
PointedSpace restrict_space(const PointedSpace& space, std::vector<int> subset);

ScalarField restrict_field(const ScalarField& f, const std::vector<int>& subset);

void check_aligned(const PointedSpace& space, const ScalarField& f);

}  // namespace conelip
