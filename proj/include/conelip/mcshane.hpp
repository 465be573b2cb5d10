#pragma once
#include <optional>
#include <vector>

#include "conelip/metric.hpp"

namespace conelip {

// A function known only on a subset E of a PointedSpace (E must contain the
// basepoint, where the value is 0).
struct PartialField {
    std::vector<int> domain;
    std::vector<double> values;
};

PartialField make_partial_field(const PointedSpace& space, std::vector<int> domain,
                                std::vector<double> values);

// Lipschitz constant of the partial data over E.
LipResult partial_lip(const PointedSpace& space, const PartialField& pf);

// Extremal extensions: sup formula F(x) = max_y (f(y) - L*d(x,y)) and inf
// formula G(x) = min_y (f(y) + L*d(x,y)), max/min over E. On E the input
// values are returned verbatim. An admissible constant larger than Lip(f|E)
// may be supplied; by default L is recomputed from the data.
ScalarField mcshane_sup(const PointedSpace& space, const PartialField& pf,
                        std::optional<double> lip = std::nullopt);
ScalarField mcshane_inf(const PointedSpace& space, const PartialField& pf,
                        std::optional<double> lip = std::nullopt);

// True iff F <= h <= G pointwise within 1e-12. Throws NotAnExtension when h
// disagrees with pf on E (beyond 1e-12) or lip_const(h) exceeds L + 1e-12.
bool is_extremal_sandwich(const PointedSpace& space, const PartialField& pf,
                          const ScalarField& h);

}  // namespace conelip
