#include "conelip/metric.hpp"

#include <algorithm>

namespace conelip {

namespace {

void validate_metric(const std::vector<double>& d, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dij = d[static_cast<std::size_t>(i) * n + j];
            if (dij < kDuplicateTol) throw DuplicatePoint(i, j);
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double dij = d[static_cast<std::size_t>(i) * n + j];
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double via = d[static_cast<std::size_t>(i) * n + k] +
                                   d[static_cast<std::size_t>(k) * n + j];
                if (dij > via + kMetricTol) throw TriangleViolation(i, j, k);
            }
        }
}

}  // namespace

PointedSpace make_embedded_space(int dim, NormTag norm, std::vector<Vec> points) {
    if (dim <= 0) throw BadDimension("embedded space needs a positive dimension");
    if (points.empty()) throw BadDimension("a pointed space needs at least the basepoint");
    for (std::size_t i = 0; i < points.size(); ++i)
        if (static_cast<int>(points[i].size()) != dim)
            throw BadDimension("point " + std::to_string(i) + " has wrong dimension");

    PointedSpace s;
    s.kind = PointedSpace::Kind::embedded;
    s.dim = dim;
    s.norm = norm;
    s.n = static_cast<int>(points.size());
    s.points = std::move(points);
    s.dist_.assign(static_cast<std::size_t>(s.n) * s.n, 0.0);
    for (int i = 0; i < s.n; ++i)
        for (int j = i + 1; j < s.n; ++j) {
            const double d = dist_of(norm, s.points[i], s.points[j]);
            s.dist_[static_cast<std::size_t>(i) * s.n + j] = d;
            s.dist_[static_cast<std::size_t>(j) * s.n + i] = d;
        }
    validate_metric(s.dist_, s.n);
    return s;
}

PointedSpace make_matrix_space(const std::vector<std::vector<double>>& dist) {
    const int n = static_cast<int>(dist.size());
    if (n == 0) throw BadDimension("a pointed space needs at least the basepoint");
    for (int i = 0; i < n; ++i)
        if (static_cast<int>(dist[i].size()) != n)
            throw BadDimension("distance matrix is not square");

    PointedSpace s;
    s.kind = PointedSpace::Kind::matrix;
    s.n = n;
    s.dist_.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        if (std::abs(dist[i][i]) > kMetricTol)
            throw ValidationError("dist(" + std::to_string(i) + "," + std::to_string(i) +
                                  ") must be 0");
        for (int j = 0; j < n; ++j) {
            if (dist[i][j] < 0.0)
                throw ValidationError("negative distance at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
            if (std::abs(dist[i][j] - dist[j][i]) > kMetricTol)
                throw ValidationError("distance matrix is not symmetric at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    // store the upper triangle mirrored, so the cache is exactly symmetric
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            s.dist_[static_cast<std::size_t>(i) * n + j] = dist[i][j];
            s.dist_[static_cast<std::size_t>(j) * n + i] = dist[i][j];
        }
    validate_metric(s.dist_, n);
    return s;
}

ScalarField make_scalar_field(const PointedSpace& space, std::vector<double> values) {
    if (static_cast<int>(values.size()) != space.n)
        throw MisalignedField("field has " + std::to_string(values.size()) + " values, space has " +
                              std::to_string(space.n) + " points");
    if (values[0] != 0.0) throw MisalignedField("field must vanish at the basepoint (index 0)");
    return ScalarField{std::move(values)};
}

void check_aligned(const PointedSpace& space, const ScalarField& f) {
    if (static_cast<int>(f.values.size()) != space.n)
        throw MisalignedField("field/space size mismatch: " + std::to_string(f.values.size()) +
                              " vs " + std::to_string(space.n));
}

LipResult lip_const(const PointedSpace& space, const ScalarField& f) {
    check_aligned(space, f);
    LipResult r;
    const auto& k = kernels::table();
    for (int i = 0; i + 1 < space.n; ++i) {
        std::size_t arg = 0;
        const double v = k.max_absdiff_ratio(f.values[i], f.values.data() + i + 1,
                                             space.dist_row(i) + i + 1,
                                             static_cast<std::size_t>(space.n - i - 1), &arg);
        if (v > r.value) {
            r.value = v;
            r.i = i;
            r.j = i + 1 + static_cast<int>(arg);
        }
    }
    return r;
}

PointedSpace restrict_space(const PointedSpace& space, std::vector<int> subset) {
    if (subset.empty()) throw BasepointMissing("restriction subset is empty");
    for (int idx : subset)
        if (idx < 0 || idx >= space.n)
            throw ValidationError("restriction index " + std::to_string(idx) + " out of range");
    auto base = std::find(subset.begin(), subset.end(), 0);
    if (base == subset.end())
        throw BasepointMissing("restriction subset must contain the basepoint (index 0)");
    std::rotate(subset.begin(), base, base + 1);
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b)
            if (subset[a] == subset[b])
                throw ValidationError("restriction subset has duplicate index " +
                                      std::to_string(subset[a]));

    PointedSpace s;
    s.kind = space.kind;
    s.dim = space.dim;
    s.norm = space.norm;
    s.n = static_cast<int>(subset.size());
    if (space.embedded()) {
        s.points.reserve(subset.size());
        for (int idx : subset) s.points.push_back(space.points[idx]);
    }
    s.dist_.assign(static_cast<std::size_t>(s.n) * s.n, 0.0);
    for (int a = 0; a < s.n; ++a)
        for (int b = 0; b < s.n; ++b)
            s.dist_[static_cast<std::size_t>(a) * s.n + b] = space.dist(subset[a], subset[b]);
    return s;
}

ScalarField restrict_field(const ScalarField& f, const std::vector<int>& subset) {
    std::vector<int> order = subset;
    auto base = std::find(order.begin(), order.end(), 0);
    if (base == order.end())
        throw BasepointMissing("restriction subset must contain the basepoint (index 0)");
    std::rotate(order.begin(), base, base + 1);
    std::vector<double> vals;
    vals.reserve(order.size());
    for (int idx : order) vals.push_back(f.values[idx]);
    return ScalarField{std::move(vals)};
}

}  // namespace conelip
