#include "conelip/mcshane.hpp"

#include <algorithm>
#include <cmath>

namespace conelip {

namespace {

constexpr double kSandwichTol = 1e-12;

void validate_partial(const PointedSpace& space, const PartialField& pf) {
    if (pf.domain.empty()) throw BasepointMissing("partial field has an empty domain");
    if (pf.domain.size() != pf.values.size())
        throw MisalignedField("partial field domain/value size mismatch");
    bool has_base = false;
    for (std::size_t a = 0; a < pf.domain.size(); ++a) {
        const int idx = pf.domain[a];
        if (idx < 0 || idx >= space.n)
            throw ValidationError("partial field index " + std::to_string(idx) + " out of range");
        if (idx == 0) {
            has_base = true;
            if (pf.values[a] != 0.0)
                throw MisalignedField("partial field must vanish at the basepoint");
        }
        for (std::size_t b = a + 1; b < pf.domain.size(); ++b)
            if (pf.domain[a] == pf.domain[b])
                throw ValidationError("partial field domain has duplicate index " +
                                      std::to_string(idx));
    }
    if (!has_base) throw BasepointMissing("partial field domain must contain the basepoint");
}

double admissible_constant(const PointedSpace& space, const PartialField& pf,
                           const std::optional<double>& lip) {
    const double L0 = partial_lip(space, pf).value;
    if (!lip) return L0;
    if (*lip < L0)
        throw ValidationError("supplied constant is below the Lipschitz constant of the data");
    return *lip;
}

enum class Formula { sup, inf };

ScalarField extend(const PointedSpace& space, const PartialField& pf,
                   const std::optional<double>& lip, Formula which) {
    validate_partial(space, pf);
    const double L = admissible_constant(space, pf, lip);
    const std::size_t e = pf.domain.size();

    std::vector<int> on_domain(space.n, -1);
    for (std::size_t a = 0; a < e; ++a) on_domain[pf.domain[a]] = static_cast<int>(a);

    std::vector<double> drow(e);
    std::vector<double> out(space.n, 0.0);
    const auto& k = kernels::table();
    for (int x = 0; x < space.n; ++x) {
        if (on_domain[x] >= 0) {
            out[x] = pf.values[on_domain[x]];
            continue;
        }
        for (std::size_t a = 0; a < e; ++a) drow[a] = space.dist(x, pf.domain[a]);
        out[x] = (which == Formula::sup)
                     ? k.mcshane_sup_row(pf.values.data(), drow.data(), L, e, nullptr)
                     : k.mcshane_inf_row(pf.values.data(), drow.data(), L, e, nullptr);
    }
    return ScalarField{std::move(out)};
}

}  // namespace

PartialField make_partial_field(const PointedSpace& space, std::vector<int> domain,
                                std::vector<double> values) {
    PartialField pf{std::move(domain), std::move(values)};
    validate_partial(space, pf);
    return pf;
}

LipResult partial_lip(const PointedSpace& space, const PartialField& pf) {
    LipResult r;
    const std::size_t e = pf.domain.size();
    for (std::size_t a = 0; a < e; ++a)
        for (std::size_t b = a + 1; b < e; ++b) {
            const double d = space.dist(pf.domain[a], pf.domain[b]);
            const double v = std::abs(pf.values[a] - pf.values[b]) / d;
            if (v > r.value) {
                r.value = v;
                r.i = pf.domain[a];
                r.j = pf.domain[b];
            }
        }
    return r;
}

ScalarField mcshane_sup(const PointedSpace& space, const PartialField& pf,
                        std::optional<double> lip) {
    return extend(space, pf, lip, Formula::sup);
}

ScalarField mcshane_inf(const PointedSpace& space, const PartialField& pf,
                        std::optional<double> lip) {
    return extend(space, pf, lip, Formula::inf);
}

bool is_extremal_sandwich(const PointedSpace& space, const PartialField& pf,
                          const ScalarField& h) {
    validate_partial(space, pf);
    check_aligned(space, h);
    for (std::size_t a = 0; a < pf.domain.size(); ++a)
        if (std::abs(h.values[pf.domain[a]] - pf.values[a]) > kSandwichTol)
            throw NotAnExtension("candidate disagrees with the data on its domain");
    const double L = partial_lip(space, pf).value;
    if (lip_const(space, h).value > L + kSandwichTol)
        throw NotAnExtension("candidate exceeds the Lipschitz constant of the data");
    const ScalarField F = mcshane_sup(space, pf);
    const ScalarField G = mcshane_inf(space, pf);
    for (int x = 0; x < space.n; ++x) {
        if (h.values[x] < F.values[x] - kSandwichTol) return false;
        if (h.values[x] > G.values[x] + kSandwichTol) return false;
    }
    return true;
}

}  // namespace conelip
