#pragma once
#include <cmath>
#include <string>
#include <vector>

#include "conelip/errors.hpp"
#include "conelip/kernels.hpp"

namespace conelip {

enum class NormTag { l1 = 0, l2 = 1, linf = 2 };

using Vec = std::vector<double>;

inline int norm_index(NormTag t) { return static_cast<int>(t); }

inline double norm_of(NormTag t, const double* x, std::size_t n) {
    const auto& k = kernels::table();
    switch (t) {
        case NormTag::l1: return k.norm_l1(x, n);
        case NormTag::l2: return std::sqrt(k.norm_l2sq(x, n));
        default: return k.norm_linf(x, n);
    }
}

inline double norm_of(NormTag t, const Vec& x) { return norm_of(t, x.data(), x.size()); }

inline double dist_of(NormTag t, const double* a, const double* b, std::size_t n) {
    const auto& k = kernels::table();
    switch (t) {
        case NormTag::l1: return k.diff_l1(a, b, n);
        case NormTag::l2: return std::sqrt(k.diff_l2sq(a, b, n));
        default: return k.diff_linf(a, b, n);
    }
}

inline double dist_of(NormTag t, const Vec& a, const Vec& b) {
    return dist_of(t, a.data(), b.data(), a.size());
}

inline std::string norm_name(NormTag t) {
    switch (t) {
        case NormTag::l1: return "l1";
        case NormTag::l2: return "l2";
        default: return "linf";
    }
}

inline NormTag parse_norm(const std::string& s) {
    if (s == "l1") return NormTag::l1;
    if (s == "l2") return NormTag::l2;
    if (s == "linf") return NormTag::linf;
    throw ValidationError("unknown norm tag '" + s + "' (expected l1, l2 or linf)");
}

}  // namespace conelip
