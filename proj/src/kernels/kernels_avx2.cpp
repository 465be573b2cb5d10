#if defined(CONELIP_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "kernels_internal.hpp"

// AVX2 variants. Vectorization is across independent output elements (grid
// points, row entries); reductions over the small `dim` loops keep the scalar
// association order per lane, so grid kernels match the scalar backend
// bitwise. Sum reductions across n (norm/diff kernels) reassociate and agree
// to ~1 ulp. No fma: mul/add stay separate to mirror scalar arithmetic.

namespace conelip::kernels {

namespace {

const __m256d kSignMask = _mm256_set1_pd(-0.0);

inline __m256d vabs(__m256d x) { return _mm256_andnot_pd(kSignMask, x); }

inline double hsum(__m256d x) {
    __m128d lo = _mm256_castpd256_pd128(x);
    __m128d hi = _mm256_extractf128_pd(x, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

inline double hmax(__m256d x) {
    __m128d lo = _mm256_castpd256_pd128(x);
    __m128d hi = _mm256_extractf128_pd(x, 1);
    lo = _mm_max_pd(lo, hi);
    return std::max(_mm_cvtsd_f64(lo), _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo)));
}

inline double hmin(__m256d x) {
    __m128d lo = _mm256_castpd256_pd128(x);
    __m128d hi = _mm256_extractf128_pd(x, 1);
    lo = _mm_min_pd(lo, hi);
    return std::min(_mm_cvtsd_f64(lo), _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo)));
}

double k_norm_l1(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, vabs(_mm256_loadu_pd(x + i)));
    double s = hsum(acc);
    for (; i < n; ++i) s += std::abs(x[i]);
    return s;
}

double k_norm_l2sq(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double k_norm_linf(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, vabs(_mm256_loadu_pd(x + i)));
    double s = (i > 0) ? hmax(acc) : 0.0;
    for (; i < n; ++i) s = std::max(s, std::abs(x[i]));
    return s;
}

double k_diff_l1(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, vabs(d));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += std::abs(a[i] - b[i]);
    return s;
}

double k_diff_l2sq(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double k_diff_linf(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_max_pd(acc, vabs(d));
    }
    double s = (i > 0) ? hmax(acc) : 0.0;
    for (; i < n; ++i) s = std::max(s, std::abs(a[i] - b[i]));
    return s;
}

void k_axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yi = _mm256_loadu_pd(y + i);
        yi = _mm256_add_pd(yi, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(y + i, yi);
    }
    for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void k_scale(double alpha, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_mul_pd(av, _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] = alpha * y[i];
}

double k_max_absdiff_ratio(double fi, const double* f, const double* d, std::size_t n,
                           std::size_t* arg) {
    const __m256d fiv = _mm256_set1_pd(fi);
    __m256d acc = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_div_pd(vabs(_mm256_sub_pd(fiv, _mm256_loadu_pd(f + i))),
                                  _mm256_loadu_pd(d + i));
        acc = _mm256_max_pd(acc, v);
    }
    double best = (i > 0) ? hmax(acc) : -std::numeric_limits<double>::infinity();
    for (; i < n; ++i) best = std::max(best, std::abs(fi - f[i]) / d[i]);
    // second pass: first index attaining the max (same per-element arithmetic)
    std::size_t bi = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(fi - f[j]) / d[j] == best) {
            bi = j;
            break;
        }
    }
    if (arg) *arg = bi;
    return best;
}

double k_mcshane_sup_row(const double* f, const double* d, double L, std::size_t n,
                         std::size_t* arg) {
    const __m256d Lv = _mm256_set1_pd(L);
    __m256d acc = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_sub_pd(_mm256_loadu_pd(f + i),
                                  _mm256_mul_pd(Lv, _mm256_loadu_pd(d + i)));
        acc = _mm256_max_pd(acc, v);
    }
    double best = (i > 0) ? hmax(acc) : -std::numeric_limits<double>::infinity();
    for (; i < n; ++i) best = std::max(best, f[i] - L * d[i]);
    std::size_t bi = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (f[j] - L * d[j] == best) {
            bi = j;
            break;
        }
    }
    if (arg) *arg = bi;
    return best;
}

double k_mcshane_inf_row(const double* f, const double* d, double L, std::size_t n,
                         std::size_t* arg) {
    const __m256d Lv = _mm256_set1_pd(L);
    __m256d acc = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_add_pd(_mm256_loadu_pd(f + i),
                                  _mm256_mul_pd(Lv, _mm256_loadu_pd(d + i)));
        acc = _mm256_min_pd(acc, v);
    }
    double best = (i > 0) ? hmin(acc) : std::numeric_limits<double>::infinity();
    for (; i < n; ++i) best = std::min(best, f[i] + L * d[i]);
    std::size_t bi = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (f[j] + L * d[j] == best) {
            bi = j;
            break;
        }
    }
    if (arg) *arg = bi;
    return best;
}

enum { RATIO, GAP };

template <int Norm, int Kind>
void k_pair_grid(const double* u, const double* v, std::size_t dim, double a, double b, double t0,
                 double dt, double* out, std::size_t m) {
    const __m256d t0v = _mm256_set1_pd(t0);
    const __m256d dtv = _mm256_set1_pd(dt);
    const __m256d onev = _mm256_set1_pd(1.0);
    const __m256d av = _mm256_set1_pd(a);
    const __m256d bv = _mm256_set1_pd(b);
    std::size_t k = 0;
    for (; k + 4 <= m; k += 4) {
        const __m256d idx = _mm256_set_pd(static_cast<double>(k + 3), static_cast<double>(k + 2),
                                          static_cast<double>(k + 1), static_cast<double>(k));
        const __m256d t = _mm256_add_pd(t0v, _mm256_mul_pd(idx, dtv));
        const __m256d s = _mm256_sub_pd(onev, t);
        const __m256d num = vabs(_mm256_sub_pd(_mm256_mul_pd(s, av), _mm256_mul_pd(t, bv)));
        __m256d den;
        if constexpr (Norm == 0) {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t i = 0; i < dim; ++i) {
                __m256d e = _mm256_sub_pd(_mm256_mul_pd(s, _mm256_set1_pd(u[i])),
                                          _mm256_mul_pd(t, _mm256_set1_pd(v[i])));
                acc = _mm256_add_pd(acc, vabs(e));
            }
            den = acc;
        } else if constexpr (Norm == 1) {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t i = 0; i < dim; ++i) {
                __m256d e = _mm256_sub_pd(_mm256_mul_pd(s, _mm256_set1_pd(u[i])),
                                          _mm256_mul_pd(t, _mm256_set1_pd(v[i])));
                acc = _mm256_add_pd(acc, _mm256_mul_pd(e, e));
            }
            den = _mm256_sqrt_pd(acc);
        } else {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t i = 0; i < dim; ++i) {
                __m256d e = _mm256_sub_pd(_mm256_mul_pd(s, _mm256_set1_pd(u[i])),
                                          _mm256_mul_pd(t, _mm256_set1_pd(v[i])));
                acc = _mm256_max_pd(acc, vabs(e));
            }
            den = acc;
        }
        _mm256_storeu_pd(out + k,
                         (Kind == RATIO) ? _mm256_div_pd(num, den) : _mm256_sub_pd(num, den));
    }
    for (; k < m; ++k) {
        const double t = t0 + static_cast<double>(k) * dt;
        const double s = 1.0 - t;
        const double num = std::abs(s * a - t * b);
        double den;
        if constexpr (Norm == 0) {
            double acc = 0.0;
            for (std::size_t i = 0; i < dim; ++i) acc += std::abs(s * u[i] - t * v[i]);
            den = acc;
        } else if constexpr (Norm == 1) {
            double acc = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                const double e = s * u[i] - t * v[i];
                acc += e * e;
            }
            den = std::sqrt(acc);
        } else {
            double acc = 0.0;
            for (std::size_t i = 0; i < dim; ++i) acc = std::max(acc, std::abs(s * u[i] - t * v[i]));
            den = acc;
        }
        out[k] = (Kind == RATIO) ? num / den : num - den;
    }
}

inline double tau_term(double wi, double ui, double r) {
    if (wi == 0.0) return -std::abs(ui);
    const double a = r * wi;
    if (wi > 0.0) return (ui <= a) ? ui : 2.0 * a - ui;
    return (ui >= a) ? -ui : ui - 2.0 * a;
}

// vector tau_term for fixed (wi, ui), lane-varying r; branches on wi are
// scalar, the ui<=>a comparison becomes a blend
inline __m256d tau_term_v(double wi, double ui, __m256d r) {
    if (wi == 0.0) return _mm256_set1_pd(-std::abs(ui));
    const __m256d uiv = _mm256_set1_pd(ui);
    const __m256d a = _mm256_mul_pd(r, _mm256_set1_pd(wi));
    const __m256d two_a = _mm256_mul_pd(_mm256_set1_pd(2.0), a);
    if (wi > 0.0) {
        __m256d mask = _mm256_cmp_pd(uiv, a, _CMP_LE_OQ);
        return _mm256_blendv_pd(_mm256_sub_pd(two_a, uiv), uiv, mask);
    }
    __m256d mask = _mm256_cmp_pd(uiv, a, _CMP_GE_OQ);
    return _mm256_blendv_pd(_mm256_sub_pd(uiv, two_a), _mm256_sub_pd(_mm256_setzero_pd(), uiv),
                            mask);
}

template <int Norm>
void k_ray_ext_grid(const double* u, const double* w, std::size_t dim, double fw, double L,
                    double s0, double ds, double* out, std::size_t m) {
    double c = 0.0, q = 0.0, ww = 0.0;
    if constexpr (Norm == 1) {
        for (std::size_t i = 0; i < dim; ++i) {
            c += u[i] * w[i];
            q += u[i] * u[i];
            ww += w[i] * w[i];
        }
    }
    const __m256d s0v = _mm256_set1_pd(s0);
    const __m256d dsv = _mm256_set1_pd(ds);
    const __m256d onev = _mm256_set1_pd(1.0);
    const __m256d slopev = _mm256_set1_pd(fw - L);
    const __m256d Lv = _mm256_set1_pd(L);
    std::size_t k = 0;
    for (; k + 4 <= m; k += 4) {
        const __m256d idx = _mm256_set_pd(static_cast<double>(k + 3), static_cast<double>(k + 2),
                                          static_cast<double>(k + 1), static_cast<double>(k));
        const __m256d s = _mm256_add_pd(s0v, _mm256_mul_pd(idx, dsv));
        const __m256d r = _mm256_div_pd(s, _mm256_sub_pd(onev, s));
        __m256d tau;
        if constexpr (Norm == 0) {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t i = 0; i < dim; ++i)
                acc = _mm256_add_pd(acc, tau_term_v(w[i], u[i], r));
            tau = acc;
        } else if constexpr (Norm == 1) {
            const __m256d r2 = _mm256_mul_pd(r, r);
            const __m256d t1 = _mm256_mul_pd(r2, _mm256_set1_pd(ww));
            const __m256d t2 = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(2.0), r),
                                             _mm256_set1_pd(c));
            __m256d disc = _mm256_add_pd(_mm256_sub_pd(t1, t2), _mm256_set1_pd(q));
            disc = _mm256_max_pd(disc, _mm256_setzero_pd());
            const __m256d numer = _mm256_sub_pd(
                _mm256_add_pd(_mm256_mul_pd(r2, _mm256_set1_pd(1.0 - ww)), t2),
                _mm256_set1_pd(q));
            tau = _mm256_div_pd(numer, _mm256_add_pd(r, _mm256_sqrt_pd(disc)));
        } else {
            __m256d acc = _mm256_set1_pd(std::numeric_limits<double>::infinity());
            for (std::size_t i = 0; i < dim; ++i) {
                __m256d cand = _mm256_add_pd(
                    _mm256_mul_pd(r, _mm256_set1_pd(1.0 - std::abs(w[i]))),
                    tau_term_v(w[i], u[i], r));
                acc = _mm256_min_pd(acc, cand);
            }
            tau = acc;
        }
        _mm256_storeu_pd(out + k,
                         _mm256_add_pd(_mm256_mul_pd(r, slopev), _mm256_mul_pd(Lv, tau)));
    }
    for (; k < m; ++k) {
        const double s = s0 + static_cast<double>(k) * ds;
        const double r = s / (1.0 - s);
        double tau;
        if constexpr (Norm == 0) {
            double acc = 0.0;
            for (std::size_t i = 0; i < dim; ++i) acc += tau_term(w[i], u[i], r);
            tau = acc;
        } else if constexpr (Norm == 1) {
            const double disc = std::max(r * r * ww - 2.0 * r * c + q, 0.0);
            tau = (r * r * (1.0 - ww) + 2.0 * r * c - q) / (r + std::sqrt(disc));
        } else {
            double acc = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < dim; ++i) {
                const double cand = r * (1.0 - std::abs(w[i])) + tau_term(w[i], u[i], r);
                acc = std::min(acc, cand);
            }
            tau = acc;
        }
        out[k] = r * (fw - L) + L * tau;
    }
}

}  // namespace

const Table& avx2_table() {
    static const Table t = {
        k_norm_l1,
        k_norm_l2sq,
        k_norm_linf,
        k_diff_l1,
        k_diff_l2sq,
        k_diff_linf,
        k_axpy,
        k_scale,
        k_max_absdiff_ratio,
        k_mcshane_sup_row,
        k_mcshane_inf_row,
        {k_pair_grid<0, RATIO>, k_pair_grid<1, RATIO>, k_pair_grid<2, RATIO>},
        {k_pair_grid<0, GAP>, k_pair_grid<1, GAP>, k_pair_grid<2, GAP>},
        {k_ray_ext_grid<0>, k_ray_ext_grid<1>, k_ray_ext_grid<2>},
    };
    return t;
}

}  // namespace conelip::kernels

#endif  // CONELIP_HAVE_AVX2
