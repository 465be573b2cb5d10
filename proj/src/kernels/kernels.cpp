#include "conelip/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <mutex>

#include "kernels_internal.hpp"

namespace conelip::kernels {

namespace {

double k_norm_l1(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(x[i]);
    return s;
}

double k_norm_l2sq(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

double k_norm_linf(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s = std::max(s, std::abs(x[i]));
    return s;
}

double k_diff_l1(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(a[i] - b[i]);
    return s;
}

double k_diff_l2sq(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double k_diff_linf(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s = std::max(s, std::abs(a[i] - b[i]));
    return s;
}

void k_axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void k_scale(double alpha, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = alpha * y[i];
}

double k_max_absdiff_ratio(double fi, const double* f, const double* d, std::size_t n,
                           std::size_t* arg) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double v = std::abs(fi - f[j]) / d[j];
        if (v > best) {
            best = v;
            bi = j;
        }
    }
    if (arg) *arg = bi;
    return best;
}

double k_mcshane_sup_row(const double* f, const double* d, double L, std::size_t n,
                         std::size_t* arg) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double v = f[j] - L * d[j];
        if (v > best) {
            best = v;
            bi = j;
        }
    }
    if (arg) *arg = bi;
    return best;
}

double k_mcshane_inf_row(const double* f, const double* d, double L, std::size_t n,
                         std::size_t* arg) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double v = f[j] + L * d[j];
        if (v < best) {
            best = v;
            bi = j;
        }
    }
    if (arg) *arg = bi;
    return best;
}

// --- pair objective grids ------------------------------------------------
// One function per (norm, ratio/gap) pair so the dispatch table stays flat.

enum { RATIO, GAP };

template <int Norm, int Kind>
void k_pair_grid(const double* u, const double* v, std::size_t dim, double a, double b, double t0,
                 double dt, double* out, std::size_t m) {
    for (std::size_t k = 0; k < m; ++k) {
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

// --- ray extension objective ----------------------------------------------
// phi(r) = r*(fw - L) + L*tau(r), tau(r) = r - ||r*w - u||, r = s/(1-s).
// tau is evaluated without the r - ||r*w|| cancellation: conjugate form for
// l2, exact piecewise branches for l1/linf (see tau_term below).

inline double tau_term(double wi, double ui, double r) {
    // r*|wi| - |r*wi - ui|, branch-exact (no large-minus-large subtraction)
    if (wi == 0.0) return -std::abs(ui);
    const double a = r * wi;
    if (wi > 0.0) return (ui <= a) ? ui : 2.0 * a - ui;
    return (ui >= a) ? -ui : ui - 2.0 * a;
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
    for (std::size_t k = 0; k < m; ++k) {
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

const Table& scalar_table() {
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

double tau_infinity(int norm_index, const double* u, const double* w, std::size_t dim) {
    if (norm_index == 0) {
        double s = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            s += (w[i] == 0.0) ? -std::abs(u[i]) : ((w[i] > 0.0) ? u[i] : -u[i]);
        return s;
    }
    if (norm_index == 1) {
        double c = 0.0;
        for (std::size_t i = 0; i < dim; ++i) c += u[i] * w[i];
        return c;
    }
    double wmax = 0.0;
    for (std::size_t i = 0; i < dim; ++i) wmax = std::max(wmax, std::abs(w[i]));
    double s = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dim; ++i)
        if (std::abs(w[i]) == wmax) s = std::min(s, (w[i] > 0.0) ? u[i] : -u[i]);
    return s;
}

namespace {

const Table* g_active = nullptr;
Backend g_backend = Backend::scalar;
std::once_flag g_once;

bool cpu_has_avx2() {
#if defined(CONELIP_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

void activate(Backend b) {
#if defined(CONELIP_HAVE_AVX2)
    if (b == Backend::avx2) {
        g_active = &avx2_table();
        g_backend = Backend::avx2;
        return;
    }
#endif
    g_active = &scalar_table();
    g_backend = Backend::scalar;
}

void init_once() {
    Backend pick = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
    if (const char* env = std::getenv("CONELIP_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) pick = Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) pick = Backend::avx2;
    }
    activate(pick);
}

}  // namespace

const Table& table() {
    std::call_once(g_once, init_once);
    return *g_active;
}

Backend active_backend() {
    std::call_once(g_once, init_once);
    return g_backend;
}

bool backend_supported(Backend b) {
    return b == Backend::scalar || (b == Backend::avx2 && cpu_has_avx2());
}

bool set_backend(Backend b) {
    std::call_once(g_once, init_once);
    if (!backend_supported(b)) return false;
    activate(b);
    return true;
}

const char* backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

}  // namespace conelip::kernels
