#pragma once
#include <cstddef>

namespace conelip::kernels {

// Dense arithmetic inner loops, provided as a scalar reference implementation
// and an AVX2 variant selected at runtime. Everything above this layer is
// backend-agnostic; the two backends are equivalence-tested against each
// other (bitwise for max-type reductions and grid evaluators, ~1 ulp for
// sum-type reductions whose lane accumulation reassociates).
//
// Norm-indexed kernel arrays use the order {l1, l2, linf}.

enum class Backend { scalar, avx2 };

struct Table {
    // plain norms of x
    double (*norm_l1)(const double* x, std::size_t n);
    double (*norm_l2sq)(const double* x, std::size_t n);
    double (*norm_linf)(const double* x, std::size_t n);

    // norms of a - b
    double (*diff_l1)(const double* a, const double* b, std::size_t n);
    double (*diff_l2sq)(const double* a, const double* b, std::size_t n);
    double (*diff_linf)(const double* a, const double* b, std::size_t n);

    // y += alpha * x ; y *= alpha   (simplex row operations)
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    void (*scale)(double alpha, double* y, std::size_t n);

    // max over j of |fi - f[j]| / d[j]; *arg = first index attaining the max.
    // Requires n > 0 and d[j] > 0.
    double (*max_absdiff_ratio)(double fi, const double* f, const double* d, std::size_t n,
                                std::size_t* arg);

    // max over j of f[j] - L*d[j], and min over j of f[j] + L*d[j];
    // *arg = first index attaining the extremum. Requires n > 0.
    double (*mcshane_sup_row)(const double* f, const double* d, double L, std::size_t n,
                              std::size_t* arg);
    double (*mcshane_inf_row)(const double* f, const double* d, double L, std::size_t n,
                              std::size_t* arg);

    // out[k] = |(1-t)a - t b| / ||(1-t)u - t v||   at t = t0 + k*dt
    void (*pair_ratio_grid[3])(const double* u, const double* v, std::size_t dim, double a,
                               double b, double t0, double dt, double* out, std::size_t m);

    // out[k] = |(1-t)a - t b| - ||(1-t)u - t v||   at t = t0 + k*dt
    void (*pair_gap_grid[3])(const double* u, const double* v, std::size_t dim, double a,
                             double b, double t0, double dt, double* out, std::size_t m);

    // out[k] = r*(fw - L) + L*tau(r) with r = s/(1-s), s = s0 + k*ds, s < 1,
    // where tau(r) = r - ||r*w - u|| is evaluated in a cancellation-free form
    // per norm so the objective stays accurate for r up to ~2^40.
    void (*ray_ext_grid[3])(const double* u, const double* w, std::size_t dim, double fw,
                            double L, double s0, double ds, double* out, std::size_t m);
};

// Active table. First use auto-detects the best supported backend and honors
// CONELIP_KERNEL=scalar|avx2 from the environment.
const Table& table();

Backend active_backend();
bool backend_supported(Backend b);
// Returns false (and leaves the active table unchanged) if unsupported.
bool set_backend(Backend b);

const char* backend_name(Backend b);

// tau_infinity = lim_{r->inf} (r - ||r*w - u||) for unit w, by norm index.
// Used for the asymptotic candidate of the positively homogeneous extension.
double tau_infinity(int norm_index, const double* u, const double* w, std::size_t dim);

}  // namespace conelip::kernels
