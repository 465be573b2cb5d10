#pragma once
#include <cmath>
#include <cstdint>
#include <vector>

#include "conelip/errors.hpp"
#include "conelip/kernels.hpp"
#include "conelip/lp.hpp"

// Generic two-phase tableau simplex over an ordered field S (double or an
// exact rational type). The caller-facing conversions live in lp.cpp /
// exact.cpp; this header only knows how to solve
//     min c'y  s.t.  A y = b, y >= 0
// after canonicalization, and how to map the answer back.

namespace conelip::detail {

template <class S>
struct ScalarOps {
    static constexpr bool exact = true;
    static S from_double(double x) { return S(x); }
    static double to_double(const S& x) { return static_cast<double>(x); }
    static S abs(const S& x) { return x < S(0) ? S(-x) : x; }
    static S pivot_eps() { return S(0); }
    static S opt_eps() { return S(0); }
    static S feas_eps() { return S(0); }
};

template <>
struct ScalarOps<double> {
    static constexpr bool exact = false;
    static double from_double(double x) { return x; }
    static double to_double(double x) { return x; }
    static double abs(double x) { return std::abs(x); }
    static double pivot_eps() { return 1e-10; }
    static double opt_eps() { return 1e-9; }
    static double feas_eps() { return 1e-8; }
};

template <class S>
struct CoreSolution {
    LPStatus status = LPStatus::optimal;
    std::vector<S> y;    // canonical primal (structural + slack columns)
    std::vector<S> pi;   // canonical row duals
    S primal_obj{};      // c'y
    S dual_obj{};        // pi'b
};

template <class S>
class Simplex {
  public:
    // A: m x n (structural incl. slacks), b >= 0, artificial columns appended
    // internally for rows listed in needs_artificial.
    Simplex(std::vector<std::vector<S>> A, std::vector<S> b, std::vector<S> c,
            std::vector<int> basis_hint, std::vector<char> needs_artificial)
        : m_(static_cast<int>(A.size())),
          n_(m_ ? static_cast<int>(A[0].size()) : static_cast<int>(c.size())),
          A_(std::move(A)),
          b_(std::move(b)),
          c_(std::move(c)),
          basis_(std::move(basis_hint)),
          needs_art_(std::move(needs_artificial)) {}

    CoreSolution<S> solve() {
        build_tableau();
        if (!phase1()) return CoreSolution<S>{LPStatus::infeasible, {}, {}, S(0), S(0)};
        const bool bounded = phase2();
        if (!bounded) return CoreSolution<S>{LPStatus::unbounded, {}, {}, S(0), S(0)};
        return extract();
    }

  private:
    using Ops = ScalarOps<S>;

    int m_, n_;
    std::vector<std::vector<S>> A_;
    std::vector<S> b_, c_;
    std::vector<int> basis_;
    std::vector<char> needs_art_;

    int ncols_ = 0;  // structural + artificial
    int nart_ = 0;
    std::vector<std::vector<S>> T_;  // m rows, ncols_ + 1 (rhs last)
    std::vector<S> d_;               // reduced-cost row, length ncols_
    S dval_{};                       // current objective value
    std::vector<S> phase_cost_;
    long iterations_ = 0;
    static constexpr long kIterCap = 1000000;

    void row_axpy(std::vector<S>& y, const S& alpha, const std::vector<S>& x) {
        if constexpr (std::is_same_v<S, double>) {
            kernels::table().axpy(alpha, x.data(), y.data(), y.size());
        } else {
            for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
        }
    }

    void row_scale(std::vector<S>& y, const S& alpha) {
        if constexpr (std::is_same_v<S, double>) {
            kernels::table().scale(alpha, y.data(), y.size());
        } else {
            for (auto& v : y) v *= alpha;
        }
    }

    void build_tableau() {
        nart_ = 0;
        for (char f : needs_art_) nart_ += f ? 1 : 0;
        ncols_ = n_ + nart_;
        T_.assign(m_, std::vector<S>(ncols_ + 1, S(0)));
        int art = n_;
        for (int i = 0; i < m_; ++i) {
            for (int j = 0; j < n_; ++j) T_[i][j] = A_[i][j];
            T_[i][ncols_] = b_[i];
            if (needs_art_[i]) {
                T_[i][art] = S(1);
                basis_[i] = art;
                ++art;
            }
        }
    }

    void rebuild_reduced_costs(const std::vector<S>& cost) {
        d_.assign(ncols_, S(0));
        dval_ = S(0);
        for (int j = 0; j < ncols_; ++j) d_[j] = cost[j];
        for (int i = 0; i < m_; ++i) {
            const S cb = cost[basis_[i]];
            if (cb == S(0)) continue;
            for (int j = 0; j < ncols_; ++j) d_[j] -= cb * T_[i][j];
            dval_ += cb * T_[i][ncols_];
        }
    }

    void pivot(int row, int col) {
        const S inv = S(1) / T_[row][col];
        row_scale(T_[row], inv);
        T_[row][col] = S(1);  // keep the unit entry exact
        for (int i = 0; i < m_; ++i) {
            if (i == row) continue;
            const S f = T_[i][col];
            if (f == S(0)) continue;
            row_axpy(T_[i], -f, T_[row]);
            T_[i][col] = S(0);
        }
        {
            const S f = d_[col];
            if (f != S(0)) {
                for (int j = 0; j <= ncols_; ++j) {
                    // objective row carries its value in a separate scalar
                    if (j < ncols_) d_[j] -= f * T_[row][j];
                }
                dval_ += f * T_[row][ncols_];
                d_[col] = S(0);
            }
        }
        basis_[row] = col;
    }

    // Bland: entering = lowest eligible column index; leaving = among minimum
    // ratios, the row whose basic variable has the lowest column index.
    // allow(j) filters candidate entering columns.
    template <class Allow>
    int run(const Allow& allow, bool* unbounded) {
        const S peps = Ops::pivot_eps();
        const S oeps = Ops::opt_eps();
        *unbounded = false;
        for (;;) {
            if (++iterations_ > kIterCap)
                throw NumericalFailure("simplex iteration cap exceeded");
            int enter = -1;
            for (int j = 0; j < ncols_; ++j) {
                if (!allow(j)) continue;
                if (d_[j] < -oeps) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return 0;
            int leave = -1;
            S best_ratio{};
            for (int i = 0; i < m_; ++i) {
                if (T_[i][enter] > peps) {
                    const S ratio = T_[i][ncols_] / T_[i][enter];
                    if (leave < 0 || ratio < best_ratio ||
                        (ratio == best_ratio && basis_[i] < basis_[leave])) {
                        leave = i;
                        best_ratio = ratio;
                    }
                }
            }
            if (leave < 0) {
                *unbounded = true;
                return 0;
            }
            pivot(leave, enter);
        }
    }

    bool phase1() {
        if (nart_ == 0) {
            // slack basis is already feasible (b >= 0)
            return true;
        }
        phase_cost_.assign(ncols_, S(0));
        for (int j = n_; j < ncols_; ++j) phase_cost_[j] = S(1);
        rebuild_reduced_costs(phase_cost_);
        bool unb = false;
        run([](int) { return true; }, &unb);
        // phase-1 objective is bounded below by 0, never unbounded
        S scale = S(1);
        for (int i = 0; i < m_; ++i)
            if (Ops::abs(b_[i]) > scale) scale = Ops::abs(b_[i]);
        if (dval_ > Ops::feas_eps() * scale) return false;
        // drive basic artificials out where a structural pivot exists
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            int col = -1;
            for (int j = 0; j < n_; ++j) {
                if (Ops::abs(T_[i][j]) > Ops::pivot_eps()) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) pivot(i, col);
            // else: redundant row; the artificial stays basic at value 0
        }
        return true;
    }

    bool phase2() {
        std::vector<S> cost(ncols_, S(0));
        for (int j = 0; j < n_; ++j) cost[j] = c_[j];
        rebuild_reduced_costs(cost);
        bool unb = false;
        const int nstruct = n_;
        run([nstruct](int j) { return j < nstruct; }, &unb);
        return !unb;
    }

    // Solve M z = rhs by Gaussian elimination with partial pivoting.
    static std::vector<S> dense_solve(std::vector<std::vector<S>> M, std::vector<S> rhs) {
        const int n = static_cast<int>(rhs.size());
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int r = col + 1; r < n; ++r)
                if (Ops::abs(M[r][col]) > Ops::abs(M[piv][col])) piv = r;
            if (M[piv][col] == S(0))
                throw NumericalFailure("singular basis during refactorization");
            std::swap(M[piv], M[col]);
            std::swap(rhs[piv], rhs[col]);
            const S inv = S(1) / M[col][col];
            for (int r = 0; r < n; ++r) {
                if (r == col) continue;
                const S f = M[r][col] * inv;
                if (f == S(0)) continue;
                for (int k2 = col; k2 < n; ++k2) M[r][k2] -= f * M[col][k2];
                rhs[r] -= f * rhs[col];
            }
        }
        std::vector<S> z(n);
        for (int i = 0; i < n; ++i) z[i] = rhs[i] / M[i][i];
        return z;
    }

    S column_entry(int row, int col) const {
        return (col < n_) ? A_[row][col]
                          : ((needs_art_index(col) == row) ? S(1) : S(0));
    }

    int needs_art_index(int col) const {
        // artificial columns were assigned in row order
        int art = n_;
        for (int i = 0; i < m_; ++i) {
            if (!needs_art_[i]) continue;
            if (art == col) return i;
            ++art;
        }
        return -1;
    }

    CoreSolution<S> extract() {
        CoreSolution<S> out;
        out.status = LPStatus::optimal;
        out.y.assign(n_, S(0));
        out.pi.assign(m_, S(0));
        if (m_ > 0) {
            std::vector<std::vector<S>> B(m_, std::vector<S>(m_, S(0)));
            std::vector<std::vector<S>> Bt(m_, std::vector<S>(m_, S(0)));
            std::vector<S> cb(m_, S(0));
            for (int i = 0; i < m_; ++i) {
                for (int r = 0; r < m_; ++r) {
                    const S v = column_entry(r, basis_[i]);
                    B[r][i] = v;
                    Bt[i][r] = v;
                }
                cb[i] = (basis_[i] < n_) ? c_[basis_[i]] : S(0);
            }
            const std::vector<S> xb = dense_solve(B, b_);
            out.pi = dense_solve(Bt, cb);
            for (int i = 0; i < m_; ++i)
                if (basis_[i] < n_) out.y[basis_[i]] = xb[i];
        }
        out.primal_obj = S(0);
        for (int j = 0; j < n_; ++j) out.primal_obj += c_[j] * out.y[j];
        out.dual_obj = S(0);
        for (int i = 0; i < m_; ++i) out.dual_obj += out.pi[i] * b_[i];
        verify(out);
        return out;
    }

    void verify(const CoreSolution<S>& sol) {
        if constexpr (Ops::exact) {
            for (int i = 0; i < m_; ++i) {
                S lhs(0);
                for (int j = 0; j < n_; ++j) lhs += A_[i][j] * sol.y[j];
                if (lhs != b_[i]) throw NumericalFailure("exact solve violates a row");
            }
            for (const S& v : sol.y)
                if (v < S(0)) throw NumericalFailure("exact solve violates a sign constraint");
            if (sol.primal_obj != sol.dual_obj)
                throw NumericalFailure("exact solve has a duality gap");
            return;
        } else {
            S scale = S(1);
            for (int i = 0; i < m_; ++i) scale = std::max(scale, Ops::abs(b_[i]));
            for (int i = 0; i < m_; ++i) {
                S lhs(0);
                for (int j = 0; j < n_; ++j) lhs += A_[i][j] * sol.y[j];
                if (Ops::abs(lhs - b_[i]) > 1e-7 * scale)
                    throw NumericalFailure("refactored solution violates a row beyond tolerance");
            }
            for (const S& v : sol.y)
                if (v < -1e-7 * scale)
                    throw NumericalFailure("refactored solution violates a sign constraint");
            // reduced-cost optimality with the fresh duals
            for (int j = 0; j < n_; ++j) {
                S rc = c_[j];
                for (int i = 0; i < m_; ++i) rc -= sol.pi[i] * A_[i][j];
                if (rc < -1e-6 * scale)
                    throw NumericalFailure("refactored solution fails the optimality check");
            }
        }
    }
};

}  // namespace conelip::detail
