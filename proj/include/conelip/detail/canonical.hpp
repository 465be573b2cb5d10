#pragma once
#include <cmath>
#include <vector>

#include "conelip/detail/simplex.hpp"
#include "conelip/lp.hpp"

// LPProblem -> equality standard form (min c'y, Ay = b, y >= 0) and back.
// Bounded variables are shifted/flipped, free variables split, finite upper
// bounds become explicit rows. Column and row order is fixed by construction
// so Bland's rule gives a deterministic pivot sequence.

namespace conelip::detail {

template <class S>
struct GenericSolution {
    LPStatus status = LPStatus::optimal;
    S objective{};
    std::vector<S> primal;
    std::vector<S> dual;      // per original row, for the problem as given
    S primal_canon{};
    S dual_canon{};
};

template <class S>
GenericSolution<S> solve_generic(const LPProblem& p) {
    using Ops = ScalarOps<S>;
    const int nv = p.num_vars();
    if (static_cast<int>(p.lower.size()) != nv || static_cast<int>(p.upper.size()) != nv)
        throw ValidationError("bounds arrays must match the variable count");
    for (const auto& row : p.rows) {
        if (static_cast<int>(row.coeffs.size()) != nv)
            throw ValidationError("constraint row length does not match variable count");
        if (!std::isfinite(row.rhs)) throw ValidationError("constraint rhs must be finite");
        for (double a : row.coeffs)
            if (!std::isfinite(a)) throw ValidationError("constraint coefficient must be finite");
    }
    for (double v : p.objective)
        if (!std::isfinite(v)) throw ValidationError("objective coefficient must be finite");

    const bool maximize = (p.sense == Sense::maximize);

    // variable mapping
    enum { SHIFTED, FLIPPED, SPLIT };
    struct VMap {
        int kind;
        int col, col2;
        double shift;  // l for SHIFTED, u for FLIPPED
    };
    std::vector<VMap> vmap(nv);
    int ncols = 0;
    struct BoundRow {
        int col;
        double cap;
    };
    std::vector<BoundRow> bound_rows;
    for (int j = 0; j < nv; ++j) {
        const double l = p.lower[j], u = p.upper[j];
        if (l == kInf || u == -kInf || l > u)
            throw ValidationError("variable " + std::to_string(j) + " has empty bounds");
        if (l > -kInf) {
            vmap[j] = {SHIFTED, ncols++, -1, l};
            if (u < kInf) bound_rows.push_back({vmap[j].col, u - l});
        } else if (u < kInf) {
            vmap[j] = {FLIPPED, ncols++, -1, u};
        } else {
            vmap[j] = {SPLIT, ncols, ncols + 1, 0.0};
            ncols += 2;
        }
    }

    const int n_orig_rows = static_cast<int>(p.rows.size());
    const int m = n_orig_rows + static_cast<int>(bound_rows.size());
    const int nslack_reserve = m;  // at most one slack/surplus per row
    std::vector<std::vector<S>> A(m, std::vector<S>(ncols + nslack_reserve, S(0)));
    std::vector<S> b(m, S(0));
    std::vector<Rel> rel(m, Rel::le);
    std::vector<S> row_sign(m, S(1));

    auto fill_structural = [&](int r, int j, const S& a) {
        const VMap& vm = vmap[j];
        if (vm.kind == SHIFTED) {
            A[r][vm.col] += a;
            b[r] -= a * Ops::from_double(vm.shift);
        } else if (vm.kind == FLIPPED) {
            A[r][vm.col] -= a;
            b[r] -= a * Ops::from_double(vm.shift);
        } else {
            A[r][vm.col] += a;
            A[r][vm.col2] -= a;
        }
    };

    for (int r = 0; r < n_orig_rows; ++r) {
        b[r] = Ops::from_double(p.rows[r].rhs);
        rel[r] = p.rows[r].rel;
        for (int j = 0; j < nv; ++j) {
            const double a = p.rows[r].coeffs[j];
            if (a != 0.0) fill_structural(r, j, Ops::from_double(a));
        }
    }
    for (std::size_t k = 0; k < bound_rows.size(); ++k) {
        const int r = n_orig_rows + static_cast<int>(k);
        A[r][bound_rows[k].col] = S(1);
        b[r] = Ops::from_double(bound_rows[k].cap);
        rel[r] = Rel::le;
    }

    // make b nonnegative
    for (int r = 0; r < m; ++r) {
        if (b[r] < S(0)) {
            for (auto& v : A[r]) v = -v;
            b[r] = -b[r];
            rel[r] = (rel[r] == Rel::le) ? Rel::ge : (rel[r] == Rel::ge ? Rel::le : Rel::eq);
            row_sign[r] = S(-1);
        }
    }

    // slack / surplus columns, initial basis, artificial markers
    std::vector<int> basis_hint(m, -1);
    std::vector<char> needs_art(m, 0);
    int nslack = 0;
    for (int r = 0; r < m; ++r) {
        if (rel[r] == Rel::le) {
            A[r][ncols + nslack] = S(1);
            basis_hint[r] = ncols + nslack;
            ++nslack;
        } else if (rel[r] == Rel::ge) {
            A[r][ncols + nslack] = S(-1);
            ++nslack;
            needs_art[r] = 1;
        } else {
            needs_art[r] = 1;
        }
    }
    const int ntotal = ncols + nslack;
    for (int r = 0; r < m; ++r) A[r].resize(ntotal);

    // canonical objective (minimization)
    std::vector<S> c(ntotal, S(0));
    for (int j = 0; j < nv; ++j) {
        S cj = Ops::from_double(p.objective[j]);
        if (maximize) cj = -cj;
        const VMap& vm = vmap[j];
        if (vm.kind == SHIFTED) {
            c[vm.col] += cj;
        } else if (vm.kind == FLIPPED) {
            c[vm.col] -= cj;
        } else {
            c[vm.col] += cj;
            c[vm.col2] -= cj;
        }
    }

    Simplex<S> solver(std::move(A), b, c, std::move(basis_hint), std::move(needs_art));
    CoreSolution<S> core = solver.solve();

    GenericSolution<S> out;
    out.status = core.status;
    if (core.status != LPStatus::optimal) return out;

    out.primal.assign(nv, S(0));
    for (int j = 0; j < nv; ++j) {
        const VMap& vm = vmap[j];
        if (vm.kind == SHIFTED)
            out.primal[j] = core.y[vm.col] + Ops::from_double(vm.shift);
        else if (vm.kind == FLIPPED)
            out.primal[j] = Ops::from_double(vm.shift) - core.y[vm.col];
        else
            out.primal[j] = core.y[vm.col] - core.y[vm.col2];
    }
    out.objective = S(0);
    for (int j = 0; j < nv; ++j) out.objective += Ops::from_double(p.objective[j]) * out.primal[j];

    out.dual.assign(n_orig_rows, S(0));
    for (int r = 0; r < n_orig_rows; ++r) {
        S y = core.pi[r] * row_sign[r];
        if (maximize) y = -y;
        out.dual[r] = y;
    }
    out.primal_canon = core.primal_obj;
    out.dual_canon = core.dual_obj;
    return out;
}

}  // namespace conelip::detail
