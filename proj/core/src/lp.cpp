#include "indopt/lp.hpp"

#include "indopt/config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace indopt::lp {

double default_tol() { return tolerances().lp; }

namespace {

// Dense two-phase tableau simplex with Bland's rule. Sized for the small
// programs produced by this library (tens of rows and columns), where the
// O(m*n) pricing pass per pivot is irrelevant next to robustness.
struct Tableau {
    int m = 0;            // rows
    int ncols = 0;        // structural + slack/surplus + artificial
    int nstruct = 0;
    Mat t;                // m x (ncols + 1); last column is rhs
    std::vector<int> basis;
    std::vector<int> unit_col;     // per row: column that started as +e_i
    std::vector<bool> artificial;  // per column
    std::vector<bool> banned;      // per column: may never (re-)enter
    Vec row_scale;                 // original row i was multiplied by row_scale[i]
    std::vector<bool> flipped;     // original row i was negated before scaling
    Options opt;

    // Reduced cost row for cost vector c over all tableau columns.
    Vec reduced(const Vec& cost) const {
        Vec r = cost;
        for (int i = 0; i < m; ++i) {
            const double cb = cost[basis[i]];
            if (cb == 0.0) continue;
            for (int j = 0; j < ncols; ++j) r[j] -= cb * t[i][j];
        }
        return r;
    }

    double objective(const Vec& cost) const {
        double v = 0.0;
        for (int i = 0; i < m; ++i) v += cost[basis[i]] * t[i][ncols];
        return v;
    }

    void pivot(int row, int col) {
        const double piv = t[row][col];
        for (int j = 0; j <= ncols; ++j) t[row][j] /= piv;
        t[row][col] = 1.0;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            const double factor = t[i][col];
            if (factor == 0.0) continue;
            for (int j = 0; j <= ncols; ++j) t[i][j] -= factor * t[row][j];
            t[i][col] = 0.0;
        }
        basis[row] = col;
    }

    // Returns true on optimal, false on unbounded.
    bool run(const Vec& cost) {
        for (int iter = 0; iter < opt.max_pivots; ++iter) {
            const Vec r = reduced(cost);
            int enter = -1;
            for (int j = 0; j < ncols; ++j) {
                if (banned[j]) continue;
                if (r[j] < -opt.tol) { enter = j; break; }  // Bland: lowest index
            }
            if (enter < 0) return true;
            int leave = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < m; ++i) {
                if (t[i][enter] <= opt.pivot_tol) continue;
                const double ratio = t[i][ncols] / t[i][enter];
                if (leave < 0 || ratio < best_ratio - 1e-15 ||
                    (ratio <= best_ratio + 1e-15 && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return false;
            const int old = basis[leave];
            pivot(leave, enter);
            if (artificial[old]) banned[old] = true;
        }
        throw std::runtime_error("lp: pivot limit exceeded");
    }

    // Row duals for cost vector `cost`, mapped back to the original row
    // orientation and scale.
    Vec duals(const Vec& cost) const {
        Vec y(m, 0.0);
        for (int i = 0; i < m; ++i) {
            double v = 0.0;
            for (int k = 0; k < m; ++k) v += cost[basis[k]] * t[k][unit_col[i]];
            if (flipped[i]) v = -v;
            y[i] = v * row_scale[i];
        }
        return y;
    }
};

} // namespace

Solution solve(const Problem& p, const Options& opt) {
    const int m = static_cast<int>(p.rows.size());
    const int n = p.n;
    for (const auto& row : p.rows)
        if (static_cast<int>(row.a.size()) != n) throw std::invalid_argument("lp: row width mismatch");
    if (static_cast<int>(p.c.size()) != n) throw std::invalid_argument("lp: cost width mismatch");

    Tableau tb;
    tb.opt = opt;
    tb.m = m;
    tb.nstruct = n;
    tb.row_scale.assign(m, 1.0);
    tb.flipped.assign(m, false);

    // Equilibrate and orient rows so every rhs is nonnegative.
    std::vector<Constraint> rows = p.rows;
    for (int i = 0; i < m; ++i) {
        double mag = std::abs(rows[i].b);
        for (double v : rows[i].a) mag = std::max(mag, std::abs(v));
        if (mag > 0.0) {
            tb.row_scale[i] = 1.0 / mag;
            for (double& v : rows[i].a) v *= tb.row_scale[i];
            rows[i].b *= tb.row_scale[i];
        }
        if (rows[i].b < 0.0) {
            tb.flipped[i] = true;
            rows[i].b = -rows[i].b;
            for (double& v : rows[i].a) v = -v;
            if (rows[i].rel == Rel::Le) rows[i].rel = Rel::Ge;
            else if (rows[i].rel == Rel::Ge) rows[i].rel = Rel::Le;
        }
    }

    int extra = 0;
    for (const auto& row : rows) extra += (row.rel == Rel::Eq) ? 1 : (row.rel == Rel::Ge ? 2 : 1);
    tb.ncols = n + extra;
    tb.t.assign(m, Vec(tb.ncols + 1, 0.0));
    tb.basis.assign(m, -1);
    tb.unit_col.assign(m, -1);
    tb.artificial.assign(tb.ncols, false);
    tb.banned.assign(tb.ncols, false);

    int col = n;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) tb.t[i][j] = rows[i].a[j];
        tb.t[i][tb.ncols] = rows[i].b;
        switch (rows[i].rel) {
        case Rel::Le:
            tb.t[i][col] = 1.0;
            tb.unit_col[i] = col;
            tb.basis[i] = col;
            ++col;
            break;
        case Rel::Ge:
            tb.t[i][col] = -1.0;
            ++col;
            tb.t[i][col] = 1.0;
            tb.artificial[col] = true;
            tb.unit_col[i] = col;
            tb.basis[i] = col;
            ++col;
            break;
        case Rel::Eq:
            tb.t[i][col] = 1.0;
            tb.artificial[col] = true;
            tb.unit_col[i] = col;
            tb.basis[i] = col;
            ++col;
            break;
        }
    }

    Solution sol;

    bool need_phase1 = false;
    for (int j = 0; j < tb.ncols; ++j) need_phase1 = need_phase1 || tb.artificial[j];
    Vec phase1_cost(tb.ncols, 0.0);
    for (int j = 0; j < tb.ncols; ++j)
        if (tb.artificial[j]) phase1_cost[j] = 1.0;

    if (need_phase1) {
        if (!tb.run(phase1_cost)) throw std::runtime_error("lp: phase one unbounded");
        if (tb.objective(phase1_cost) > opt.tol) {
            sol.status = Status::Infeasible;
            sol.y = tb.duals(phase1_cost);
            return sol;
        }
        // Drive surviving artificials out of the basis where possible.
        for (int i = 0; i < m; ++i) {
            if (!tb.artificial[tb.basis[i]]) continue;
            int target = -1;
            for (int j = 0; j < tb.ncols && target < 0; ++j)
                if (!tb.artificial[j] && !tb.banned[j] && std::abs(tb.t[i][j]) > opt.pivot_tol) target = j;
            if (target >= 0) {
                const int old = tb.basis[i];
                tb.pivot(i, target);
                tb.banned[old] = true;
            }
        }
        for (int j = 0; j < tb.ncols; ++j)
            if (tb.artificial[j] && !tb.banned[j]) {
                bool basic = false;
                for (int i = 0; i < m; ++i) basic = basic || (tb.basis[i] == j);
                if (!basic) tb.banned[j] = true;
            }
    }

    Vec cost(tb.ncols, 0.0);
    for (int j = 0; j < n; ++j) cost[j] = p.c[j];
    if (!tb.run(cost)) {
        sol.status = Status::Unbounded;
        return sol;
    }

    sol.status = Status::Optimal;
    sol.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (tb.basis[i] < n) sol.x[tb.basis[i]] = tb.t[i][tb.ncols];
    sol.value = 0.0;
    for (int j = 0; j < n; ++j) sol.value += p.c[j] * sol.x[j];
    sol.y = tb.duals(cost);
    return sol;
}

} // namespace indopt::lp
