#pragma once

#include "indopt/defs.hpp"

#include <string>
#include <vector>

namespace indopt::lp {

enum class Rel { Le, Ge, Eq };
enum class Status { Optimal, Infeasible, Unbounded };

struct Constraint {
    Vec a;
    Rel rel = Rel::Le;
    double b = 0.0;
};

/** Linear program in standard sign form: minimize c.x subject to rows, x >= 0. */
struct Problem {
    int n = 0;
    Vec c;
    std::vector<Constraint> rows;

    void add(Vec a, Rel rel, double b) { rows.push_back({std::move(a), rel, b}); }
};

/**
 * Result of a solve.
 *
 * On Optimal, x holds a basic optimal point and y the row duals: y[i] >= 0 for
 * Ge rows, y[i] <= 0 for Le rows, free for Eq rows, with value == y.b at
 * optimum (strong duality).
 *
 * On Infeasible, y holds a Farkas certificate in the same sign convention:
 * sum_i y[i]*a_i <= 0 componentwise while sum_i y[i]*b_i > 0, so no x >= 0 can
 * satisfy all rows.
 */
struct Solution {
    Status status = Status::Infeasible;
    double value = 0.0;
    Vec x;
    Vec y;
};

/** Default feasibility threshold; tracks indopt::tolerances().lp. */
double default_tol();

struct Options {
    double tol = default_tol(); // reduced-cost and feasibility threshold (rows are equilibrated)
    double pivot_tol = 1e-11;
    int max_pivots = 50000;
};

Solution solve(const Problem& p, const Options& opt = {});

} // namespace indopt::lp
