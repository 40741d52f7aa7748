#pragma once

namespace indopt {

/**
 * Process-wide numerical thresholds, read whenever a solver constructs its
 * default options. Intended to be set once at program startup (reads are not
 * synchronized against concurrent writes); the defaults match the documented
 * behavior of every solver in this library.
 */
struct Tolerances {
    double lp = 1e-9;   // simplex feasibility / reduced-cost threshold
    double hull = 1e-9; // hull-membership and cone-feasibility threshold
};

Tolerances& tolerances();

} // namespace indopt
