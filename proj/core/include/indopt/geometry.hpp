#pragma once

#include "indopt/defs.hpp"
#include "indopt/model.hpp"

#include <string>
#include <vector>

namespace indopt {

/**
 * Likelihood-space coordinates of a signal (or outcome) relative to a
 * reference effort e*: component i is 1 - q(s|e_i)/q(s|e*). The component at
 * the reference index is always 0, and every component is <= 1.
 */
struct LikelihoodVector {
    Vec l;
    int reference = 0;
};

/**
 * Finite generator set for the convex hull of likelihood vectors: one
 * generator per outcome (hull of the technology) or per signal (hull of an
 * induced signal distribution). The origin always lies in the hull; for the
 * technology hull the weights are f(x|e*) themselves.
 */
struct LikelihoodHull {
    std::vector<std::string> labels;
    Mat generators; // one row per generator, |E| columns
    int reference = 0;

    int dim() const { return generators.empty() ? 0 : static_cast<int>(generators[0].size()); }
    int size() const { return static_cast<int>(generators.size()); }
};

/** Hull generated by the outcomes of the raw technology. */
LikelihoodHull hull_of_f(const ModelInstance& m, int reference);

/**
 * Hull generated by the signals of an induced distribution. Signal columns
 * that are identically zero carry no contracting content and are dropped;
 * a signal with zero mass under the reference effort but positive mass
 * elsewhere is rejected (cannot happen under a full-support technology).
 */
LikelihoodHull hull_of_p(const ModelInstance& m, const InformationStructure& pi, int reference);

struct InHullResult {
    bool inside = false;
    Vec weights;       // convex weights over generators when inside
    Vec sep_normal;    // unit-norm separating functional when outside:
    double sep_offset = 0.0; // <normal, z> + offset <= 0 on generators, > 0 at the point
};

/** Convex-hull membership via LP feasibility, tolerance 1e-9. */
InHullResult in_hull(const Vec& point, const LikelihoodHull& hull);

struct InteriorityReport {
    bool full_support = false;
    bool interior = false; // relative to the affine span of the generators
    int dim = 0;           // dimension of that span
};

/** Checks that the origin is interior to the technology hull relative to its span. */
InteriorityReport origin_interiority(const ModelInstance& m, int reference);

/**
 * Feasibility of implementing effort i with a one-event wage at likelihood
 * point l: every alternative effort j imposes a bound on the wage level
 * w >= (c_i - c_j)/(l_j - l_i) when l_j > l_i, w <= the same ratio when
 * l_j < l_i, and infeasibility outright when l_j = l_i with c_j < c_i.
 * The wage is also bounded below by 0 (limited liability). Membership holds
 * when the lower envelope does not exceed the upper envelope.
 */
bool cone_membership(const Vec& l, int i, const Vec& costs);

/**
 * Expected-wage cost of implementing effort i at likelihood point l:
 * (1 - l_i) times the smallest feasible wage level, +infinity outside the
 * feasible cone. The smallest feasible level is the larger of 0 and the
 * binding lower bound, so the cost is never negative.
 */
double geometric_cost(const Vec& l, int i, const Vec& costs);

struct HullMinResult {
    bool feasible = false;
    double value = kInf;
    Vec minimizer; // point of the hull attaining the value (empty when infeasible)
};

/**
 * Minimizes geometric_cost over the hull. For each candidate binding effort
 * the linear-fractional program is solved exactly via the Charnes-Cooper
 * substitution; the candidate LPs' cross-constraints encode both the
 * dominance of the binding bound and every feasibility bound, so the best
 * candidate value is the exact minimum. Infeasible when the hull misses the
 * feasible cone entirely.
 */
HullMinResult min_cost_over_hull(const LikelihoodHull& hull, int i, const Vec& costs);

} // namespace indopt
