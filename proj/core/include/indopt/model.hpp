#pragma once

#include "indopt/defs.hpp"

#include <string>
#include <vector>

namespace indopt {

struct Outcome {
    std::string label;
    double g = 0.0; // principal's payoff when this outcome realizes
};

struct Effort {
    std::string label;
    double c = 0.0; // agent's cost of this effort
};

/**
 * Finite production environment: a set of outcomes with principal payoffs, a
 * set of efforts with agent costs, and a row-stochastic technology f where
 * f[i][j] is the probability of outcome j under effort i.
 *
 * Valid instances have strictly positive f (full support), rows summing to
 * one, nonnegative costs with cost(0) == 0, and at least two outcomes and two
 * efforts. See validate_model.
 */
struct ModelInstance {
    std::vector<Outcome> outcomes;
    std::vector<Effort> efforts;
    Mat f; // |E| x |X|

    int num_outcomes() const { return static_cast<int>(outcomes.size()); }
    int num_efforts() const { return static_cast<int>(efforts.size()); }
    double cost(int e) const { return efforts[static_cast<size_t>(e)].c; }
    double payoff(int x) const { return outcomes[static_cast<size_t>(x)].g; }
};

/**
 * A garbling of outcomes into signals: pi[x][s] is the probability that
 * outcome x is reported as signal s. Rows are points in the signal simplex.
 */
struct InformationStructure {
    std::vector<std::string> signals;
    Mat pi; // |X| x |S|

    int num_signals() const { return static_cast<int>(signals.size()); }
};

/** Signal distribution induced by a structure: p[e][s]. */
struct SignalDistribution {
    Mat p;
};

struct ValidationReport {
    std::vector<std::string> issues;

    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

/** Checks the ModelInstance invariants at tolerance 1e-12 and reports every violation. */
ValidationReport validate_model(const ModelInstance& m);

/** Checks that pi is dimensioned for m, row-stochastic, and entrywise in [0, 1]. */
ValidationReport validate_structure(const ModelInstance& m, const InformationStructure& pi);

/** p(s|e) = sum_x f(x|e) pi(s|x). Throws std::invalid_argument on dimension mismatch. */
SignalDistribution induce_signal_distribution(const ModelInstance& m, const InformationStructure& pi);

/** E[g|e] under effort index e. */
double expected_output(const ModelInstance& m, int effort);

/** One signal per outcome, pi = identity. */
InformationStructure full_revelation(const ModelInstance& m);

/** A single signal carrying no information. */
InformationStructure uninformative(const ModelInstance& m);

/** Binary structure with P(high signal | outcome x) = q[x]. */
InformationStructure binary_structure(const ModelInstance& m, const Vec& q);

/**
 * Two-outcome, two-effort benchmark: low effort succeeds with probability p
 * at zero cost, high effort at cost c succeeds with probability 1 - eta.
 * eta > 0 keeps the technology full-support while approximating a perfectly
 * informative high effort.
 */
ModelInstance simple_example(double p, double c, double eta = 1e-7);

/**
 * Almost-perfect technology on outcome set equal to the effort set: effort i
 * produces its own outcome with probability 1 - (m-1)*eps and every other
 * outcome with probability eps. Payoff g equals the outcome value.
 */
ModelInstance almost_perfect_technology(const Vec& effort_values, const Vec& costs, double eps);

} // namespace indopt
