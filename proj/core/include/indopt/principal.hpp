#pragma once

#include "indopt/defs.hpp"
#include "indopt/model.hpp"

#include <vector>

namespace indopt {

/** Outcome of the per-effort wage-minimization program. */
struct MinWageResult {
    bool feasible = false;
    double expected_wage = kInf; // minimized E[w | target effort]
    Vec wage;                    // one entry per signal; empty when infeasible
};

/**
 * Cheapest nonnegative wage schedule w(s) that makes `target` incentive
 * compatible against every alternative effort:
 *
 *   min  sum_s p(s|target) w(s)
 *   s.t. sum_s [p(s|target) - p(s|e)] w(s) >= c(target) - c(e)  for all e
 *        w >= 0
 *
 * Infeasible when no such schedule exists (the target cannot be implemented
 * with this signal distribution).
 */
MinWageResult min_wage(const ModelInstance& m, const SignalDistribution& d, int target);

struct EffortAudit {
    int effort = -1;
    bool implementable = false;
    double wage_cost = kInf;       // W(e)
    double principal_payoff = -kInf; // E[g|e] - W(e)
    double agent_payoff = 0.0;     // W(e) - c(e)
};

/** Principal's best response to a signal distribution. */
struct SubgameOutcome {
    int effort = -1;              // chosen target
    double principal_payoff = 0.0;
    double agent_payoff = 0.0;
    Vec wage;                     // schedule implementing the chosen effort
    std::vector<EffortAudit> per_effort;
};

/**
 * Solves the wage program for every effort and picks the principal-optimal
 * target. Ties within 1e-9 of the best principal payoff break toward the
 * higher agent payoff, then toward the lower effort index.
 */
SubgameOutcome best_effort(const ModelInstance& m, const SignalDistribution& d);

/** Convenience: induce the distribution from pi and solve the subgame. */
SubgameOutcome best_effort(const ModelInstance& m, const InformationStructure& pi);

} // namespace indopt
