#pragma once

#include "indopt/defs.hpp"
#include "indopt/model.hpp"
#include "indopt/principal.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace indopt {

struct OptimizeConfig {
    std::uint64_t seed = 20250815;
    int restarts = 64;       // raised automatically to cover the structured seeds
    int sweeps = 200;        // coordinate sweeps per restart
    long long budget = 0;    // max subgame evaluations, 0 = uncapped; split evenly over restarts
    double penalty = 1e3;    // weight on the violated choice margin while climbing
    double tie_tol = 1e-9;
    int threads = 0;         // 0 = hardware concurrency
};

struct AgentSolution {
    InformationStructure structure;
    SubgameOutcome outcome;
    double agent_value = 0.0;
    long long evaluations = 0;
    int restarts_used = 0;
    // Best feasible agent value seen per (principal-chosen) effort.
    std::vector<std::pair<int, double>> per_effort_best;
};

/**
 * Searches binary structures pi(H|x) = q_x for the agent-optimal implementable
 * outcome. Every evaluation solves the full subgame; a candidate counts for
 * the effort the principal actually chooses, so the returned solution is
 * feasible by construction. Restarts are seeded with the uninformative
 * structure, the binary reduction of full revelation, the extraction
 * structure when it exists, and threshold step patterns; remaining restarts
 * draw q uniformly from a per-restart deterministic generator. Each restart
 * climbs one target effort (efforts with a surplus bound below the incumbent
 * are skipped) by penalized coordinate search. Deterministic for a fixed
 * config, including under parallel restarts.
 */
AgentSolution optimize(const ModelInstance& m, const OptimizeConfig& cfg = {});

} // namespace indopt
