#pragma once

#include "indopt/agent.hpp"
#include "indopt/constructors.hpp"
#include "indopt/continuous.hpp"
#include "indopt/model.hpp"
#include "indopt/principal.hpp"

#include <cstdint>
#include <string>

namespace indopt {

struct OracleReport {
    double delta = 0.0;
    std::uint64_t evaluations = 0;
    double best_value = 0.0;
    Vec best_q; // per-outcome high-signal mass of the argmax
    InformationStructure best_structure;
    SubgameOutcome best_outcome;
};

/**
 * Exhaustive search over binary structures on the grid q in {0, delta, ...,
 * 1}^|X|, solving the full wage/effort subgame at every point. No pruning:
 * the reported best is the exact grid maximum. Throws BudgetExceeded when the
 * grid has more than cap points. threads = 0 uses the hardware count; the
 * reduction is deterministic (max value, then lowest enumeration index).
 */
OracleReport grid_search_binary(const ModelInstance& m, double delta, std::uint64_t cap = 10'000'000,
                                int threads = 0);

/**
 * Midpoint-cell discretization of a continuous model: outcomes at cell
 * midpoints carry g there, f rows are cdf masses per cell (floored at 1e-12
 * and renormalized), efforts at grid midpoints carry costs rebased to the
 * lowest grid effort.
 */
ModelInstance discretize_continuous(const ContinuousModel& cm, int nx, int ne);

/** A solver output in the shape the verifier checks. */
struct Claim {
    InformationStructure structure;
    int effort = -1;
    Vec wage;
    double value = 0.0; // claimed agent payoff
};

Claim claim_of(const AgentSolution& sol);
Claim claim_of(const ExtractionCertificate& cert);

struct VerifyReport {
    bool verified = false;
    std::string reason;
    SubgameOutcome resolved; // exact re-solve on the claimed structure
    double grid_best = 0.0;
    double bound = 0.0; // grid resolution slack
    Vec counterexample_q;
};

/**
 * Re-solves the subgame on the claimed structure exactly, checks the claimed
 * wage actually makes the claimed effort the agent's best reply, and compares
 * the claimed value against grid_search_binary(delta) up to the resolution
 * slack. Refutations carry the offending grid point.
 */
VerifyReport verify_solution(const ModelInstance& m, const Claim& claimed, double delta);

} // namespace indopt
