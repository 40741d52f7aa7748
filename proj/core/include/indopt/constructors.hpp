#pragma once

#include "indopt/defs.hpp"
#include "indopt/geometry.hpp"
#include "indopt/model.hpp"
#include "indopt/principal.hpp"

#include <string>
#include <vector>

namespace indopt {

/**
 * Synthesizes an information structure whose induced likelihood hull has
 * exactly the given generator set C (one signal per point), relative to the
 * reference effort. Preconditions: every point of C lies in the technology
 * hull, the origin lies in the hull of C, and each point's reference
 * component is zero.
 *
 * Two-phase solve: first pick convex weights tau decomposing the origin over
 * C (maximizing the smallest weight), then solve the linear system for pi
 * with tau fixed. When that phase is infeasible (a wrong tau from a
 * non-unique decomposition), an alternating scheme re-fits tau and the
 * per-signal posteriors until the coupling residual vanishes, capped at 100
 * rounds. Throws SynthesisError if no decomposition is found.
 */
InformationStructure structure_from_hull(const ModelInstance& m, int reference, const Mat& points,
                                         std::vector<std::string> labels = {});

/**
 * Collapses any structure implementing e_star to a two-signal one with the
 * same wage cost and the same principal choice: the high signal aggregates
 * the paid signals in proportion to their wage level. Requires e_star to be
 * the principal's choice under pi; an all-zero wage schedule collapses to
 * the uninformative structure. The preserved cost and choice are verified
 * in-operation (VerificationError on failure, never expected).
 */
InformationStructure reduce_to_binary(const ModelInstance& m, const InformationStructure& pi,
                                      int e_star);

/** argmax_e E[g|e] - c(e), ties to the lowest index. */
int first_best_effort(const ModelInstance& m);

/**
 * The likelihood point making the agent's payoff from every effort equal
 * when the wage absorbs the full surplus step: component i is
 * (c(e*) - c(e_i)) / (E[g|e*] - E[g|e1]). Throws DegenerateSurplusError when
 * the surplus step is not positive.
 */
LikelihoodVector compute_l_star(const ModelInstance& m, int e_star);

struct ExtractionCertificate {
    int e_star = -1;
    Vec l_star;
    double alpha = 0.0; // scale of the low point -alpha * l_star
    InformationStructure structure;
    SubgameOutcome outcome; // principal's verified response to the structure
    double agent_payoff = 0.0;
    double principal_payoff = 0.0;
};

struct ExtractionReport {
    bool extractable = false;
    ExtractionCertificate certificate; // meaningful when extractable
    std::string reason;                // meaningful when not
    bool has_witness = false;          // separating certificate below
    Vec sep_normal;
    double sep_offset = 0.0;
};

/**
 * Attempts the full-surplus-extraction construction: at the first-best
 * effort e*, if the indifference point l* lies in the technology hull, a
 * two-signal structure on the segment [l*, -alpha l*] leaves the principal
 * exactly at the outside option E[g|e1] while the agent keeps the remaining
 * surplus. Reports not-extractable with the separating witness when l* is
 * outside the hull; the construction is silent about extraction by other
 * means. A first-best of e1 is trivially extractable (uninformative
 * structure, zero agent payoff); a zero-cost e* != e1 defeats the wage
 * program (every structure implements it at zero wage) and is reported
 * not-extractable by this construction.
 */
ExtractionReport full_extraction(const ModelInstance& m);

struct ProbeResult {
    ModelInstance instance;
    ExtractionReport report;
    int first_best = 0;
    bool verdict = false; // nontrivial extraction: first-best beyond e1 and achieved
};

/**
 * Builds the near-diagonal technology (effort i yields its own value with
 * probability 1 - (m-1)eps) and probes it for nontrivial extraction. The
 * verdict is true when the first-best effort differs from the zero-cost
 * effort AND the construction succeeds; as eps grows the hull shrinks and
 * the verdict eventually turns false.
 */
ProbeResult almost_perfect_probe(const Vec& effort_values, const Vec& costs, double eps);

struct EpsilonBracket {
    double lo = 0.0; // verdict true here
    double hi = 0.0; // verdict false here
};

/**
 * Brackets the largest eps with a true probe verdict to absolute width 1e-4
 * by bisection, assuming the verdict is monotone in eps on this family.
 */
EpsilonBracket threshold_epsilon(const Vec& effort_values, const Vec& costs);

} // namespace indopt
