// Acceptance harness: one self-contained check per release criterion.
// Each criterion prints a single PASS/FAIL line (with timing); the process
// exit code is the number of failed criteria. Tolerances are pinned here.

#include "indopt/agent.hpp"
#include "indopt/constructors.hpp"
#include "indopt/continuous.hpp"
#include "indopt/geometry.hpp"
#include "indopt/model.hpp"
#include "indopt/oracle.hpp"
#include "indopt/principal.hpp"

#include "../support/fixtures.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace indopt;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::function<void(std::ostringstream&)> run; // throws or appends "FAIL..." lines
};

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
    if (!cond) throw CheckFailure(what);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// ---------------------------------------------------------------- criterion 1
void c1_hull_generators(std::ostringstream&) {
    const ModelInstance m = fixtures::example1();
    const auto t0 = std::chrono::steady_clock::now();
    const LikelihoodHull h = hull_of_f(m, 2);
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    require(h.size() == 3, "expected three generators");
    const double want[3][2] = {{-2.5, 0.5}, {-7.0 / 3.0, -7.0 / 3.0}, {0.8, 0.4}};
    for (int x = 0; x < 3; ++x) {
        require(std::abs(h.generators[x][0] - want[x][0]) <= 1e-9,
                "generator " + std::to_string(x) + " first component off: " + fmt(h.generators[x][0]));
        require(std::abs(h.generators[x][1] - want[x][1]) <= 1e-9,
                "generator " + std::to_string(x) + " second component off: " + fmt(h.generators[x][1]));
        require(std::abs(h.generators[x][2]) <= 1e-12, "reference component must vanish");
    }
    require(ms < 1.0, "hull construction took " + fmt(ms) + " ms (budget 1 ms)");
}

// ---------------------------------------------------------------- criterion 2
void c2_full_revelation(std::ostringstream&) {
    const ModelInstance m = fixtures::example1();
    const SubgameOutcome out = best_effort(m, full_revelation(m));
    require(out.effort == 1, "expected the middle effort, got " + std::to_string(out.effort));
    const double w = out.per_effort[1].wage_cost;
    require(std::abs(w - 0.15) <= 1e-6, "wage cost " + fmt(w) + " != 0.15");
    require(std::abs(out.principal_payoff - 1.25) <= 1e-6,
            "principal payoff " + fmt(out.principal_payoff) + " != 1.25");
}

// ---------------------------------------------------------------- criterion 3
void c3_extraction(std::ostringstream&) {
    const ModelInstance m = fixtures::example1();
    const ExtractionReport r = full_extraction(m);
    require(r.extractable, "construction reported not extractable");
    require(std::abs(r.certificate.l_star[0] - 6.0 / 17.0) <= 1e-9, "l* first component off");
    require(std::abs(r.certificate.l_star[1] - 4.0 / 17.0) <= 1e-9, "l* second component off");
    require(std::abs(r.certificate.principal_payoff - 0.8) <= 1e-6,
            "principal payoff " + fmt(r.certificate.principal_payoff) + " != 0.8");
    require(std::abs(r.certificate.agent_payoff - 0.55) <= 1e-6,
            "agent payoff " + fmt(r.certificate.agent_payoff) + " != 0.55");

    // The reference two-signal design must reproduce the same outcome even
    // though the synthesized certificate structure may differ.
    const SubgameOutcome ref = best_effort(m, fixtures::reference_extraction_structure());
    require(ref.effort == 2, "reference design: expected the top effort");
    require(std::abs(ref.principal_payoff - 0.8) <= 1e-6,
            "reference design principal payoff " + fmt(ref.principal_payoff) + " != 0.8");
}

// ---------------------------------------------------------------- criterion 4
void c4_two_outcome_closed_forms(std::ostringstream& notes) {
    const double feasible[][2] = {{0.3, 0.2}, {0.3, 0.4}, {0.5, 0.1}, {0.5, 0.2}, {0.7, 0.05}};
    for (const auto& pc : feasible) {
        const double p = pc[0], c = pc[1];
        const auto t0 = std::chrono::steady_clock::now();
        const ModelInstance m = simple_example(p, c);
        const double target = 1.0 - p - c;

        const OracleReport grid = grid_search_binary(m, 0.01);
        require(std::abs(grid.best_value - target) <= 0.01,
                "grid value " + fmt(grid.best_value) + " at p=" + fmt(p) + " c=" + fmt(c) +
                    " not within 0.01 of " + fmt(target));

        const AgentSolution sol = optimize(m);
        require(std::abs(sol.agent_value - target) <= 1e-6,
                "optimized value " + fmt(sol.agent_value) + " at p=" + fmt(p) + " c=" + fmt(c) +
                    " not within 1e-6 of " + fmt(target));

        const auto t1 = std::chrono::steady_clock::now();
        const double sec = std::chrono::duration<double>(t1 - t0).count();
        require(sec < 10.0, "grid point took " + fmt(sec) + " s (budget 10 s)");
        notes << "    p=" << p << " c=" << c << ": grid " << fmt(grid.best_value) << ", search "
              << fmt(sol.agent_value) << ", target " << fmt(target) << ", " << fmt(sec) << " s\n";
    }

    const double infeasible[][2] = {{0.3, 0.55}, {0.5, 0.3}, {0.7, 0.12}};
    for (const auto& pc : infeasible) {
        const ModelInstance m = simple_example(pc[0], pc[1]);
        const ExtractionReport r = full_extraction(m);
        require(!r.extractable, "extraction unexpectedly succeeded at p=" + fmt(pc[0]) +
                                    " c=" + fmt(pc[1]));
    }
}

// ---------------------------------------------------------------- criterion 5
void c5_binary_reduction_suite(std::ostringstream& notes) {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(50550u);
    for (int trial = 0; trial < 200; ++trial) {
        const ModelInstance m = fixtures::random_instance(rng, 5, 5);
        const InformationStructure s = fixtures::random_structure(rng, m.num_outcomes(), 5);
        const SubgameOutcome before = best_effort(m, s);
        const InformationStructure two = reduce_to_binary(m, s, before.effort);
        require(two.num_signals() <= 2, "reduction produced more than two signals");
        const SubgameOutcome after = best_effort(m, two);
        require(after.effort == before.effort,
                "trial " + std::to_string(trial) + ": choice changed from " +
                    std::to_string(before.effort) + " to " + std::to_string(after.effort));
        const double w_before = before.agent_payoff + m.cost(before.effort);
        const double w_after = after.agent_payoff + m.cost(after.effort);
        require(std::abs(w_before - w_after) <= 1e-7,
                "trial " + std::to_string(trial) + ": wage cost moved by " + fmt(w_before - w_after));
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(sec < 60.0, "suite took " + fmt(sec) + " s (budget 60 s)");
    notes << "    200 reductions in " << fmt(sec) << " s\n";
}

// ---------------------------------------------------------------- criterion 6
void c6_wage_geometry_equivalence(std::ostringstream& notes) {
    std::mt19937_64 rng(60660u);
    int compared = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const ModelInstance m = fixtures::random_instance(rng, 5, 5);
        const InformationStructure s = fixtures::random_structure(rng, m.num_outcomes(), 5);
        const SignalDistribution d = induce_signal_distribution(m, s);
        Vec costs(static_cast<std::size_t>(m.num_efforts()));
        for (int e = 0; e < m.num_efforts(); ++e) costs[static_cast<std::size_t>(e)] = m.cost(e);

        std::uniform_int_distribution<int> pick(0, m.num_efforts() - 1);
        const int target = pick(rng);
        const MinWageResult lp = min_wage(m, d, target);
        const HullMinResult geo = min_cost_over_hull(hull_of_p(m, s, target), target, costs);
        require(lp.feasible == geo.feasible,
                "trial " + std::to_string(trial) + ": feasibility disagrees");
        if (lp.feasible) {
            ++compared;
            require(std::abs(lp.expected_wage - geo.value) <= 1e-7,
                    "trial " + std::to_string(trial) + ": LP " + fmt(lp.expected_wage) +
                        " vs geometric " + fmt(geo.value));
        }
    }
    require(compared >= 100, "too few feasible comparisons: " + std::to_string(compared));
    notes << "    " << compared << " of 200 targets implementable; values agree to 1e-7\n";
}

// ---------------------------------------------------------------- criterion 7
void c7_extraction_suite(std::ostringstream& notes) {
    std::mt19937_64 rng(70770u);
    int passed = 0, attempts = 0;
    while (passed < 100 && attempts < 4000) {
        ++attempts;
        ModelInstance m = fixtures::random_instance(rng, 3, 3);
        for (std::size_t e = 1; e < m.efforts.size(); ++e) m.efforts[e].c *= 0.1;
        const ExtractionReport r = full_extraction(m);
        if (!r.extractable || r.certificate.e_star == 0) continue;

        const double outside = expected_output(m, 0);
        require(std::abs(r.certificate.principal_payoff - outside) <= 1e-7,
                "certificate principal payoff " + fmt(r.certificate.principal_payoff) +
                    " != outside option " + fmt(outside));
        const VerifyReport v = verify_solution(m, claim_of(r.certificate), 0.02);
        require(v.verified, "verifier refuted certificate: " + v.reason);
        ++passed;
    }
    require(passed == 100, "only " + std::to_string(passed) + " extractable instances found");
    notes << "    100 certificates verified (" << attempts << " instances sampled)\n";
}

// ---------------------------------------------------------------- criterion 8
void c8_near_perfect_threshold(std::ostringstream& notes) {
    const auto t0 = std::chrono::steady_clock::now();
    const Vec values = {0.0, 0.5, 1.0};
    const Vec costs = {0.0, 0.1, 0.3};

    for (double eps : {1e-3, 5e-4, 1e-4, 1e-5})
        require(almost_perfect_probe(values, costs, eps).verdict,
                "extraction failed at eps=" + fmt(eps));
    for (double eps : {0.45, 0.49})
        require(!almost_perfect_probe(values, costs, eps).verdict,
                "extraction unexpectedly held at eps=" + fmt(eps));

    const EpsilonBracket b = threshold_epsilon(values, costs);
    require(b.hi - b.lo <= 1e-4 + 1e-12,
            "bracket width " + fmt(b.hi - b.lo) + " exceeds 1e-4");
    require(almost_perfect_probe(values, costs, b.lo).verdict, "verdict false at bracket low end");
    require(!almost_perfect_probe(values, costs, b.hi).verdict, "verdict true at bracket high end");

    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(sec < 30.0, "criterion took " + fmt(sec) + " s (budget 30 s)");
    notes << "    threshold bracketed in [" << fmt(b.lo) << ", " << fmt(b.hi) << "], " << fmt(sec)
          << " s\n";
}

// ---------------------------------------------------------------- criterion 9
void c9_continuous_benchmark(std::ostringstream& notes) {
    const ContinuousModel cm = fixtures::example2_model();
    const ContinuousEquilibrium eq = solve_equilibrium(cm);

    require(eq.structure.kind == ThresholdStructure::Kind::Single,
            "expected a single lower-threshold structure");

    // Accounting identity: the three shares recompose expected output.
    const double output = 3.0 * eq.effort / (3.0 * eq.effort + 1.0);
    const double gap = std::abs(eq.U_P + eq.U_A + cm.c(eq.effort) - output);
    require(gap <= 1e-8, "accounting identity off by " + fmt(gap));

    // Reference solution comparison at absolute tolerance 0.02. The full
    // comparison is always reported so any residual is visible, never silent.
    const double ref[5] = {0.45, 0.2725, 0.1048, 0.3450, 0.0677};
    const double got[5] = {eq.structure.lo, eq.effort, eq.expected_wage, eq.U_P, eq.U_A};
    const char* names[5] = {"threshold", "effort", "expected wage", "U_P", "U_A"};
    for (int i = 0; i < 5; ++i) {
        notes << "    " << names[i] << ": solved " << fmt(got[i]) << ", reference " << fmt(ref[i])
              << ", |diff| " << fmt(std::abs(got[i] - ref[i])) << "\n";
        require(std::abs(got[i] - ref[i]) <= 0.02,
                std::string(names[i]) + " " + fmt(got[i]) + " not within 0.02 of " + fmt(ref[i]));
    }

    // The full-information benchmark is judged by its own residual; the
    // reference text reports 0.4708 for this effort, which disagrees with the
    // root of 3/(3e+1)^2 = e and is deliberately not a target here.
    const FirstBest fb = first_best_continuous(cm);
    require(fb.foc_residual < 1e-8, "first-best residual " + fmt(fb.foc_residual));
    notes << "    first-best effort " << fmt(fb.effort) << " (residual " << fmt(fb.foc_residual)
          << "); documented reference disagreement: 0.4708 vs root " << fmt(fb.effort) << "\n";
}

// --------------------------------------------------------------- criterion 10
void c10_discrete_vs_continuous(std::ostringstream& notes) {
    const auto t0 = std::chrono::steady_clock::now();
    const ContinuousModel cm = fixtures::example2_model();
    const double continuous = solve_equilibrium(cm).U_A;

    // Common design family on both sides: one-cut binary structures. The
    // finite side evaluates every cut on the 50x40 discretization through the
    // exact subgame; the continuous side is the threshold equilibrium value.
    const ModelInstance m = discretize_continuous(cm, 50, 40);
    const double finite = fixtures::best_threshold_cut_value(m);

    const double diff = std::abs(finite - continuous);
    notes << "    finite threshold best " << fmt(finite) << ", continuous " << fmt(continuous)
          << ", |diff| " << fmt(diff) << "\n";
    require(diff <= 0.02, "gap " + fmt(diff) + " exceeds 0.02");

    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(sec < 120.0, "criterion took " + fmt(sec) + " s (budget 120 s)");
}

// --------------------------------------------------------------- criterion 11
void c11_sign_pattern(std::ostringstream& notes) {
    const ContinuousModel cm = fixtures::example2_model();
    const ContinuousEquilibrium eq = solve_equilibrium(cm);
    const double eta = estimate_eta(cm, eq.structure, eq.effort);

    const SignPattern sp = foc_sign_pattern(cm, eq.structure, eq.effort, eq.lambda, eta);
    notes << "    sign changes " << sp.sign_changes << ", min on paid set " << fmt(sp.min_on_high)
          << ", max off paid set " << fmt(sp.max_on_low) << "\n";
    require(!sp.degenerate, "pattern degenerate");
    require(sp.sign_changes == 1,
            "expected exactly one sign change, got " + std::to_string(sp.sign_changes));
    require(sp.foc_ok, "inequality pattern violated");
    require(sp.min_on_high >= -1e-6, "paid-set derivative dips to " + fmt(sp.min_on_high));
    require(sp.max_on_low <= 1e-6, "off-set derivative rises to " + fmt(sp.max_on_low));
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "hull generators of the bundled instance", c1_hull_generators},
        {2, "full revelation subgame", c2_full_revelation},
        {3, "full surplus extraction", c3_extraction},
        {4, "two-outcome closed forms", c4_two_outcome_closed_forms},
        {5, "binary reduction property suite", c5_binary_reduction_suite},
        {6, "wage program vs geometry suite", c6_wage_geometry_equivalence},
        {7, "extraction certificate suite", c7_extraction_suite},
        {8, "near-perfect technology threshold", c8_near_perfect_threshold},
        {9, "continuous benchmark solution", c9_continuous_benchmark},
        {10, "discretized vs continuous threshold value", c10_discrete_vs_continuous},
        {11, "equilibrium variational sign pattern", c11_sign_pattern},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::ostringstream notes;
        const auto t0 = std::chrono::steady_clock::now();
        std::string verdict = "PASS";
        std::string detail;
        try {
            c.run(notes);
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = e.what();
            ++failures;
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2d: %s  [%s, %.2f s]%s%s\n", c.id, verdict.c_str(), c.title.c_str(),
                    sec, detail.empty() ? "" : " — ", detail.c_str());
        const std::string extra = notes.str();
        if (!extra.empty()) std::fputs(extra.c_str(), stdout);
    }

    if (failures == 0)
        std::printf("all %zu criteria passed\n", criteria.size());
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}
