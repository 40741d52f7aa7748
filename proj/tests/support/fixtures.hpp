#pragma once

// Shared builders for the test suite: the bundled instances in code form,
// reference structures with hand-checked subgame values, the continuous
// benchmark model, a threshold-cut scan for discretized continuous models,
// and seeded random generators for the property suites.

#include "indopt/continuous.hpp"
#include "indopt/model.hpp"
#include "indopt/principal.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

/** Same instance as data/example1.json: three outcomes, three efforts. */
inline indopt::ModelInstance example1() {
    indopt::ModelInstance m;
    m.outcomes = {{"x1", 0.0}, {"x2", 1.0}, {"x3", 2.0}};
    m.efforts = {{"e1", 0.0}, {"e2", 0.1}, {"e3", 0.3}};
    m.f = {{0.35, 0.50, 0.15}, {0.05, 0.50, 0.45}, {0.10, 0.15, 0.75}};
    return m;
}

/**
 * Four-signal structure on example1 with hand-checked induced distribution:
 * p(s|e1) = (0.2825, 0.2275, 0.20, 0.29), p(s|e2) = (0.1475, 0.1825, 0.20,
 * 0.47), p(s|e3) = (0.1175, 0.1025, 0.13, 0.65). The principal's best
 * response is the middle effort at expected wage 47/180 with the wage on the
 * last signal at 5/9.
 */
inline indopt::InformationStructure four_signal_structure() {
    indopt::InformationStructure s;
    s.signals = {"s1", "s2", "s3", "s4"};
    s.pi = {{0.50, 0.20, 0.10, 0.20}, {0.20, 0.30, 0.30, 0.20}, {0.05, 0.05, 0.10, 0.80}};
    return s;
}

/**
 * The reference binary structure that extracts the full surplus on example1:
 * high-signal row (27/83, 15/83, 41/83). Evaluating the subgame on it must
 * choose the top effort with principal payoff 0.8 and agent payoff 0.55.
 */
inline indopt::InformationStructure reference_extraction_structure() {
    indopt::InformationStructure s;
    s.signals = {"L", "H"};
    s.pi.assign(3, indopt::Vec(2, 0.0));
    const double h[3] = {27.0 / 83.0, 15.0 / 83.0, 41.0 / 83.0};
    for (int x = 0; x < 3; ++x) {
        s.pi[x][1] = h[x];
        s.pi[x][0] = 1.0 - h[x];
    }
    return s;
}

/** Same model as data/example2.toml-free.json: power shape 3, c = e^2/2, g(x) = x. */
inline indopt::ContinuousModel example2_model() {
    indopt::ContinuousModel cm;
    cm.family = std::make_shared<indopt::PowerFamily>(3.0);
    cm.cost = indopt::CostSpec{0.5, 2.0};
    cm.payoff = indopt::PayoffSpec{indopt::PayoffSpec::Kind::Linear, 0.0};
    return cm;
}

/**
 * Best agent value over all one-cut binary structures (pay-high on a right
 * tail or on its complement), solving the exact subgame per cut. This is the
 * finite counterpart of the continuous threshold family and the comparison
 * target for discretized continuous models.
 */
inline double best_threshold_cut_value(const indopt::ModelInstance& m) {
    const int nx = m.num_outcomes();
    double best = -indopt::kInf;
    for (int orient = 0; orient < 2; ++orient) {
        for (int cut = 0; cut <= nx; ++cut) {
            indopt::InformationStructure s;
            s.signals = {"L", "H"};
            s.pi.assign(static_cast<std::size_t>(nx), indopt::Vec(2, 0.0));
            for (int x = 0; x < nx; ++x) {
                bool high = x >= cut;
                if (orient == 1) high = !high;
                s.pi[static_cast<std::size_t>(x)][high ? 1 : 0] = 1.0;
            }
            const indopt::SubgameOutcome out = indopt::best_effort(m, s);
            best = std::max(best, out.agent_payoff);
        }
    }
    return best;
}

/** Full-support random instance: |X| in [2, max_x], |E| in [2, max_e]. */
inline indopt::ModelInstance random_instance(std::mt19937_64& rng, int max_x = 5, int max_e = 5) {
    std::uniform_int_distribution<int> dx(2, max_x), de(2, max_e);
    const int nx = dx(rng), ne = de(rng);
    std::uniform_real_distribution<double> mass(0.05, 1.0), gain(0.0, 2.0), step(0.02, 0.4);

    indopt::ModelInstance m;
    indopt::Vec g(static_cast<std::size_t>(nx));
    for (double& v : g) v = gain(rng);
    std::sort(g.begin(), g.end());
    for (int x = 0; x < nx; ++x) m.outcomes.push_back({"x" + std::to_string(x + 1), g[static_cast<std::size_t>(x)]});

    double c = 0.0;
    for (int e = 0; e < ne; ++e) {
        m.efforts.push_back({"e" + std::to_string(e + 1), c});
        c += step(rng);
    }

    m.f.assign(static_cast<std::size_t>(ne), indopt::Vec(static_cast<std::size_t>(nx)));
    for (auto& row : m.f) {
        double sum = 0.0;
        for (double& v : row) {
            v = mass(rng);
            sum += v;
        }
        for (double& v : row) v /= sum;
    }
    return m;
}

/** Random row-stochastic structure with strictly positive entries. */
inline indopt::InformationStructure random_structure(std::mt19937_64& rng, int nx, int max_s = 4) {
    std::uniform_int_distribution<int> ds(2, max_s);
    const int ns = ds(rng);
    std::uniform_real_distribution<double> mass(0.05, 1.0);

    indopt::InformationStructure s;
    for (int k = 0; k < ns; ++k) s.signals.push_back("s" + std::to_string(k + 1));
    s.pi.assign(static_cast<std::size_t>(nx), indopt::Vec(static_cast<std::size_t>(ns)));
    for (auto& row : s.pi) {
        double sum = 0.0;
        for (double& v : row) {
            v = mass(rng);
            sum += v;
        }
        for (double& v : row) v /= sum;
    }
    return s;
}

} // namespace fixtures
