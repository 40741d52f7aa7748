#include "indopt/principal.hpp"

#include "indopt/lp.hpp"

#include <stdexcept>

namespace indopt {

namespace {
constexpr double kTieTol = 1e-9;
}

MinWageResult min_wage(const ModelInstance& m, const SignalDistribution& d, int target) {
    const int ne = m.num_efforts();
    if (target < 0 || target >= ne) throw std::invalid_argument("min_wage: bad target effort");
    const int ns = static_cast<int>(d.p[static_cast<size_t>(target)].size());

    lp::Problem prob;
    prob.n = ns;
    prob.c = d.p[static_cast<size_t>(target)];
    for (int e = 0; e < ne; ++e) {
        if (e == target) continue;
        Vec row(static_cast<size_t>(ns));
        for (int s = 0; s < ns; ++s)
            row[static_cast<size_t>(s)] = d.p[static_cast<size_t>(target)][static_cast<size_t>(s)] -
                                          d.p[static_cast<size_t>(e)][static_cast<size_t>(s)];
        prob.add(std::move(row), lp::Rel::Ge, m.cost(target) - m.cost(e));
    }

    MinWageResult res;
    const lp::Solution sol = lp::solve(prob);
    if (sol.status == lp::Status::Optimal) {
        res.feasible = true;
        res.expected_wage = sol.value;
        res.wage = sol.x;
    }
    return res;
}

SubgameOutcome best_effort(const ModelInstance& m, const SignalDistribution& d) {
    const int ne = m.num_efforts();
    SubgameOutcome out;
    out.per_effort.reserve(static_cast<size_t>(ne));

    for (int e = 0; e < ne; ++e) {
        EffortAudit a;
        a.effort = e;
        const MinWageResult r = min_wage(m, d, e);
        a.implementable = r.feasible;
        if (r.feasible) {
            a.wage_cost = r.expected_wage;
            a.principal_payoff = expected_output(m, e) - r.expected_wage;
            a.agent_payoff = r.expected_wage - m.cost(e);
        }
        out.per_effort.push_back(a);

        if (!r.feasible) continue;
        const bool better = a.principal_payoff > out.principal_payoff + kTieTol;
        const bool tied = out.effort >= 0 &&
                          a.principal_payoff > out.principal_payoff - kTieTol;
        const bool tie_win = tied && a.agent_payoff > out.agent_payoff + kTieTol;
        if (out.effort < 0 || better || tie_win) {
            out.effort = e;
            out.principal_payoff = a.principal_payoff;
            out.agent_payoff = a.agent_payoff;
            out.wage = r.wage;
        }
    }
    if (out.effort < 0) throw std::runtime_error("best_effort: no effort is implementable");
    return out;
}

SubgameOutcome best_effort(const ModelInstance& m, const InformationStructure& pi) {
    return best_effort(m, induce_signal_distribution(m, pi));
}

} // namespace indopt
