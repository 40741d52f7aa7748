#include "indopt/agent.hpp"

#include "indopt/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace indopt {

namespace {

struct Candidate {
    double value = -kInf; // feasible agent value
    int restart = -1;
    Vec q;
};

struct Evaluation {
    SubgameOutcome outcome;
    double score = -kInf;  // climbing score for the intended target
    double feasible_value = -kInf; // agent value when the target was chosen
};

class Search {
 public:
    Search(const ModelInstance& m, const OptimizeConfig& cfg) : m_(m), cfg_(cfg) {}

    Evaluation evaluate(const Vec& q, int target) const {
        Evaluation ev;
        ev.outcome = best_effort(m_, binary_structure(m_, q));
        const EffortAudit& t = ev.outcome.per_effort[static_cast<size_t>(target)];
        if (ev.outcome.effort == target) {
            ev.score = ev.outcome.agent_payoff;
            ev.feasible_value = ev.outcome.agent_payoff;
        } else if (t.implementable) {
            const double chosen_up =
                ev.outcome.per_effort[static_cast<size_t>(ev.outcome.effort)].principal_payoff;
            ev.score = t.agent_payoff -
                       cfg_.penalty * std::max(cfg_.tie_tol, chosen_up - t.principal_payoff);
        } else {
            ev.score = -1e6;
        }
        return ev;
    }

    const ModelInstance& m_;
    const OptimizeConfig& cfg_;
};

double portable_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<Vec> structured_seeds(const ModelInstance& m) {
    const int nx = m.num_outcomes();
    std::vector<Vec> seeds;
    seeds.emplace_back(static_cast<size_t>(nx), 1.0); // uninformative

    // Binary reduction of full revelation at its own subgame choice.
    try {
        const InformationStructure fr = full_revelation(m);
        const SubgameOutcome out = best_effort(m, fr);
        const InformationStructure red = reduce_to_binary(m, fr, out.effort);
        if (red.num_signals() >= 1) {
            Vec q(static_cast<size_t>(nx), 0.0);
            for (int x = 0; x < nx; ++x) q[static_cast<size_t>(x)] = red.pi[static_cast<size_t>(x)][0];
            seeds.push_back(std::move(q));
        }
    } catch (const std::exception&) {
        // full revelation can be degenerate; the seed is optional
    }

    // Extraction structure, when the construction goes through.
    try {
        const ExtractionReport rep = full_extraction(m);
        if (rep.extractable && rep.certificate.e_star != 0) {
            Vec q(static_cast<size_t>(nx), 0.0);
            for (int x = 0; x < nx; ++x)
                q[static_cast<size_t>(x)] = rep.certificate.structure.pi[static_cast<size_t>(x)][0];
            seeds.push_back(std::move(q));
        }
    } catch (const std::exception&) {
    }

    // Threshold step patterns in both orientations.
    for (int cut = 0; cut <= nx; ++cut) {
        Vec up(static_cast<size_t>(nx), 0.0), down(static_cast<size_t>(nx), 0.0);
        for (int x = 0; x < nx; ++x) {
            up[static_cast<size_t>(x)] = x >= cut ? 1.0 : 0.0;
            down[static_cast<size_t>(x)] = x < cut ? 1.0 : 0.0;
        }
        seeds.push_back(std::move(up));
        seeds.push_back(std::move(down));
    }
    return seeds;
}

} // namespace

AgentSolution optimize(const ModelInstance& m, const OptimizeConfig& cfg) {
    const int nx = m.num_outcomes();
    const int ne = m.num_efforts();
    const Search search(m, cfg);

    const double outside = expected_output(m, 0);
    std::vector<int> targets;
    for (int e = 1; e < ne; ++e) { // e1 always yields agent value 0; no search needed
        const double bound = expected_output(m, e) - outside - m.cost(e);
        if (bound > 1e-12) targets.push_back(e);
    }

    const std::vector<Vec> seeds = structured_seeds(m);
    const int restarts = std::max(cfg.restarts, static_cast<int>(seeds.size()));
    const long long per_restart_budget =
        cfg.budget > 0 ? std::max<long long>(1, cfg.budget / restarts) : 0;

    struct RestartResult {
        Candidate best;
        long long evals = 0;
        std::vector<double> per_effort; // best feasible value per effort, -inf if none
    };
    std::vector<RestartResult> results(static_cast<size_t>(restarts));

    auto run_restart = [&](int r) {
        RestartResult& res = results[static_cast<size_t>(r)];
        res.per_effort.assign(static_cast<size_t>(ne), -kInf);
        std::mt19937_64 rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(r + 1)));

        Vec q;
        if (r < static_cast<int>(seeds.size())) {
            q = seeds[static_cast<size_t>(r)];
        } else {
            q.assign(static_cast<size_t>(nx), 0.0);
            for (double& v : q) v = portable_unit(rng);
        }

        auto note = [&](const Evaluation& ev, const Vec& point) {
            const int chosen = ev.outcome.effort;
            double& slot = res.per_effort[static_cast<size_t>(chosen)];
            slot = std::max(slot, ev.outcome.agent_payoff);
            if (ev.outcome.agent_payoff > res.best.value + 1e-15) {
                res.best.value = ev.outcome.agent_payoff;
                res.best.restart = r;
                res.best.q = point;
            }
        };
        auto spent = [&] { return per_restart_budget > 0 && res.evals >= per_restart_budget; };

        const int target = targets.empty() ? 0 : targets[static_cast<size_t>(r) % targets.size()];
        Evaluation cur = search.evaluate(q, target);
        ++res.evals;
        note(cur, q);
        if (targets.empty()) return;

        double h = 0.25;
        for (int sweep = 0; sweep < cfg.sweeps && !spent(); ++sweep) {
            bool improved = false;
            for (int x = 0; x < nx && !spent(); ++x) {
                const double qx = q[static_cast<size_t>(x)];
                const double cands[4] = {0.0, 1.0, std::max(0.0, qx - h), std::min(1.0, qx + h)};
                double best_v = qx;
                double best_s = cur.score;
                for (double cand : cands) {
                    if (std::abs(cand - qx) < 1e-15) continue;
                    q[static_cast<size_t>(x)] = cand;
                    const Evaluation ev = search.evaluate(q, target);
                    ++res.evals;
                    note(ev, q);
                    if (ev.score > best_s + 1e-12) {
                        best_s = ev.score;
                        best_v = cand;
                    }
                    if (spent()) break;
                }
                q[static_cast<size_t>(x)] = best_v;
                if (best_v != qx) {
                    cur = search.evaluate(q, target);
                    ++res.evals;
                    note(cur, q);
                    improved = true;
                }
            }
            if (!improved) {
                h *= 0.5;
                if (h < 1e-9) break;
            }
        }
    };

    int nthreads = cfg.threads > 0 ? cfg.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min(nthreads, restarts));
    if (nthreads == 1) {
        for (int r = 0; r < restarts; ++r) run_restart(r);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(nthreads));
        for (int tid = 0; tid < nthreads; ++tid) {
            pool.emplace_back([&, tid] {
                for (int r = tid; r < restarts; r += nthreads) run_restart(r);
            });
        }
        for (std::thread& th : pool) th.join();
    }

    Candidate best;
    long long evals = 0;
    Vec per_effort(static_cast<size_t>(ne), -kInf);
    for (const RestartResult& res : results) {
        evals += res.evals;
        for (int e = 0; e < ne; ++e)
            per_effort[static_cast<size_t>(e)] =
                std::max(per_effort[static_cast<size_t>(e)], res.per_effort[static_cast<size_t>(e)]);
        if (res.best.restart < 0) continue;
        // results scan in restart order, so ties resolve toward the earlier restart
        if (best.restart < 0 || res.best.value > best.value + 1e-15) best = res.best;
    }

    AgentSolution sol;
    sol.structure = binary_structure(m, best.q);
    sol.outcome = best_effort(m, sol.structure);
    sol.agent_value = sol.outcome.agent_payoff;
    sol.evaluations = evals;
    sol.restarts_used = restarts;
    for (int e = 0; e < ne; ++e)
        if (per_effort[static_cast<size_t>(e)] > -kInf)
            sol.per_effort_best.emplace_back(e, per_effort[static_cast<size_t>(e)]);
    return sol;
}

} // namespace indopt
