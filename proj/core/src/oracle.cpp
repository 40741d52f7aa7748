#include "indopt/oracle.hpp"

#include "indopt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

namespace indopt {

namespace {

// Decode a linear index into the grid point it names (most-significant digit
// first, so index order is lexicographic in q).
Vec decode_q(std::uint64_t idx, int nx, std::uint64_t npts, double delta) {
    Vec q(nx);
    for (int j = nx - 1; j >= 0; --j) {
        const std::uint64_t d = idx % npts;
        idx /= npts;
        q[j] = std::min(1.0, static_cast<double>(d) * delta);
    }
    return q;
}

struct GridBest {
    double value = -kInf;
    std::uint64_t index = 0;
    bool any = false;
};

} // namespace

OracleReport grid_search_binary(const ModelInstance& m, double delta, std::uint64_t cap, int threads) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("grid step must lie in (0, 1]");
    const int nx = m.num_outcomes();
    const std::uint64_t npts = static_cast<std::uint64_t>(std::llround(1.0 / delta)) + 1;

    std::uint64_t total = 1;
    for (int j = 0; j < nx; ++j) {
        if (total > cap / npts + 1) total = cap + 1; // saturate, avoid overflow
        else total *= npts;
    }
    if (total > cap) {
        std::ostringstream os;
        os << "grid enumeration needs " << npts << "^" << nx << " subgame solves, cap is " << cap;
        throw BudgetExceeded(os.str());
    }

    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    nthreads = static_cast<int>(std::min<std::uint64_t>(nthreads, total));

    std::vector<GridBest> partial(nthreads);
    auto worker = [&](int w) {
        const std::uint64_t lo = total * w / nthreads;
        const std::uint64_t hi = total * (w + 1) / nthreads;
        GridBest best;
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            const Vec q = decode_q(idx, nx, npts, delta);
            const SubgameOutcome out = best_effort(m, binary_structure(m, q));
            if (!best.any || out.agent_payoff > best.value) {
                best.value = out.agent_payoff;
                best.index = idx;
                best.any = true;
            }
        }
        partial[w] = best;
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int w = 0; w < nthreads; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }

    // Deterministic reduction: highest value, earliest index on ties. Workers
    // cover disjoint ascending ranges, so scanning in worker order suffices.
    GridBest best;
    for (const GridBest& b : partial) {
        if (!b.any) continue;
        if (!best.any || b.value > best.value) best = b;
    }

    OracleReport rep;
    rep.delta = delta;
    rep.evaluations = total;
    rep.best_value = best.value;
    rep.best_q = decode_q(best.index, nx, npts, delta);
    rep.best_structure = binary_structure(m, rep.best_q);
    rep.best_outcome = best_effort(m, rep.best_structure);
    return rep;
}

ModelInstance discretize_continuous(const ContinuousModel& cm, int nx, int ne) {
    if (nx < 2 || ne < 2) throw std::invalid_argument("discretization needs nx, ne >= 2");
    constexpr double kFloor = 1e-12;

    ModelInstance m;
    m.outcomes.resize(nx);
    for (int j = 0; j < nx; ++j) {
        const double x = (j + 0.5) / nx;
        m.outcomes[j].label = "x" + std::to_string(j + 1);
        m.outcomes[j].g = cm.g(x);
    }
    m.efforts.resize(ne);
    // Costs are rebased to the lowest grid effort: subgame incentives compare
    // cost differences only, so the shift changes no wage or choice, and it
    // keeps the lowest effort free as the finite validator requires.
    const double c0 = cm.c(0.5 / ne);
    for (int i = 0; i < ne; ++i) {
        const double e = (i + 0.5) / ne;
        m.efforts[i].label = "e" + std::to_string(i + 1);
        m.efforts[i].c = cm.c(e) - c0;
    }
    m.f.assign(ne, Vec(nx, 0.0));
    for (int i = 0; i < ne; ++i) {
        const double e = (i + 0.5) / ne;
        double sum = 0.0;
        for (int j = 0; j < nx; ++j) {
            const double mass =
                cm.family->cdf(static_cast<double>(j + 1) / nx, e) - cm.family->cdf(static_cast<double>(j) / nx, e);
            m.f[i][j] = std::max(mass, kFloor);
            sum += m.f[i][j];
        }
        for (int j = 0; j < nx; ++j) m.f[i][j] /= sum;
    }
    return m;
}

Claim claim_of(const AgentSolution& sol) {
    Claim c;
    c.structure = sol.structure;
    c.effort = sol.outcome.effort;
    c.wage = sol.outcome.wage;
    c.value = sol.agent_value;
    return c;
}

Claim claim_of(const ExtractionCertificate& cert) {
    Claim c;
    c.structure = cert.structure;
    c.effort = cert.outcome.effort;
    c.wage = cert.outcome.wage;
    c.value = cert.agent_payoff;
    return c;
}

VerifyReport verify_solution(const ModelInstance& m, const Claim& claimed, double delta) {
    constexpr double kTol = 1e-8;
    VerifyReport rep;

    const ValidationReport mv = validate_model(m);
    if (!mv.ok()) {
        rep.reason = "model invalid: " + mv.summary();
        return rep;
    }
    const ValidationReport sv = validate_structure(m, claimed.structure);
    if (!sv.ok()) {
        rep.reason = "claimed structure invalid: " + sv.summary();
        return rep;
    }
    if (claimed.effort < 0 || claimed.effort >= m.num_efforts()) {
        rep.reason = "claimed effort index out of range";
        return rep;
    }

    // Exact re-solve of the subgame on the claimed structure.
    rep.resolved = best_effort(m, claimed.structure);
    if (rep.resolved.effort != claimed.effort) {
        std::ostringstream os;
        os << "re-solve picks effort " << rep.resolved.effort << ", claim says " << claimed.effort;
        rep.reason = os.str();
        return rep;
    }
    if (std::abs(rep.resolved.agent_payoff - claimed.value) > kTol) {
        std::ostringstream os;
        os << "re-solved agent value " << rep.resolved.agent_payoff << " != claimed " << claimed.value;
        rep.reason = os.str();
        return rep;
    }

    // The claimed wage must stand on its own: nonnegative, and the claimed
    // effort must be the agent's best reply to it.
    const SignalDistribution d = induce_signal_distribution(m, claimed.structure);
    if (claimed.wage.size() != static_cast<std::size_t>(claimed.structure.num_signals())) {
        rep.reason = "claimed wage length does not match the structure";
        return rep;
    }
    double best_reply = -kInf;
    double claimed_reply = 0.0;
    for (std::size_t s = 0; s < claimed.wage.size(); ++s) {
        if (claimed.wage[s] < -1e-12) {
            rep.reason = "claimed wage has a negative component";
            return rep;
        }
    }
    for (int e = 0; e < m.num_efforts(); ++e) {
        double u = -m.cost(e);
        for (std::size_t s = 0; s < claimed.wage.size(); ++s) u += d.p[e][s] * claimed.wage[s];
        best_reply = std::max(best_reply, u);
        if (e == claimed.effort) claimed_reply = u;
    }
    if (claimed_reply < best_reply - kTol) {
        std::ostringstream os;
        os << "claimed wage does not implement the claimed effort (gap " << best_reply - claimed_reply
           << ")";
        rep.reason = os.str();
        return rep;
    }

    // Optimality up to grid resolution. Grid points move each q coordinate by
    // at most delta/2, shifting every signal probability by at most delta/2
    // per outcome; re-optimized wages respond with at most the wage scale per
    // unit of moved mass, so 2 * |X| * delta * wage-scale is a conservative
    // slack on the achievable value.
    const OracleReport grid = grid_search_binary(m, delta);
    double wscale = 1.0;
    for (double w : rep.resolved.wage) wscale = std::max(wscale, std::abs(w));
    for (double w : grid.best_outcome.wage) wscale = std::max(wscale, std::abs(w));
    rep.grid_best = grid.best_value;
    rep.bound = 2.0 * m.num_outcomes() * delta * wscale;
    if (claimed.value < grid.best_value - rep.bound) {
        rep.counterexample_q = grid.best_q;
        std::ostringstream os;
        os << "grid search reaches " << grid.best_value << ", claim " << claimed.value
           << " falls short of it by more than the resolution slack " << rep.bound;
        rep.reason = os.str();
        return rep;
    }

    rep.verified = true;
    rep.reason = "exact re-solve and grid comparison agree with the claim";
    return rep;
}

} // namespace indopt
