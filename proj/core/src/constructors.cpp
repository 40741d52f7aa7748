#include "indopt/constructors.hpp"

#include "indopt/errors.hpp"
#include "indopt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace indopt {

namespace {

constexpr double kSynthTol = 1e-9;

InformationStructure assemble_structure(const Mat& pi_raw, std::vector<std::string> labels) {
    InformationStructure s;
    s.signals = std::move(labels);
    s.pi = pi_raw;
    for (Vec& row : s.pi) {
        double sum = 0.0;
        for (double& v : row) {
            if (v < 0.0) v = 0.0;
            sum += v;
        }
        if (sum <= 0.0) throw SynthesisError("synthesized structure has an empty row");
        for (double& v : row) v /= sum;
    }
    return s;
}

// Joint decomposition over outcome-mass blocks gamma_k(x) = P(outcome x and
// signal k | reference effort). The blocks must tile the reference technology
// row (sum_k gamma_k(x) = f(x|ref)), and each block's likelihood moment must
// sit exactly on its candidate point: sum_x gamma_k(x) * (a_x - z_k) = 0,
// where a_x is outcome x's generator. Both families of constraints are linear
// in gamma, so a single LP decides synthesizability outright; the objective
// maximizes the smallest signal mass so every signal keeps positive
// probability whenever some decomposition allows it. The structure is then
// pi(z_k | x) = gamma_k(x) / f(x|ref).
bool decompose_points(const ModelInstance& m, int reference, const Mat& points,
                      const LikelihoodHull& hf, Mat* out) {
    const int nx = m.num_outcomes();
    const int ne = m.num_efforts();
    const int nk = static_cast<int>(points.size());
    const Vec& fref = m.f[static_cast<size_t>(reference)];

    const int ng = nk * nx;
    const auto gv = [nx](int k, int x) { return static_cast<size_t>(k * nx + x); };
    lp::Problem prob;
    prob.n = ng + 1; // gamma blocks, then the min-mass bound
    prob.c.assign(static_cast<size_t>(prob.n), 0.0);
    prob.c[static_cast<size_t>(ng)] = -1.0;
    for (int x = 0; x < nx; ++x) {
        Vec row(static_cast<size_t>(prob.n), 0.0);
        for (int k = 0; k < nk; ++k) row[gv(k, x)] = 1.0;
        prob.add(std::move(row), lp::Rel::Eq, fref[static_cast<size_t>(x)]);
    }
    for (int k = 0; k < nk; ++k) {
        for (int e = 0; e < ne; ++e) {
            if (e == reference) continue;
            Vec row(static_cast<size_t>(prob.n), 0.0);
            for (int x = 0; x < nx; ++x)
                row[gv(k, x)] = hf.generators[static_cast<size_t>(x)][static_cast<size_t>(e)] -
                                points[static_cast<size_t>(k)][static_cast<size_t>(e)];
            prob.add(std::move(row), lp::Rel::Eq, 0.0);
        }
        Vec row(static_cast<size_t>(prob.n), 0.0);
        for (int x = 0; x < nx; ++x) row[gv(k, x)] = 1.0;
        row[static_cast<size_t>(ng)] = -1.0;
        prob.add(std::move(row), lp::Rel::Ge, 0.0);
    }
    const lp::Solution sol = lp::solve(prob);
    if (sol.status != lp::Status::Optimal) return false;
    out->assign(static_cast<size_t>(nx), Vec(static_cast<size_t>(nk), 0.0));
    for (int x = 0; x < nx; ++x)
        for (int k = 0; k < nk; ++k)
            (*out)[static_cast<size_t>(x)][static_cast<size_t>(k)] =
                sol.x[gv(k, x)] / fref[static_cast<size_t>(x)];
    return true;
}

} // namespace

InformationStructure structure_from_hull(const ModelInstance& m, int reference, const Mat& points,
                                         std::vector<std::string> labels) {
    const int ne = m.num_efforts();
    const int nk = static_cast<int>(points.size());
    if (nk == 0) throw std::invalid_argument("structure_from_hull: empty point set");
    if (reference < 0 || reference >= ne)
        throw std::invalid_argument("structure_from_hull: reference out of range");
    const LikelihoodHull hf = hull_of_f(m, reference);
    for (const Vec& z : points) {
        if (static_cast<int>(z.size()) != ne)
            throw std::invalid_argument("structure_from_hull: point dimension mismatch");
        if (std::abs(z[static_cast<size_t>(reference)]) > kSynthTol)
            throw SynthesisError("candidate point has nonzero reference component");
        if (!in_hull(z, hf).inside)
            throw SynthesisError("candidate point lies outside the technology hull");
    }
    if (labels.empty()) {
        for (int g = 0; g < nk; ++g) labels.push_back("z" + std::to_string(g));
    } else if (static_cast<int>(labels.size()) != nk) {
        throw std::invalid_argument("structure_from_hull: label count mismatch");
    }

    Mat pi_raw;
    if (!decompose_points(m, reference, points, hf, &pi_raw))
        throw SynthesisError("no structure decomposes the candidate points at tolerance");

    InformationStructure s = assemble_structure(pi_raw, std::move(labels));

    // Round-trip sanity on live signals: the induced likelihood vectors must
    // reproduce the candidates.
    const SignalDistribution d = induce_signal_distribution(m, s);
    for (int g = 0; g < nk; ++g) {
        const double mass = d.p[static_cast<size_t>(reference)][static_cast<size_t>(g)];
        if (mass <= 1e-12) continue; // zero-mass signal: point unconstrained
        for (int e = 0; e < ne; ++e) {
            if (e == reference) continue;
            const double induced =
                1.0 - d.p[static_cast<size_t>(e)][static_cast<size_t>(g)] / mass;
            if (std::abs(induced - points[static_cast<size_t>(g)][static_cast<size_t>(e)]) > 1e-6)
                throw SynthesisError("synthesized structure fails the round-trip check");
        }
    }
    return s;
}

InformationStructure reduce_to_binary(const ModelInstance& m, const InformationStructure& pi,
                                      int e_star) {
    const SignalDistribution d = induce_signal_distribution(m, pi);
    const SubgameOutcome out = best_effort(m, d);
    if (out.effort != e_star)
        throw std::invalid_argument(
            "reduce_to_binary: e_star is not the principal's choice under pi");

    const int ns = static_cast<int>(out.wage.size());
    double wage_sum = 0.0;
    double expected = 0.0;
    for (int s = 0; s < ns; ++s) {
        wage_sum += out.wage[static_cast<size_t>(s)];
        expected += out.wage[static_cast<size_t>(s)] *
                    d.p[static_cast<size_t>(e_star)][static_cast<size_t>(s)];
    }

    InformationStructure hat;
    if (expected <= 1e-12) {
        hat = uninformative(m);
    } else {
        const int nx = m.num_outcomes();
        Vec q(static_cast<size_t>(nx), 0.0);
        for (int x = 0; x < nx; ++x) {
            double acc = 0.0;
            for (int s = 0; s < ns; ++s)
                acc += (out.wage[static_cast<size_t>(s)] / wage_sum) *
                       pi.pi[static_cast<size_t>(x)][static_cast<size_t>(s)];
            q[static_cast<size_t>(x)] = std::min(1.0, std::max(0.0, acc));
        }
        hat = binary_structure(m, q);
    }

    const SubgameOutcome check = best_effort(m, hat);
    const double w_old = expected;
    const double w_new = check.agent_payoff + m.cost(check.effort);
    if (check.effort != e_star || std::abs(w_new - w_old) > 1e-8) {
        std::ostringstream os;
        os << "reduce_to_binary: reduction altered the outcome (effort " << check.effort
           << " vs " << e_star << ", wage " << w_new << " vs " << w_old << ")";
        throw VerificationError(os.str());
    }
    return hat;
}

int first_best_effort(const ModelInstance& m) {
    int best = 0;
    double best_v = expected_output(m, 0) - m.cost(0);
    for (int e = 1; e < m.num_efforts(); ++e) {
        const double v = expected_output(m, e) - m.cost(e);
        if (v > best_v) {
            best = e;
            best_v = v;
        }
    }
    return best;
}

LikelihoodVector compute_l_star(const ModelInstance& m, int e_star) {
    const double dg = expected_output(m, e_star) - expected_output(m, 0);
    if (dg <= 1e-12) {
        std::ostringstream os;
        os << "surplus step is not positive: E[g|target] - E[g|base] = " << dg;
        throw DegenerateSurplusError(os.str());
    }
    LikelihoodVector v;
    v.reference = e_star;
    v.l.assign(static_cast<size_t>(m.num_efforts()), 0.0);
    for (int e = 0; e < m.num_efforts(); ++e)
        v.l[static_cast<size_t>(e)] = (m.cost(e_star) - m.cost(e)) / dg;
    return v;
}

ExtractionReport full_extraction(const ModelInstance& m) {
    ExtractionReport rep;
    const int e_star = first_best_effort(m);
    const double outside = expected_output(m, 0);

    if (e_star == 0) {
        // Nothing to extract: the principal's outside option is first-best.
        rep.extractable = true;
        rep.certificate.e_star = 0;
        rep.certificate.l_star.assign(static_cast<size_t>(m.num_efforts()), 0.0);
        rep.certificate.alpha = 0.0;
        rep.certificate.structure = uninformative(m);
        rep.certificate.outcome = best_effort(m, rep.certificate.structure);
        rep.certificate.agent_payoff = 0.0;
        rep.certificate.principal_payoff = outside;
        if (rep.certificate.outcome.effort != 0 ||
            std::abs(rep.certificate.outcome.principal_payoff - outside) > 1e-8)
            throw VerificationError("degenerate extraction failed the subgame check");
        return rep;
    }

    if (m.cost(e_star) <= 1e-15) {
        // A costless target is implemented at zero wage under every structure;
        // no structure can move the principal to the outside option.
        rep.extractable = false;
        rep.reason = "target effort has zero cost: the wage program is degenerate and "
                     "the construction does not apply";
        return rep;
    }

    LikelihoodVector l_star;
    try {
        l_star = compute_l_star(m, e_star);
    } catch (const DegenerateSurplusError& e) {
        rep.extractable = false;
        rep.reason = e.what();
        return rep;
    }

    const LikelihoodHull hf = hull_of_f(m, e_star);
    const InHullResult membership = in_hull(l_star.l, hf);
    if (!membership.inside) {
        rep.extractable = false;
        rep.reason = "indifference point lies outside the technology hull";
        rep.has_witness = true;
        rep.sep_normal = membership.sep_normal;
        rep.sep_offset = membership.sep_offset;
        return rep;
    }

    // Largest high-signal mass t admitting an outcome split gamma <= f(.|e*)
    // of total mass t whose likelihood moment sits exactly at t * l*. The
    // complementary split f - gamma then carries -t/(1-t) * l*, so both signal
    // positions are realizable jointly (not merely inside the hull one at a
    // time, which is weaker and can leave the pair undecomposable). A bigger
    // mass also means a smaller bonus wage, which keeps the verification
    // residuals well scaled.
    const int nx = m.num_outcomes();
    const int ne = m.num_efforts();
    const Vec& fref = m.f[static_cast<size_t>(e_star)];
    lp::Problem prob;
    prob.n = nx + 1; // gamma, then t = total mass of the high block
    prob.c.assign(static_cast<size_t>(nx + 1), 0.0);
    prob.c[static_cast<size_t>(nx)] = -1.0;
    for (int e = 0; e < ne; ++e) {
        if (e == e_star) continue;
        Vec row(static_cast<size_t>(nx + 1), 0.0);
        for (int x = 0; x < nx; ++x)
            row[static_cast<size_t>(x)] = hf.generators[static_cast<size_t>(x)][static_cast<size_t>(e)];
        row[static_cast<size_t>(nx)] = -l_star.l[static_cast<size_t>(e)];
        prob.add(std::move(row), lp::Rel::Eq, 0.0);
    }
    prob.add([&] {
        Vec row(static_cast<size_t>(nx + 1), 1.0);
        row[static_cast<size_t>(nx)] = -1.0;
        return row;
    }(), lp::Rel::Eq, 0.0);
    for (int x = 0; x < nx; ++x) {
        Vec row(static_cast<size_t>(nx + 1), 0.0);
        row[static_cast<size_t>(x)] = 1.0;
        prob.add(std::move(row), lp::Rel::Le, fref[static_cast<size_t>(x)]);
    }
    const lp::Solution mass = lp::solve(prob);
    if (mass.status != lp::Status::Optimal || -mass.value <= 1e-12) {
        rep.extractable = false;
        rep.reason = "mass program degenerate: no signal split places positive weight on l*";
        return rep;
    }
    // Shrink from the maximum for strict feasibility margin; the feasible
    // masses form an interval [0, t_max], so the scaled point stays valid.
    const double t_high = 0.99 * -mass.value;
    const double alpha = std::min(t_high / (1.0 - t_high), 1e3);

    Mat points(2, Vec(static_cast<size_t>(ne), 0.0));
    points[0] = l_star.l;
    for (int d = 0; d < ne; ++d) points[1][static_cast<size_t>(d)] = -alpha * l_star.l[static_cast<size_t>(d)];
    InformationStructure structure =
        structure_from_hull(m, e_star, points, {"H", "L"});

    const SubgameOutcome out = best_effort(m, structure);
    const double surplus = expected_output(m, e_star) - outside - m.cost(e_star);
    if (out.effort != e_star || std::abs(out.principal_payoff - outside) > 1e-8 ||
        std::abs(out.agent_payoff - surplus) > 1e-8) {
        std::ostringstream os;
        os << "extraction construction failed the subgame check: effort " << out.effort
           << " (want " << e_star << "), principal " << out.principal_payoff << " (want "
           << outside << "), agent " << out.agent_payoff << " (want " << surplus << ")";
        throw VerificationError(os.str());
    }

    rep.extractable = true;
    rep.certificate.e_star = e_star;
    rep.certificate.l_star = l_star.l;
    rep.certificate.alpha = alpha;
    rep.certificate.structure = std::move(structure);
    rep.certificate.outcome = out;
    rep.certificate.agent_payoff = out.agent_payoff;
    rep.certificate.principal_payoff = out.principal_payoff;
    return rep;
}

ProbeResult almost_perfect_probe(const Vec& effort_values, const Vec& costs, double eps) {
    ProbeResult pr;
    pr.instance = almost_perfect_technology(effort_values, costs, eps);
    pr.first_best = first_best_effort(pr.instance);
    pr.report = full_extraction(pr.instance);
    pr.verdict = pr.first_best != 0 && pr.report.extractable;
    return pr;
}

EpsilonBracket threshold_epsilon(const Vec& effort_values, const Vec& costs) {
    const int n = static_cast<int>(effort_values.size());
    const double eps_max = 1.0 / (n - 1);
    auto verdict = [&](double eps) {
        return almost_perfect_probe(effort_values, costs, eps).verdict;
    };

    double lo = 1e-3;
    while (lo > 1e-7 && !verdict(lo)) lo /= 10.0;
    EpsilonBracket br;
    if (!verdict(lo)) {
        br.lo = 0.0;
        br.hi = lo;
        return br;
    }
    double hi = eps_max * (1.0 - 1e-9);
    if (verdict(hi)) {
        br.lo = hi;
        br.hi = eps_max;
        return br;
    }
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        if (verdict(mid))
            lo = mid;
        else
            hi = mid;
    }
    br.lo = lo;
    br.hi = hi;
    return br;
}

} // namespace indopt
