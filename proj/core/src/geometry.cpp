#include "indopt/geometry.hpp"

#include "indopt/config.hpp"

#include "indopt/errors.hpp"
#include "indopt/lp.hpp"
#include "indopt/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace indopt {

namespace {
double feas_tol() { return tolerances().hull; }
constexpr double kEqTol = 1e-12; // classifies l_j == l_i
constexpr double kMassTol = 1e-15;

void check_reference(int reference, int ne) {
    if (reference < 0 || reference >= ne)
        throw std::invalid_argument("reference effort out of range");
}
} // namespace

LikelihoodHull hull_of_f(const ModelInstance& m, int reference) {
    const int ne = m.num_efforts();
    const int nx = m.num_outcomes();
    check_reference(reference, ne);
    LikelihoodHull h;
    h.reference = reference;
    h.labels.reserve(static_cast<size_t>(nx));
    h.generators.assign(static_cast<size_t>(nx), Vec(static_cast<size_t>(ne), 0.0));
    for (int x = 0; x < nx; ++x) {
        h.labels.push_back(m.outcomes[static_cast<size_t>(x)].label);
        const double ref_mass = m.f[static_cast<size_t>(reference)][static_cast<size_t>(x)];
        for (int e = 0; e < ne; ++e) {
            h.generators[static_cast<size_t>(x)][static_cast<size_t>(e)] =
                e == reference ? 0.0
                               : 1.0 - m.f[static_cast<size_t>(e)][static_cast<size_t>(x)] / ref_mass;
        }
    }
    return h;
}

LikelihoodHull hull_of_p(const ModelInstance& m, const InformationStructure& pi, int reference) {
    const int ne = m.num_efforts();
    check_reference(reference, ne);
    const SignalDistribution d = induce_signal_distribution(m, pi);
    const int ns = pi.num_signals();
    LikelihoodHull h;
    h.reference = reference;
    for (int s = 0; s < ns; ++s) {
        double col_max = 0.0;
        for (int e = 0; e < ne; ++e)
            col_max = std::max(col_max, d.p[static_cast<size_t>(e)][static_cast<size_t>(s)]);
        if (col_max <= kMassTol) continue; // dead signal, no contracting content
        const double ref_mass = d.p[static_cast<size_t>(reference)][static_cast<size_t>(s)];
        if (ref_mass <= kMassTol)
            throw ZeroLikelihoodError("signal '" + pi.signals[static_cast<size_t>(s)] +
                                      "' has zero likelihood under the reference effort");
        Vec z(static_cast<size_t>(ne), 0.0);
        for (int e = 0; e < ne; ++e) {
            if (e == reference) continue;
            z[static_cast<size_t>(e)] =
                1.0 - d.p[static_cast<size_t>(e)][static_cast<size_t>(s)] / ref_mass;
        }
        h.labels.push_back(pi.signals[static_cast<size_t>(s)]);
        h.generators.push_back(std::move(z));
    }
    return h;
}

InHullResult in_hull(const Vec& point, const LikelihoodHull& hull) {
    const int k = hull.size();
    const int dim = hull.dim();
    if (static_cast<int>(point.size()) != dim)
        throw std::invalid_argument("in_hull: point/hull dimension mismatch");
    if (k == 0) throw std::invalid_argument("in_hull: empty hull");

    lp::Problem prob;
    prob.n = k;
    prob.c.assign(static_cast<size_t>(k), 0.0);
    for (int d = 0; d < dim; ++d) {
        Vec row(static_cast<size_t>(k));
        for (int g = 0; g < k; ++g)
            row[static_cast<size_t>(g)] = hull.generators[static_cast<size_t>(g)][static_cast<size_t>(d)];
        prob.add(std::move(row), lp::Rel::Eq, point[static_cast<size_t>(d)]);
    }
    prob.add(Vec(static_cast<size_t>(k), 1.0), lp::Rel::Eq, 1.0);

    InHullResult res;
    const lp::Solution sol = lp::solve(prob);
    if (sol.status == lp::Status::Optimal) {
        res.inside = true;
        res.weights = sol.x;
        return res;
    }
    // Farkas direction: <w, z_g> + w0 <= 0 on generators, <w, point> + w0 > 0.
    Vec w(sol.y.begin(), sol.y.begin() + dim);
    double w0 = sol.y[static_cast<size_t>(dim)];
    double norm = 0.0;
    for (double v : w) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > 0.0) {
        for (double& v : w) v /= norm;
        w0 /= norm;
    }
    res.inside = false;
    res.sep_normal = std::move(w);
    res.sep_offset = w0;
    return res;
}

InteriorityReport origin_interiority(const ModelInstance& m, int reference) {
    InteriorityReport rep;
    rep.full_support = true;
    for (const Vec& row : m.f)
        for (double v : row)
            if (!(v > 0.0)) rep.full_support = false;
    const LikelihoodHull h = hull_of_f(m, reference);
    Mat diffs;
    for (int g = 1; g < h.size(); ++g) {
        Vec d(static_cast<size_t>(h.dim()));
        for (int j = 0; j < h.dim(); ++j)
            d[static_cast<size_t>(j)] = h.generators[static_cast<size_t>(g)][static_cast<size_t>(j)] -
                                        h.generators[0][static_cast<size_t>(j)];
        diffs.push_back(std::move(d));
    }
    rep.dim = diffs.empty() ? 0 : num::matrix_rank(diffs);
    rep.interior = rep.full_support;
    return rep;
}

namespace {

// Wage-level bounds at l for implementing effort i: lower floored at 0
// (limited liability), ties l_j == l_i feasible only when c_i <= c_j.
struct WageBounds {
    double lower = 0.0;
    double upper = kInf;
    bool tie_blocked = false;
};

WageBounds wage_bounds(const Vec& l, int i, const Vec& c) {
    WageBounds b;
    const int ne = static_cast<int>(l.size());
    for (int j = 0; j < ne; ++j) {
        if (j == i) continue;
        const double dl = l[static_cast<size_t>(j)] - l[static_cast<size_t>(i)];
        if (std::abs(dl) <= kEqTol) {
            if (c[static_cast<size_t>(i)] > c[static_cast<size_t>(j)]) b.tie_blocked = true;
            continue;
        }
        const double r = (c[static_cast<size_t>(i)] - c[static_cast<size_t>(j)]) / dl;
        if (dl > 0.0)
            b.lower = std::max(b.lower, r);
        else
            b.upper = std::min(b.upper, r);
    }
    return b;
}

} // namespace

bool cone_membership(const Vec& l, int i, const Vec& costs) {
    if (i < 0 || i >= static_cast<int>(l.size()) || l.size() != costs.size())
        throw std::invalid_argument("cone_membership: bad effort index or sizes");
    const WageBounds b = wage_bounds(l, i, costs);
    return !b.tie_blocked && b.lower <= b.upper + feas_tol();
}

double geometric_cost(const Vec& l, int i, const Vec& costs) {
    if (!cone_membership(l, i, costs)) return kInf;
    const WageBounds b = wage_bounds(l, i, costs);
    return (1.0 - l[static_cast<size_t>(i)]) * b.lower;
}

HullMinResult min_cost_over_hull(const LikelihoodHull& hull, int i, const Vec& costs) {
    const int k = hull.size();
    const int ne = hull.dim();
    if (i < 0 || i >= ne || static_cast<int>(costs.size()) != ne)
        throw std::invalid_argument("min_cost_over_hull: bad effort index or sizes");
    if (k == 0) throw std::invalid_argument("min_cost_over_hull: empty hull");

    const double ci = costs[static_cast<size_t>(i)];
    double cmin = costs[0];
    for (double v : costs) cmin = std::min(cmin, v);

    // A zero wage implements i exactly when no alternative is cheaper; the
    // origin (always in the hull) then attains the global minimum cost 0.
    if (ci <= cmin) {
        HullMinResult res;
        res.feasible = true;
        res.value = 0.0;
        res.minimizer.assign(static_cast<size_t>(ne), 0.0);
        return res;
    }

    const Mat& z = hull.generators;
    HullMinResult best;

    // At any feasible point some cheaper effort j supplies the binding lower
    // bound; enumerating j and solving each linear-fractional subproblem via
    // the Charnes-Cooper substitution (variables y = beta/t, t = 1/(l_j - l_i))
    // covers the whole feasible region. The cross-constraints make bound j
    // dominate every lower bound and respect every upper bound, ties included.
    for (int j = 0; j < ne; ++j) {
        if (costs[static_cast<size_t>(j)] >= ci) continue;
        const double dc = ci - costs[static_cast<size_t>(j)];

        lp::Problem prob;
        prob.n = k + 1; // y_0..y_{k-1}, t
        prob.c.assign(static_cast<size_t>(k + 1), 0.0);
        for (int g = 0; g < k; ++g)
            prob.c[static_cast<size_t>(g)] = -dc * z[static_cast<size_t>(g)][static_cast<size_t>(i)];
        prob.c[static_cast<size_t>(k)] = dc;

        Vec denom(static_cast<size_t>(k + 1), 0.0);
        for (int g = 0; g < k; ++g)
            denom[static_cast<size_t>(g)] = z[static_cast<size_t>(g)][static_cast<size_t>(j)] -
                                            z[static_cast<size_t>(g)][static_cast<size_t>(i)];
        prob.add(std::move(denom), lp::Rel::Eq, 1.0);

        Vec scale(static_cast<size_t>(k + 1), 1.0);
        scale[static_cast<size_t>(k)] = -1.0;
        prob.add(std::move(scale), lp::Rel::Eq, 0.0);

        for (int q = 0; q < ne; ++q) {
            if (q == i || q == j) continue;
            const double dq = ci - costs[static_cast<size_t>(q)];
            Vec row(static_cast<size_t>(k + 1), 0.0);
            for (int g = 0; g < k; ++g) {
                const double dzj = z[static_cast<size_t>(g)][static_cast<size_t>(j)] -
                                   z[static_cast<size_t>(g)][static_cast<size_t>(i)];
                const double dzq = z[static_cast<size_t>(g)][static_cast<size_t>(q)] -
                                   z[static_cast<size_t>(g)][static_cast<size_t>(i)];
                row[static_cast<size_t>(g)] = dq * dzj - dc * dzq;
            }
            prob.add(std::move(row), lp::Rel::Le, 0.0);
        }

        const lp::Solution sol = lp::solve(prob);
        if (sol.status != lp::Status::Optimal) continue;
        const double t = sol.x[static_cast<size_t>(k)];
        if (t <= 1e-12) continue;
        if (!best.feasible || sol.value < best.value) {
            best.feasible = true;
            best.value = sol.value;
            best.minimizer.assign(static_cast<size_t>(ne), 0.0);
            for (int g = 0; g < k; ++g) {
                const double beta = sol.x[static_cast<size_t>(g)] / t;
                for (int d = 0; d < ne; ++d)
                    best.minimizer[static_cast<size_t>(d)] +=
                        beta * z[static_cast<size_t>(g)][static_cast<size_t>(d)];
            }
        }
    }
    return best;
}

} // namespace indopt
