#include "indopt/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace indopt {

namespace {
constexpr double kTol = 1e-12;

std::string row_sum_msg(const char* what, int row, double sum) {
    std::ostringstream os;
    os << what << " row " << row << " sums to " << sum << ", expected 1";
    return os.str();
}
} // namespace

std::string ValidationReport::summary() const {
    if (issues.empty()) return "ok";
    std::ostringstream os;
    for (size_t i = 0; i < issues.size(); ++i) {
        if (i) os << "; ";
        os << issues[i];
    }
    return os.str();
}

ValidationReport validate_model(const ModelInstance& m) {
    ValidationReport rep;
    const int nx = m.num_outcomes();
    const int ne = m.num_efforts();
    if (nx < 2) rep.issues.push_back("need at least two outcomes");
    if (ne < 2) rep.issues.push_back("need at least two efforts");
    if (static_cast<int>(m.f.size()) != ne) {
        rep.issues.push_back("technology must have one row per effort");
        return rep;
    }
    for (int i = 0; i < ne; ++i) {
        const Vec& row = m.f[static_cast<size_t>(i)];
        if (static_cast<int>(row.size()) != nx) {
            rep.issues.push_back("technology row " + std::to_string(i) + " has wrong width");
            continue;
        }
        double sum = 0.0;
        for (int j = 0; j < nx; ++j) {
            const double v = row[static_cast<size_t>(j)];
            if (!(v > 0.0)) {
                rep.issues.push_back("technology entry (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") must be strictly positive");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kTol) rep.issues.push_back(row_sum_msg("technology", i, sum));
    }
    if (ne >= 1 && !m.efforts.empty()) {
        if (std::abs(m.efforts[0].c) > kTol)
            rep.issues.push_back("cost of the first effort must be zero");
        for (int i = 0; i < ne; ++i) {
            if (m.efforts[static_cast<size_t>(i)].c < -kTol)
                rep.issues.push_back("cost of effort " + std::to_string(i) + " is negative");
        }
    }
    for (int i = 0; i < nx; ++i) {
        if (!std::isfinite(m.outcomes[static_cast<size_t>(i)].g))
            rep.issues.push_back("payoff of outcome " + std::to_string(i) + " is not finite");
    }
    return rep;
}

ValidationReport validate_structure(const ModelInstance& m, const InformationStructure& pi) {
    ValidationReport rep;
    const int nx = m.num_outcomes();
    const int ns = pi.num_signals();
    if (ns < 1) rep.issues.push_back("need at least one signal");
    if (static_cast<int>(pi.pi.size()) != nx) {
        rep.issues.push_back("structure must have one row per outcome");
        return rep;
    }
    for (int x = 0; x < nx; ++x) {
        const Vec& row = pi.pi[static_cast<size_t>(x)];
        if (static_cast<int>(row.size()) != ns) {
            rep.issues.push_back("structure row " + std::to_string(x) + " has wrong width");
            continue;
        }
        double sum = 0.0;
        for (int s = 0; s < ns; ++s) {
            const double v = row[static_cast<size_t>(s)];
            if (v < -kTol || v > 1.0 + kTol) {
                rep.issues.push_back("structure entry (" + std::to_string(x) + "," +
                                     std::to_string(s) + ") outside [0,1]");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kTol) rep.issues.push_back(row_sum_msg("structure", x, sum));
    }
    return rep;
}

SignalDistribution induce_signal_distribution(const ModelInstance& m, const InformationStructure& pi) {
    const int nx = m.num_outcomes();
    const int ne = m.num_efforts();
    const int ns = pi.num_signals();
    if (static_cast<int>(pi.pi.size()) != nx)
        throw std::invalid_argument("structure/outcome dimension mismatch");
    SignalDistribution d;
    d.p.assign(static_cast<size_t>(ne), Vec(static_cast<size_t>(ns), 0.0));
    for (int e = 0; e < ne; ++e) {
        for (int x = 0; x < nx; ++x) {
            const double fx = m.f[static_cast<size_t>(e)][static_cast<size_t>(x)];
            const Vec& row = pi.pi[static_cast<size_t>(x)];
            if (static_cast<int>(row.size()) != ns)
                throw std::invalid_argument("structure row width mismatch");
            for (int s = 0; s < ns; ++s)
                d.p[static_cast<size_t>(e)][static_cast<size_t>(s)] += fx * row[static_cast<size_t>(s)];
        }
    }
    return d;
}

double expected_output(const ModelInstance& m, int effort) {
    double v = 0.0;
    for (int x = 0; x < m.num_outcomes(); ++x)
        v += m.f[static_cast<size_t>(effort)][static_cast<size_t>(x)] * m.payoff(x);
    return v;
}

InformationStructure full_revelation(const ModelInstance& m) {
    const int nx = m.num_outcomes();
    InformationStructure s;
    s.signals.reserve(static_cast<size_t>(nx));
    for (int x = 0; x < nx; ++x) s.signals.push_back("s_" + m.outcomes[static_cast<size_t>(x)].label);
    s.pi.assign(static_cast<size_t>(nx), Vec(static_cast<size_t>(nx), 0.0));
    for (int x = 0; x < nx; ++x) s.pi[static_cast<size_t>(x)][static_cast<size_t>(x)] = 1.0;
    return s;
}

InformationStructure uninformative(const ModelInstance& m) {
    InformationStructure s;
    s.signals = {"s0"};
    s.pi.assign(static_cast<size_t>(m.num_outcomes()), Vec(1, 1.0));
    return s;
}

InformationStructure binary_structure(const ModelInstance& m, const Vec& q) {
    const int nx = m.num_outcomes();
    if (static_cast<int>(q.size()) != nx)
        throw std::invalid_argument("binary_structure: q must have one entry per outcome");
    InformationStructure s;
    s.signals = {"H", "L"};
    s.pi.assign(static_cast<size_t>(nx), Vec(2, 0.0));
    for (int x = 0; x < nx; ++x) {
        const double qx = q[static_cast<size_t>(x)];
        if (qx < -1e-12 || qx > 1.0 + 1e-12)
            throw std::invalid_argument("binary_structure: q entries must lie in [0,1]");
        s.pi[static_cast<size_t>(x)][0] = qx;
        s.pi[static_cast<size_t>(x)][1] = 1.0 - qx;
    }
    return s;
}

ModelInstance simple_example(double p, double c, double eta) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("simple_example: need 0 < p < 1");
    if (!(eta > 0.0 && eta < 0.5)) throw std::invalid_argument("simple_example: need 0 < eta < 1/2");
    ModelInstance m;
    m.outcomes = {{"fail", 0.0}, {"success", 1.0}};
    m.efforts = {{"low", 0.0}, {"high", c}};
    m.f = {{1.0 - p, p}, {eta, 1.0 - eta}};
    return m;
}

ModelInstance almost_perfect_technology(const Vec& effort_values, const Vec& costs, double eps) {
    const int n = static_cast<int>(effort_values.size());
    if (n < 2) throw std::invalid_argument("almost_perfect_technology: need at least two efforts");
    if (static_cast<int>(costs.size()) != n)
        throw std::invalid_argument("almost_perfect_technology: costs/efforts size mismatch");
    const double diag = 1.0 - (n - 1) * eps;
    if (!(eps > 0.0) || !(diag > 0.0))
        throw std::invalid_argument("almost_perfect_technology: eps outside (0, 1/(m-1))");
    ModelInstance m;
    for (int i = 0; i < n; ++i) {
        std::ostringstream ol, el;
        ol << "x" << i + 1;
        el << "e" << i + 1;
        m.outcomes.push_back({ol.str(), effort_values[static_cast<size_t>(i)]});
        m.efforts.push_back({el.str(), costs[static_cast<size_t>(i)]});
    }
    m.f.assign(static_cast<size_t>(n), Vec(static_cast<size_t>(n), eps));
    for (int i = 0; i < n; ++i) m.f[static_cast<size_t>(i)][static_cast<size_t>(i)] = diag;
    return m;
}

} // namespace indopt
