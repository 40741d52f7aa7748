// indopt: solver CLI for the indicator-design contracting game.
//
// Exit codes: 0 success, 2 malformed input or failed validation,
// 3 infeasibility verdict (not extractable / refuted / no interior
// equilibrium), 1 internal error. Reports are deterministic JSON: field
// order fixed, no timestamps, identical runs give identical bytes.

#include "indopt/agent.hpp"
#include "indopt/config.hpp"
#include "indopt/constructors.hpp"
#include "indopt/continuous.hpp"
#include "indopt/errors.hpp"
#include "indopt/geometry.hpp"
#include "indopt/model.hpp"
#include "indopt/oracle.hpp"
#include "indopt/principal.hpp"
#include "indopt/serde.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using indopt::Vec;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw indopt::ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_report(const json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report: " + out_path);
    out << text;
}

json structure_json(const indopt::InformationStructure& pi) {
    json j;
    j["signals"] = pi.signals;
    j["pi"] = pi.pi;
    return j;
}

json outcome_json(const indopt::ModelInstance& m, const indopt::SubgameOutcome& out) {
    json j;
    j["effort"] = out.effort;
    j["effort_label"] = m.efforts[out.effort].label;
    j["principal_payoff"] = out.principal_payoff;
    j["agent_payoff"] = out.agent_payoff;
    j["wage"] = out.wage;
    json audits = json::array();
    for (const auto& a : out.per_effort) {
        json row;
        row["effort"] = a.effort;
        row["implementable"] = a.implementable;
        row["wage_cost"] = a.implementable ? json(a.wage_cost) : json();
        row["principal_payoff"] = a.implementable ? json(a.principal_payoff) : json();
        row["agent_payoff"] = a.implementable ? json(a.agent_payoff) : json();
        audits.push_back(std::move(row));
    }
    j["per_effort"] = std::move(audits);
    return j;
}

// Effort argument: integer index or effort label.
int resolve_effort(const indopt::ModelInstance& m, const std::string& arg) {
    for (int e = 0; e < m.num_efforts(); ++e)
        if (m.efforts[e].label == arg) return e;
    try {
        std::size_t pos = 0;
        const int idx = std::stoi(arg, &pos);
        if (pos == arg.size() && idx >= 0 && idx < m.num_efforts()) return idx;
    } catch (const std::exception&) {
    }
    throw indopt::ParseError("unknown effort \"" + arg + "\"");
}

indopt::ModelInstance load_instance(const std::string& path) {
    indopt::ModelInstance m = indopt::parse_instance(slurp(path));
    const indopt::ValidationReport rep = indopt::validate_model(m);
    if (!rep.ok()) throw indopt::ParseError("instance invalid: " + rep.summary());
    return m;
}

indopt::InformationStructure load_structure(const indopt::ModelInstance& m, const std::string& path) {
    indopt::InformationStructure pi = indopt::parse_structure(slurp(path));
    const indopt::ValidationReport rep = indopt::validate_structure(m, pi);
    if (!rep.ok()) throw indopt::ParseError("structure invalid: " + rep.summary());
    return pi;
}

indopt::ContinuousModel continuous_from_flags(const std::string& family, double shape, double shape2,
                                              double mixw, const std::string& cost,
                                              const std::string& payoff) {
    json j;
    if (family == "power") {
        j["family"] = {{"name", "power"}, {"a", shape}};
    } else if (family == "truncexp") {
        j["family"] = {{"name", "truncexp"}};
    } else if (family == "powermix") {
        j["family"] = {{"name", "powermix"}, {"a1", shape}, {"a2", shape2}, {"w", mixw}};
    } else {
        throw indopt::ParseError("unknown family \"" + family + "\"");
    }
    // cost form "quad:kappa" or "quad:kappa:k"
    {
        std::istringstream is(cost);
        std::string name, kappa, k;
        std::getline(is, name, ':');
        std::getline(is, kappa, ':');
        std::getline(is, k, ':');
        if (name != "quad" || kappa.empty()) throw indopt::ParseError("cost must be quad:<kappa>[:<k>]");
        json c = {{"name", "quad"}, {"kappa", std::stod(kappa)}};
        if (!k.empty()) c["k"] = std::stod(k);
        j["cost"] = std::move(c);
    }
    // payoff form "linear" or "quadratic:gamma"
    {
        std::istringstream is(payoff);
        std::string name, gamma;
        std::getline(is, name, ':');
        std::getline(is, gamma, ':');
        if (name == "linear" && gamma.empty()) {
            j["payoff"] = {{"name", "linear"}};
        } else if (name == "quadratic" && !gamma.empty()) {
            j["payoff"] = {{"name", "quadratic"}, {"gamma", std::stod(gamma)}};
        } else {
            throw indopt::ParseError("payoff must be linear or quadratic:<gamma>");
        }
    }
    return indopt::parse_continuous_config(j.dump());
}

// ---------------------------------------------------------------------------
// Subcommand bodies (each returns the process exit code).

int cmd_validate(const std::string& instance_path, const std::string& structure_path,
                 const std::string& out_path) {
    json rep;
    rep["command"] = "validate";
    indopt::ModelInstance m = indopt::parse_instance(slurp(instance_path));
    const indopt::ValidationReport mv = indopt::validate_model(m);
    rep["valid"] = mv.ok();
    rep["issues"] = mv.issues;
    bool ok = mv.ok();
    if (!structure_path.empty()) {
        indopt::InformationStructure pi = indopt::parse_structure(slurp(structure_path));
        const indopt::ValidationReport sv = indopt::validate_structure(m, pi);
        rep["structure_valid"] = sv.ok();
        rep["structure_issues"] = sv.issues;
        ok = ok && sv.ok();
    }
    write_report(rep, out_path);
    return ok ? kExitOk : kExitInvalid;
}

int cmd_solve_discrete(const std::string& instance_path, const std::string& structure_path,
                       bool agent_optimal, long long budget, unsigned long long seed, int restarts,
                       int threads, const std::string& out_path) {
    const indopt::ModelInstance m = load_instance(instance_path);
    json rep;
    rep["command"] = "solve-discrete";
    if (agent_optimal) {
        indopt::OptimizeConfig cfg;
        cfg.seed = seed;
        if (budget > 0) cfg.budget = budget;
        if (restarts > 0) cfg.restarts = restarts;
        cfg.threads = threads;
        const indopt::AgentSolution sol = indopt::optimize(m, cfg);
        rep["mode"] = "agent-optimal";
        rep["structure"] = structure_json(sol.structure);
        rep["agent_value"] = sol.agent_value;
        rep["evaluations"] = sol.evaluations;
        rep["restarts"] = sol.restarts_used;
        rep["outcome"] = outcome_json(m, sol.outcome);
    } else {
        indopt::InformationStructure pi =
            structure_path.empty() ? indopt::full_revelation(m) : load_structure(m, structure_path);
        const indopt::SubgameOutcome out = indopt::best_effort(m, pi);
        rep["mode"] = structure_path.empty() ? "full-revelation" : "given-structure";
        rep["structure"] = structure_json(pi);
        rep["outcome"] = outcome_json(m, out);
    }
    write_report(rep, out_path);
    return kExitOk;
}

int cmd_extract_check(const std::string& instance_path, const std::string& out_path) {
    const indopt::ModelInstance m = load_instance(instance_path);
    const indopt::ExtractionReport er = indopt::full_extraction(m);
    json rep;
    rep["command"] = "extract-check";
    rep["extractable"] = er.extractable;
    rep["reason"] = er.reason;
    if (er.extractable) {
        const auto& c = er.certificate;
        json cj;
        cj["e_star"] = c.e_star;
        cj["l_star"] = c.l_star;
        cj["alpha"] = c.alpha;
        cj["structure"] = structure_json(c.structure);
        cj["principal_payoff"] = c.principal_payoff;
        cj["agent_payoff"] = c.agent_payoff;
        cj["outcome"] = outcome_json(m, c.outcome);
        rep["certificate"] = std::move(cj);
    } else if (er.has_witness) {
        rep["separator_normal"] = er.sep_normal;
        rep["separator_offset"] = er.sep_offset;
    }
    write_report(rep, out_path);
    return er.extractable ? kExitOk : kExitInfeasible;
}

int cmd_construct_signal(const std::string& instance_path, const std::string& reference,
                         const std::string& points_path, const std::string& out_path) {
    const indopt::ModelInstance m = load_instance(instance_path);
    const int ref = resolve_effort(m, reference);

    // Points document: {"points": [[...], ...], "labels": ["..."]} with each
    // point a full-length likelihood vector (reference component 0).
    const json doc = json::parse(slurp(points_path));
    if (!doc.is_object() || !doc.contains("points"))
        throw indopt::ParseError("points file needs a \"points\" array");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (it.key() != "points" && it.key() != "labels")
            throw indopt::ParseError("points file: unknown field \"" + it.key() + "\"");
    std::vector<Vec> pts;
    for (const auto& row : doc.at("points")) pts.push_back(row.get<Vec>());
    std::vector<std::string> labels;
    if (doc.contains("labels")) labels = doc.at("labels").get<std::vector<std::string>>();

    const indopt::InformationStructure pi = indopt::structure_from_hull(m, ref, pts, labels);
    const indopt::SignalDistribution d = indopt::induce_signal_distribution(m, pi);
    json rep;
    rep["command"] = "construct-signal";
    rep["reference"] = ref;
    rep["structure"] = structure_json(pi);
    rep["induced_p"] = d.p;
    write_report(rep, out_path);
    return kExitOk;
}

int cmd_reduce_binary(const std::string& instance_path, const std::string& structure_path,
                      const std::string& out_path) {
    const indopt::ModelInstance m = load_instance(instance_path);
    const indopt::InformationStructure pi = load_structure(m, structure_path);
    const indopt::SubgameOutcome before = indopt::best_effort(m, pi);
    const indopt::InformationStructure reduced = indopt::reduce_to_binary(m, pi, before.effort);
    const indopt::SubgameOutcome after = indopt::best_effort(m, reduced);
    json rep;
    rep["command"] = "reduce-binary";
    rep["effort"] = before.effort;
    rep["expected_wage_before"] = before.agent_payoff + m.cost(before.effort);
    rep["expected_wage_after"] = after.agent_payoff + m.cost(after.effort);
    rep["structure"] = structure_json(reduced);
    rep["outcome"] = outcome_json(m, after);
    write_report(rep, out_path);
    return kExitOk;
}

int cmd_solve_continuous(const indopt::ContinuousModel& cm, const std::string& out_path) {
    json rep;
    rep["command"] = "solve-continuous";
    rep["family"] = cm.family->name();

    const indopt::AssumptionReport ar = indopt::verify_assumption(cm);
    json aj;
    aj["pass"] = ar.pass;
    aj["monotone_ok"] = ar.monotone_ok;
    aj["convex_ok"] = ar.convex_ok;
    aj["detail"] = ar.detail;
    if (!ar.pass) {
        aj["witness_e"] = ar.witness_e;
        aj["witness_x"] = ar.witness_x;
    }
    rep["assumption"] = std::move(aj);

    const indopt::FirstBest fb = indopt::first_best_continuous(cm);
    rep["first_best"] = {{"effort", fb.effort}, {"value", fb.value}, {"foc_residual", fb.foc_residual}};

    try {
        const indopt::ContinuousEquilibrium eq = indopt::solve_equilibrium(cm);
        json ej;
        ej["kind"] = eq.structure.kind == indopt::ThresholdStructure::Kind::Single ? "single" : "double";
        ej["lo"] = eq.structure.lo;
        ej["hi"] = eq.structure.hi;
        ej["effort"] = eq.effort;
        ej["lambda"] = eq.lambda;
        ej["expected_wage"] = eq.expected_wage;
        ej["wage_high"] = eq.wage_high;
        ej["U_P"] = eq.U_P;
        ej["U_A"] = eq.U_A;
        ej["agent_foc_residual"] = eq.agent_foc_residual;
        ej["principal_foc_residual"] = eq.principal_foc_residual;
        rep["equilibrium"] = std::move(ej);
        rep["accounting_gap"] =
            std::abs(eq.U_P + eq.U_A + cm.c(eq.effort) - cm.expected_payoff(eq.effort));
        write_report(rep, out_path);
        return kExitOk;
    } catch (const indopt::NoInteriorEquilibrium& ex) {
        rep["equilibrium"] = json();
        rep["error"] = std::string("no-interior-equilibrium: ") + ex.what();
        write_report(rep, out_path);
        return kExitInfeasible;
    }
}

int cmd_oracle(const std::string& instance_path, double delta, const std::string& verify_path,
               unsigned long long cap, int threads, const std::string& out_path) {
    const indopt::ModelInstance m = load_instance(instance_path);
    json rep;
    rep["command"] = "oracle";
    rep["delta"] = delta;
    if (verify_path.empty()) {
        const indopt::OracleReport orep = indopt::grid_search_binary(m, delta, cap, threads);
        rep["evaluations"] = orep.evaluations;
        rep["best_value"] = orep.best_value;
        rep["best_q"] = orep.best_q;
        rep["best_outcome"] = outcome_json(m, orep.best_outcome);
        write_report(rep, out_path);
        return kExitOk;
    }
    const indopt::Claim claim = indopt::parse_claim(slurp(verify_path));
    const indopt::VerifyReport vr = indopt::verify_solution(m, claim, delta);
    rep["verified"] = vr.verified;
    rep["reason"] = vr.reason;
    rep["grid_best"] = vr.grid_best;
    rep["resolution_bound"] = vr.bound;
    if (!vr.counterexample_q.empty()) rep["counterexample_q"] = vr.counterexample_q;
    write_report(rep, out_path);
    return vr.verified ? kExitOk : kExitInfeasible;
}

// Projection plot of the likelihood geometry: CSV of the generators plus a
// self-contained SVG of the 2-D projection (axes chosen by --axes).
int cmd_plot(const std::string& instance_path, const std::string& reference, const std::string& axes_arg,
             const std::string& csv_path, const std::string& svg_path, const std::string& out_path) {
    const indopt::ModelInstance m = load_instance(instance_path);
    const int ref = reference.empty() ? m.num_efforts() - 1 : resolve_effort(m, reference);
    const indopt::LikelihoodHull hull = indopt::hull_of_f(m, ref);

    int ax = -1, ay = -1;
    {
        std::istringstream is(axes_arg);
        std::string a, b;
        std::getline(is, a, ',');
        std::getline(is, b, ',');
        if (!a.empty()) ax = std::stoi(a);
        if (!b.empty()) ay = std::stoi(b);
    }
    if (ax < 0 || ay < 0) { // default: first two non-reference coordinates
        ax = ref == 0 ? 1 : 0;
        ay = ax + 1 == ref ? ax + 2 : ax + 1;
        if (ay >= m.num_efforts()) ay = ax; // |E| = 2: only one live axis
    }
    if (ax >= m.num_efforts() || ay >= m.num_efforts()) throw indopt::ParseError("axes out of range");

    struct Row {
        std::string label, type;
        Vec l;
    };
    std::vector<Row> rows;
    for (int k = 0; k < hull.size(); ++k) rows.push_back({hull.labels[k], "outcome", hull.generators[k]});
    rows.push_back({"origin", "origin", Vec(m.num_efforts(), 0.0)});
    try {
        const indopt::ExtractionReport er = indopt::full_extraction(m);
        if (er.extractable) rows.push_back({"l_star", "target", er.certificate.l_star});
    } catch (const std::exception&) {
        // geometry plot stays useful without an extraction target
    }

    {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write csv: " + csv_path);
        csv << "label,type";
        for (int e = 0; e < m.num_efforts(); ++e) csv << ",l" << (e + 1);
        csv << "\n";
        csv.setf(std::ios::fmtflags(0), std::ios::floatfield);
        csv.precision(17);
        for (const Row& r : rows) {
            csv << r.label << "," << r.type;
            for (double v : r.l) csv << "," << v;
            csv << "\n";
        }
    }

    if (!svg_path.empty()) {
        // Monotone-chain hull of the projected generators.
        std::vector<std::pair<double, double>> pts;
        for (int k = 0; k < hull.size(); ++k)
            pts.push_back({hull.generators[k][ax], hull.generators[k][ay]});
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        auto cross = [](const std::pair<double, double>& o, const std::pair<double, double>& a,
                        const std::pair<double, double>& b) {
            return (a.first - o.first) * (b.second - o.second) -
                   (a.second - o.second) * (b.first - o.first);
        };
        std::vector<std::pair<double, double>> ring;
        if (pts.size() >= 3) {
            std::vector<std::pair<double, double>> lower, upper;
            for (const auto& p : pts) {
                while (lower.size() >= 2 && cross(lower[lower.size() - 2], lower.back(), p) <= 0)
                    lower.pop_back();
                lower.push_back(p);
            }
            for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
                while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), *it) <= 0)
                    upper.pop_back();
                upper.push_back(*it);
            }
            lower.pop_back();
            upper.pop_back();
            ring = lower;
            ring.insert(ring.end(), upper.begin(), upper.end());
        } else {
            ring = pts;
        }

        double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
        for (const Row& r : rows) {
            xmin = std::min(xmin, r.l[ax]);
            xmax = std::max(xmax, r.l[ax]);
            ymin = std::min(ymin, r.l[ay]);
            ymax = std::max(ymax, r.l[ay]);
        }
        const double padx = 0.1 * std::max(1e-9, xmax - xmin), pady = 0.1 * std::max(1e-9, ymax - ymin);
        xmin -= padx;
        xmax += padx;
        ymin -= pady;
        ymax += pady;
        const double W = 640, H = 480;
        auto sx = [&](double x) { return (x - xmin) / (xmax - xmin) * W; };
        auto sy = [&](double y) { return H - (y - ymin) / (ymax - ymin) * H; };

        std::ofstream svg(svg_path, std::ios::binary);
        if (!svg) throw std::runtime_error("cannot write svg: " + svg_path);
        svg.precision(10);
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
            << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
        svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
        if (ring.size() >= 3) {
            svg << "<polygon points=\"";
            for (const auto& p : ring) svg << sx(p.first) << "," << sy(p.second) << " ";
            svg << "\" fill=\"#cfe2ff\" stroke=\"#3366cc\" stroke-width=\"1.5\"/>\n";
        }
        for (const Row& r : rows) {
            const char* fill = r.type == "outcome" ? "#3366cc" : (r.type == "origin" ? "#222222" : "#cc3333");
            svg << "<circle cx=\"" << sx(r.l[ax]) << "\" cy=\"" << sy(r.l[ay]) << "\" r=\"4\" fill=\"" << fill
                << "\"/>\n";
            svg << "<text x=\"" << sx(r.l[ax]) + 6 << "\" y=\"" << sy(r.l[ay]) - 6
                << "\" font-size=\"12\" font-family=\"sans-serif\">" << r.label << "</text>\n";
        }
        svg << "</svg>\n";
    }

    json rep;
    rep["command"] = "plot";
    rep["reference"] = ref;
    rep["axes"] = {ax, ay};
    rep["csv"] = csv_path;
    rep["svg"] = svg_path.empty() ? json() : json(svg_path);
    rep["rows"] = rows.size();
    write_report(rep, out_path);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver for the indicator-design game: who measures what, and what it costs"};
    app.require_subcommand(1);

    std::string instance_path, structure_path, out_path, reference, points_path, verify_path;
    std::string config_path, family = "power", cost_spec = "quad:0.5", payoff_spec = "linear";
    std::string axes_arg, csv_path, svg_path;
    double shape = 3.0, shape2 = 8.0, mixw = 0.5, delta = 0.02;
    double tol_lp = 1e-9, tol_hull = 1e-9;
    long long budget = 0;
    unsigned long long seed = 20250815, cap = 10'000'000;
    int restarts = 0, threads = 0;
    bool agent_optimal = false;

    app.add_option("--tol-lp", tol_lp, "Wage-program feasibility tolerance")->check(CLI::PositiveNumber);
    app.add_option("--tol-hull", tol_hull, "Hull-membership tolerance")->check(CLI::PositiveNumber);

    auto* validate = app.add_subcommand("validate", "Check an instance (and optionally a structure)");
    validate->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    validate->add_option("--structure", structure_path)->check(CLI::ExistingFile);
    validate->add_option("--out", out_path);

    auto* solved = app.add_subcommand("solve-discrete", "Solve the wage/effort subgame for a structure");
    solved->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    solved->add_option("--structure", structure_path, "Structure file (default: full revelation)")
        ->check(CLI::ExistingFile);
    solved->add_flag("--agent-optimal", agent_optimal, "Search for the agent-optimal structure instead");
    solved->add_option("--budget", budget, "Evaluation budget for the search");
    solved->add_option("--seed", seed, "Search seed");
    solved->add_option("--restarts", restarts, "Search restarts");
    solved->add_option("--threads", threads, "Worker threads (0 = hardware)");
    solved->add_option("--out", out_path);

    auto* extract = app.add_subcommand("extract-check", "Test for full surplus extraction");
    extract->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    extract->add_option("--out", out_path);

    auto* construct = app.add_subcommand("construct-signal", "Build a structure from hull points");
    construct->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    construct->add_option("--reference", reference, "Reference effort (label or index)")->required();
    construct->add_option("--points", points_path, "JSON file with target points")
        ->required()
        ->check(CLI::ExistingFile);
    construct->add_option("--out", out_path);

    auto* reduce = app.add_subcommand("reduce-binary", "Collapse a structure to two signals");
    reduce->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    reduce->add_option("--structure", structure_path)->required()->check(CLI::ExistingFile);
    reduce->add_option("--out", out_path);

    auto* cont = app.add_subcommand("solve-continuous", "Solve the continuous threshold model");
    cont->add_option("--config", config_path, "JSON model configuration")->check(CLI::ExistingFile);
    cont->add_option("--family", family, "power | truncexp | powermix");
    cont->add_option("--shape", shape, "Shape a (power) or a1 (powermix)");
    cont->add_option("--shape2", shape2, "Second shape a2 (powermix)");
    cont->add_option("--mix-weight", mixw, "Mixture weight on the first component");
    cont->add_option("--cost", cost_spec, "quad:<kappa>[:<k>]");
    cont->add_option("--payoff", payoff_spec, "linear | quadratic:<gamma>");
    cont->add_option("--out", out_path);

    auto* oracle = app.add_subcommand("oracle", "Brute-force grid search / claim verification");
    oracle->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    oracle->add_option("--delta", delta, "Grid step");
    oracle->add_option("--verify", verify_path, "Claim file to verify")->check(CLI::ExistingFile);
    oracle->add_option("--cap", cap, "Enumeration cap");
    oracle->add_option("--threads", threads, "Worker threads (0 = hardware)");
    oracle->add_option("--out", out_path);

    auto* plot = app.add_subcommand("plot", "Emit likelihood-geometry CSV (and SVG projection)");
    plot->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    plot->add_option("--reference", reference, "Reference effort (default: last)");
    plot->add_option("--axes", axes_arg, "Two coordinate indices, e.g. 0,1");
    plot->add_option("--csv", csv_path, "CSV output path")->required();
    plot->add_option("--svg", svg_path, "SVG output path (optional)");
    plot->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }
    indopt::tolerances().lp = tol_lp;
    indopt::tolerances().hull = tol_hull;

    try {
        if (validate->parsed()) return cmd_validate(instance_path, structure_path, out_path);
        if (solved->parsed())
            return cmd_solve_discrete(instance_path, structure_path, agent_optimal, budget, seed, restarts,
                                      threads, out_path);
        if (extract->parsed()) return cmd_extract_check(instance_path, out_path);
        if (construct->parsed())
            return cmd_construct_signal(instance_path, reference, points_path, out_path);
        if (reduce->parsed()) return cmd_reduce_binary(instance_path, structure_path, out_path);
        if (cont->parsed()) {
            const indopt::ContinuousModel cm =
                config_path.empty()
                    ? continuous_from_flags(family, shape, shape2, mixw, cost_spec, payoff_spec)
                    : indopt::parse_continuous_config(slurp(config_path));
            return cmd_solve_continuous(cm, out_path);
        }
        if (oracle->parsed()) return cmd_oracle(instance_path, delta, verify_path, cap, threads, out_path);
        if (plot->parsed())
            return cmd_plot(instance_path, reference, axes_arg, csv_path, svg_path, out_path);
        std::cerr << "no subcommand\n";
        return kExitInternal;
    } catch (const indopt::ParseError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitInvalid;
    } catch (const nlohmann::json::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return kExitInternal;
    }
}
