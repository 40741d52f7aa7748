#include "indopt/serde.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <set>
#include <sstream>

namespace indopt {

namespace {

using json = nlohmann::ordered_json;

// nlohmann reports a byte offset; turn it into line/column for the message.
json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        std::size_t line = 1, col = 1;
        const std::size_t stop = std::min(ex.byte, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream os;
        os << "parse error at line " << line << ", column " << col << ": " << ex.what();
        throw ParseError(os.str());
    }
}

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) throw ParseError(where + ": unknown field \"" + it.key() + "\"");
    }
}

const json& field(const json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + ": missing field \"" + key + "\"");
    return *it;
}

double number_of(const json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where + ": expected a number");
    return j.get<double>();
}

std::string string_of(const json& j, const std::string& where) {
    if (!j.is_string()) throw ParseError(where + ": expected a string");
    return j.get<std::string>();
}

Vec vec_of(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of numbers");
    Vec v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number_of(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

Mat mat_of(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of rows");
    Mat m;
    m.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) m.push_back(vec_of(j[i], where + "[" + std::to_string(i) + "]"));
    return m;
}

InformationStructure structure_of(const json& j, const std::string& where) {
    require_object(j, where);
    reject_unknown(j, {"signals", "pi"}, where);
    InformationStructure pi;
    const json& sig = field(j, "signals", where);
    if (!sig.is_array()) throw ParseError(where + ".signals: expected an array of strings");
    for (std::size_t i = 0; i < sig.size(); ++i)
        pi.signals.push_back(string_of(sig[i], where + ".signals[" + std::to_string(i) + "]"));
    pi.pi = mat_of(field(j, "pi", where), where + ".pi");
    return pi;
}

json structure_to_json(const InformationStructure& pi) {
    json j;
    j["signals"] = pi.signals;
    j["pi"] = pi.pi;
    return j;
}

} // namespace

ModelInstance parse_instance(const std::string& text) {
    const json j = parse_text(text);
    require_object(j, "instance");
    reject_unknown(j, {"outcomes", "efforts", "f"}, "instance");
    ModelInstance m;

    const json& outs = field(j, "outcomes", "instance");
    if (!outs.is_array()) throw ParseError("instance.outcomes: expected an array");
    for (std::size_t i = 0; i < outs.size(); ++i) {
        const std::string where = "instance.outcomes[" + std::to_string(i) + "]";
        require_object(outs[i], where);
        reject_unknown(outs[i], {"label", "g"}, where);
        Outcome o;
        o.label = string_of(field(outs[i], "label", where), where + ".label");
        o.g = number_of(field(outs[i], "g", where), where + ".g");
        m.outcomes.push_back(std::move(o));
    }

    const json& effs = field(j, "efforts", "instance");
    if (!effs.is_array()) throw ParseError("instance.efforts: expected an array");
    for (std::size_t i = 0; i < effs.size(); ++i) {
        const std::string where = "instance.efforts[" + std::to_string(i) + "]";
        require_object(effs[i], where);
        reject_unknown(effs[i], {"label", "c"}, where);
        Effort e;
        e.label = string_of(field(effs[i], "label", where), where + ".label");
        e.c = number_of(field(effs[i], "c", where), where + ".c");
        m.efforts.push_back(std::move(e));
    }

    m.f = mat_of(field(j, "f", "instance"), "instance.f");
    return m;
}

std::string emit_instance(const ModelInstance& m) {
    json j;
    j["outcomes"] = json::array();
    for (const Outcome& o : m.outcomes) j["outcomes"].push_back(json{{"label", o.label}, {"g", o.g}});
    j["efforts"] = json::array();
    for (const Effort& e : m.efforts) j["efforts"].push_back(json{{"label", e.label}, {"c", e.c}});
    j["f"] = m.f;
    return j.dump(2) + "\n";
}

InformationStructure parse_structure(const std::string& text) {
    return structure_of(parse_text(text), "structure");
}

std::string emit_structure(const InformationStructure& pi) { return structure_to_json(pi).dump(2) + "\n"; }

ContinuousModel parse_continuous_config(const std::string& text) {
    const json j = parse_text(text);
    require_object(j, "config");
    reject_unknown(j, {"family", "cost", "payoff"}, "config");
    ContinuousModel cm;

    const json& fam = field(j, "family", "config");
    require_object(fam, "config.family");
    const std::string fname = string_of(field(fam, "name", "config.family"), "config.family.name");
    if (fname == "power") {
        reject_unknown(fam, {"name", "a"}, "config.family");
        cm.family = std::make_shared<PowerFamily>(number_of(field(fam, "a", "config.family"), "config.family.a"));
    } else if (fname == "truncexp") {
        reject_unknown(fam, {"name"}, "config.family");
        cm.family = std::make_shared<TruncatedExponentialFamily>();
    } else if (fname == "powermix") {
        reject_unknown(fam, {"name", "a1", "a2", "w"}, "config.family");
        const double a1 = number_of(field(fam, "a1", "config.family"), "config.family.a1");
        const double a2 = number_of(field(fam, "a2", "config.family"), "config.family.a2");
        double w = 0.5;
        if (fam.contains("w")) w = number_of(fam["w"], "config.family.w");
        cm.family = std::make_shared<PowerMixtureFamily>(a1, a2, w);
    } else {
        throw ParseError("config.family.name: unknown family \"" + fname + "\"");
    }

    const json& cost = field(j, "cost", "config");
    require_object(cost, "config.cost");
    reject_unknown(cost, {"name", "kappa", "k"}, "config.cost");
    const std::string cname = string_of(field(cost, "name", "config.cost"), "config.cost.name");
    if (cname != "quad") throw ParseError("config.cost.name: unknown cost \"" + cname + "\"");
    cm.cost.kappa = number_of(field(cost, "kappa", "config.cost"), "config.cost.kappa");
    cm.cost.k = cost.contains("k") ? number_of(cost["k"], "config.cost.k") : 2.0;
    if (!(cm.cost.kappa > 0.0)) throw ParseError("config.cost.kappa: must be positive");
    if (!(cm.cost.k >= 2.0)) throw ParseError("config.cost.k: must be at least 2");

    const json& pay = field(j, "payoff", "config");
    require_object(pay, "config.payoff");
    const std::string pname = string_of(field(pay, "name", "config.payoff"), "config.payoff.name");
    if (pname == "linear") {
        reject_unknown(pay, {"name"}, "config.payoff");
        cm.payoff.kind = PayoffSpec::Kind::Linear;
    } else if (pname == "quadratic") {
        reject_unknown(pay, {"name", "gamma"}, "config.payoff");
        cm.payoff.kind = PayoffSpec::Kind::Quadratic;
        cm.payoff.gamma = number_of(field(pay, "gamma", "config.payoff"), "config.payoff.gamma");
    } else {
        throw ParseError("config.payoff.name: unknown payoff \"" + pname + "\"");
    }
    return cm;
}

Claim parse_claim(const std::string& text) {
    const json j = parse_text(text);
    require_object(j, "claim");
    reject_unknown(j, {"structure", "effort", "wage", "value"}, "claim");
    Claim c;
    c.structure = structure_of(field(j, "structure", "claim"), "claim.structure");
    const json& eff = field(j, "effort", "claim");
    if (!eff.is_number_integer()) throw ParseError("claim.effort: expected an integer index");
    c.effort = eff.get<int>();
    c.wage = vec_of(field(j, "wage", "claim"), "claim.wage");
    c.value = number_of(field(j, "value", "claim"), "claim.value");
    return c;
}

std::string emit_claim(const Claim& c) {
    json j;
    j["structure"] = structure_to_json(c.structure);
    j["effort"] = c.effort;
    j["wage"] = c.wage;
    j["value"] = c.value;
    return j.dump(2) + "\n";
}

} // namespace indopt
