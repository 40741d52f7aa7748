#pragma once

#include "indopt/continuous.hpp"
#include "indopt/model.hpp"
#include "indopt/oracle.hpp"

#include <stdexcept>
#include <string>

namespace indopt {

/** Malformed input: syntax errors carry line/column, schema errors the offending key. */
class ParseError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/**
 * Instance document:
 *   {"outcomes": [{"label": "...", "g": real}, ...],
 *    "efforts":  [{"label": "...", "c": real}, ...],
 *    "f": [[...], ...]}            // row per effort, column per outcome
 * Unknown fields are rejected everywhere.
 */
ModelInstance parse_instance(const std::string& text);
std::string emit_instance(const ModelInstance& m);

/** Structure document: {"signals": ["...", ...], "pi": [[...], ...]} (row per outcome). */
InformationStructure parse_structure(const std::string& text);
std::string emit_structure(const InformationStructure& pi);

/**
 * Continuous configuration:
 *   {"family": {"name": "power", "a": 3.0}
 *              | {"name": "truncexp"}
 *              | {"name": "powermix", "a1": .., "a2": .., "w": ..},
 *    "cost":   {"name": "quad", "kappa": real[, "k": real]},
 *    "payoff": {"name": "linear"} | {"name": "quadratic", "gamma": real}}
 */
ContinuousModel parse_continuous_config(const std::string& text);

/** Claim document: {"structure": {...}, "effort": int, "wage": [...], "value": real}. */
Claim parse_claim(const std::string& text);
std::string emit_claim(const Claim& c);

} // namespace indopt
