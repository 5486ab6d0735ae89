#pragma once

#include <string>

// vendored single-header nlohmann/json
#include "json.hpp"

#include "focklab/symbols.hpp"

namespace focklab::symbols {

// JSON form of a symbol:
//   {"terms": [{"coeff": [re, im], "pow_z": int, "pow_zbar": int,
//               "exp_z": [re, im], "exp_z2": [re, im],
//               "exp_zbar": [re, im], "exp_zbar2": [re, im]}, ...]}
// coeff is required per term; omitted exponent/power fields are zero.
// Unknown keys are rejected; diagnostics name the offending field.
SymbolExpr parse_symbol(const nlohmann::json& j, const std::string& where = "symbol");
SymbolExpr parse_symbol_text(const std::string& text, const std::string& where = "symbol");

nlohmann::ordered_json serialize_symbol(const SymbolExpr& s);

}  // namespace focklab::symbols
