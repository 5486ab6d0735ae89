#include "focklab/symbol_io.hpp"

#include <set>
#include <stdexcept>

namespace focklab::symbols {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::invalid_argument(where + ": " + what);
}

cplx parse_complex(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(where, "expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

int parse_power(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        fail(where, "expected a non-negative integer");
    return j.get<int>();
}

SymbolTerm parse_term(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    static const std::set<std::string> known = {"coeff",    "pow_z",   "pow_zbar", "exp_z",
                                                "exp_z2",   "exp_zbar", "exp_zbar2"};
    for (const auto& item : j.items())
        if (!known.count(item.key())) fail(where + "." + item.key(), "unknown field");
    if (!j.contains("coeff")) fail(where + ".coeff", "required field missing");

    SymbolTerm t;
    t.coeff = parse_complex(j["coeff"], where + ".coeff");
    if (j.contains("pow_z")) t.pow_z = parse_power(j["pow_z"], where + ".pow_z");
    if (j.contains("pow_zbar")) t.pow_zbar = parse_power(j["pow_zbar"], where + ".pow_zbar");
    if (j.contains("exp_z")) t.exp_z = parse_complex(j["exp_z"], where + ".exp_z");
    if (j.contains("exp_z2")) t.exp_z2 = parse_complex(j["exp_z2"], where + ".exp_z2");
    if (j.contains("exp_zbar")) t.exp_zbar = parse_complex(j["exp_zbar"], where + ".exp_zbar");
    if (j.contains("exp_zbar2"))
        t.exp_zbar2 = parse_complex(j["exp_zbar2"], where + ".exp_zbar2");
    return t;
}

nlohmann::ordered_json complex_json(cplx v) {
    return nlohmann::ordered_json::array({v.real(), v.imag()});
}

}  // namespace

SymbolExpr parse_symbol(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    for (const auto& item : j.items())
        if (item.key() != "terms") fail(where + "." + item.key(), "unknown field");
    if (!j.contains("terms") || !j["terms"].is_array())
        fail(where + ".terms", "required array missing");
    SymbolExpr zero;
    SymbolExpr out = zero;
    std::size_t k = 0;
    for (const auto& jt : j["terms"]) {
        const std::string term_where = where + ".terms[" + std::to_string(k++) + "]";
        SymbolTerm t = parse_term(jt, term_where);
        SymbolExpr one;
        one.terms.push_back(t);
        out = add(out, one);
    }
    return out;
}

SymbolExpr parse_symbol_text(const std::string& text, const std::string& where) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        fail(where, std::string("JSON parse error: ") + err.what());
    }
    return parse_symbol(j, where);
}

nlohmann::ordered_json serialize_symbol(const SymbolExpr& s) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    const cplx zero(0.0, 0.0);
    for (const auto& t : s.terms) {
        nlohmann::ordered_json jt;
        jt["coeff"] = complex_json(t.coeff);
        if (t.pow_z != 0) jt["pow_z"] = t.pow_z;
        if (t.pow_zbar != 0) jt["pow_zbar"] = t.pow_zbar;
        if (t.exp_z != zero) jt["exp_z"] = complex_json(t.exp_z);
        if (t.exp_z2 != zero) jt["exp_z2"] = complex_json(t.exp_z2);
        if (t.exp_zbar != zero) jt["exp_zbar"] = complex_json(t.exp_zbar);
        if (t.exp_zbar2 != zero) jt["exp_zbar2"] = complex_json(t.exp_zbar2);
        terms.push_back(jt);
    }
    nlohmann::ordered_json out;
    out["terms"] = terms;
    return out;
}

}  // namespace focklab::symbols
