#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "univalent/errors.hpp"
#include "univalent/families.hpp"

namespace univalent {

using json = nlohmann::ordered_json;

// Coefficients travel as [re, im] pairs: strings ("p/q") in exact mode,
// numbers in float mode. Parsers accept either spelling for either mode.

inline json scalar_to_json(const RatC& v) {
    return json::array({v.re.to_string(), v.im.to_string()});
}

inline json scalar_to_json(const Cplx& v) { return json::array({v.real(), v.imag()}); }

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return Rational::from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number()) return Rational::from_double(j.get<double>());
    throw ConfigError("expected a rational string or a number");
}

inline double double_from_json(const json& j) {
    if (j.is_string()) return Rational::from_string(j.get<std::string>()).to_double();
    if (j.is_number()) return j.get<double>();
    throw ConfigError("expected a number or rational string");
}

template <class K>
K scalar_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigError("coefficient entries must be [re, im] pairs");
    if constexpr (scalar_traits<K>::is_exact)
        return RatC(rational_from_json(j[0]), rational_from_json(j[1]));
    else
        return Cplx(double_from_json(j[0]), double_from_json(j[1]));
}

template <class K>
json coeff_vector_to_json(const std::vector<K>& v) {
    json arr = json::array();
    for (const auto& c : v) arr.push_back(scalar_to_json(c));
    return arr;
}

template <class K>
std::vector<K> coeff_vector_from_json(const json& j) {
    if (!j.is_array()) throw ConfigError("coefficient vector must be a JSON array");
    std::vector<K> v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(scalar_from_json<K>(e));
    return v;
}

// Sample schema: {klass, family, params, seed, coeffs}. For S-class samples
// coeffs lists (a_2, ..., a_N); for Sigma-class, (b_0, ..., b_M).
template <class K>
json sample_to_json(const UnivalentSample<K>& s) {
    json j;
    j["klass"] = s.klass() == FunctionClass::S ? "S" : "Sigma";
    j["family"] = s.family;
    json params = json::object();
    for (const auto& [k, v] : s.params) params[k] = v;
    j["params"] = params;
    if (s.seed)
        j["seed"] = *s.seed;
    else
        j["seed"] = nullptr;
    j["coeffs"] =
        s.klass() == FunctionClass::S ? coeff_vector_to_json(s.s().a) : coeff_vector_to_json(s.sigma().b);
    return j;
}

template <class K>
UnivalentSample<K> sample_from_json(const json& j) {
    UnivalentSample<K> s;
    std::string klass = j.at("klass").get<std::string>();
    s.family = j.value("family", std::string("unknown"));
    if (j.contains("params") && j["params"].is_object())
        for (const auto& [k, v] : j["params"].items()) s.params[k] = double_from_json(v);
    if (j.contains("seed") && !j["seed"].is_null()) s.seed = j["seed"].get<std::uint64_t>();
    auto coeffs = coeff_vector_from_json<K>(j.at("coeffs"));
    if (klass == "S")
        s.coeffs = SCoeffs<K>(std::move(coeffs));
    else if (klass == "Sigma")
        s.coeffs = SigmaCoeffs<K>(std::move(coeffs));
    else
        throw ConfigError("sample klass must be \"S\" or \"Sigma\"");
    s.id = detail::make_id(s.family, s.params, s.seed);
    return s;
}

// True when every coefficient entry in the sample JSON is spelled exactly
// (rational strings), so the exact-mode parser loses nothing.
inline bool sample_json_is_exact(const json& j) {
    if (!j.contains("coeffs")) return false;
    for (const auto& e : j.at("coeffs"))
        for (const auto& part : e)
            if (!part.is_string() && !part.is_number_integer()) return false;
    return true;
}

} // namespace univalent
