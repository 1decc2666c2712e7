#pragma once

// JSON encodings: exact integers and rationals as decimal strings, floats as
// {"value", "precision_bits"} pairs.

#include <json.hpp>

#include <string>
#include <vector>

#include "lcpforge/lcpcore/metric.hpp"

namespace lcpforge::json_io {

using Json = nlohmann::ordered_json;

[[noreturn]] inline void schema_error(const std::string& what) { fail(ErrorKind::Schema, what); }

inline const Json& at(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::string str(const Json& j) {
    if (!j.is_string()) schema_error("expected a string, got " + j.dump());
    return j.get<std::string>();
}

inline Json from_integer(const Integer& v) { return v.get_str(); }
inline Integer to_integer(const Json& j) { return parse_integer(str(j)); }

inline Json from_rational(const Rational& v) { return to_string(v); }
inline Rational to_rational(const Json& j) { return parse_rational(str(j)); }

inline Json from_real(const Real& v, long bits) { return Json{{"value", v.to_string()}, {"precision_bits", bits}}; }

inline Json from_poly(const IntPoly& p) {
    Json a = Json::array();
    for (const auto& c : p.coeffs()) a.push_back(from_integer(c));
    return a;
}
inline IntPoly to_poly(const Json& j) {
    if (!j.is_array()) schema_error("polynomial must be an array");
    std::vector<Integer> c;
    for (const auto& v : j) c.push_back(to_integer(v));
    return IntPoly(std::move(c));
}

inline Json from_rationals(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(from_rational(x));
    return a;
}
inline std::vector<Rational> to_rationals(const Json& j) {
    if (!j.is_array()) schema_error("expected an array of rationals");
    std::vector<Rational> out;
    for (const auto& v : j) out.push_back(to_rational(v));
    return out;
}

inline Json from_matrix(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(from_integer(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}
inline IntMatrix to_matrix(const Json& j) {
    if (!j.is_array()) schema_error("matrix must be an array of rows");
    std::vector<std::vector<Integer>> rows;
    for (const auto& r : j) {
        if (!r.is_array()) schema_error("matrix row must be an array");
        std::vector<Integer> row;
        for (const auto& v : r) row.push_back(to_integer(v));
        rows.push_back(std::move(row));
    }
    return IntMatrix(std::move(rows));
}

inline Json from_rat_matrix(const RatMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(from_rational(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}
inline RatMatrix to_rat_matrix(const Json& j) {
    if (!j.is_array()) schema_error("matrix must be an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : j) rows.push_back(to_rationals(r));
    return RatMatrix(std::move(rows));
}

inline Json from_algebraic(const RealAlgebraic& a) {
    return Json{{"poly", from_poly(a.poly)}, {"lo", from_rational(a.lo)}, {"hi", from_rational(a.hi)}, {"minimal", a.minimal}};
}
inline RealAlgebraic to_algebraic(const Json& j) {
    RealAlgebraic a;
    a.poly = to_poly(at(j, "poly"));
    a.lo = to_rational(at(j, "lo"));
    a.hi = to_rational(at(j, "hi"));
    const Json& m = at(j, "minimal");
    if (!m.is_boolean()) schema_error("'minimal' must be a boolean");
    a.minimal = m.get<bool>();
    return a;
}

}  // namespace lcpforge::json_io
