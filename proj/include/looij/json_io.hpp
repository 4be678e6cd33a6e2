#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "looij/polytope.hpp"

namespace looij {

using json = nlohmann::ordered_json;

// malformed input; pointer is the JSON pointer of the offending value
struct ParseError : std::runtime_error {
    std::string pointer;
    ParseError(std::string ptr, const std::string& msg) : std::runtime_error(msg), pointer(std::move(ptr)) {}
};

// On the wire sectors are 1-indexed and rationals are "p/q" strings.
Q q_from_json(const json& j, const std::string& ptr);
long int_from_json(const json& j, const std::string& ptr);
json q_json(const Q& q);

Fan fan_from_json(const json& j, const std::string& ptr = "");
json fan_json(const Fan& f);

TropPoint point_from_json(const Fan& f, const json& j, const std::string& ptr);
json point_json(const TropPoint& p);
std::vector<TropPoint> points_from_json(const Fan& f, const json& j, const std::string& ptr);

json iv_json(const IV& v);
IV iv_from_json(const json& j, const std::string& ptr);
json vec_json(const Vec2& v);

json series_terms_json(const Series& s, int nvars);  // [{"coeff","n","cls"}]
json class_poly_json(const ClassPoly& c, int nvars);  // [{"c","cls"}]
ClassPoly class_poly_from_json(const json& j, const std::string& ptr);

json function_json(const TropicalFunction& t);
json diagram_json(const Diagram& d);

ThetaElement theta_from_json(const Fan& f, const json& j, const std::string& ptr);
json theta_json(const ThetaElement& t, int nvars);
json specialized_json(const Specialized& s);

StrongPolytope polytope_from_json(const Fan& f, const json& j, const std::string& ptr);
json polytope_json(const StrongPolytope& P);

BoundaryDivisor divisor_from_json(const Fan& f, const json& j, const std::string& ptr);

}  // namespace looij
