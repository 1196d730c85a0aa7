// Bivector JSON schema:
//   {"n": 3, "terms": [{"i":1,"j":2,"poly":[{"coef":1.0,"exp":[0,0,1]}]}]}
// with 1-based i < j; omitted (i,j) pairs mean pi_ij = 0.
#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cotpath/bivector.hpp"

namespace cotpath {

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

BivectorField bivector_from_json(const nlohmann::json& doc);
BivectorField bivector_from_file(const std::string& path);
nlohmann::json bivector_to_json(const BivectorField& pi);

}  // namespace cotpath
