#include "cotpath/json_io.hpp"

#include <fstream>

namespace cotpath {

BivectorField bivector_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("bivector: top level must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw ParseError("bivector: missing or non-integer field 'n'");
  const int n = doc["n"].get<int>();
  if (n < 1) throw ParseError("bivector: 'n' must be >= 1");
  BivectorField pi(n);
  if (!doc.contains("terms")) return pi;
  if (!doc["terms"].is_array()) throw ParseError("bivector: 'terms' must be an array");
  for (const auto& term : doc["terms"]) {
    if (!term.contains("i") || !term.contains("j"))
      throw ParseError("bivector: term missing 'i' or 'j'");
    const int i = term["i"].get<int>();
    const int j = term["j"].get<int>();
    if (i < 1 || j < 1 || i > n || j > n || i >= j)
      throw ParseError("bivector: term indices need 1 <= i < j <= n");
    if (!term.contains("poly") || !term["poly"].is_array())
      throw ParseError("bivector: term missing 'poly' array");
    Polynomial poly(n);
    for (const auto& mono : term["poly"]) {
      if (!mono.contains("coef") || !mono.contains("exp"))
        throw ParseError("bivector: monomial missing 'coef' or 'exp'");
      const double coef = mono["coef"].get<double>();
      const auto& exp_json = mono["exp"];
      if (!exp_json.is_array() || static_cast<int>(exp_json.size()) != n)
        throw ParseError("bivector: 'exp' must be an array of length n");
      Polynomial::Exponents exp(n);
      for (int k = 0; k < n; ++k) {
        exp[k] = exp_json[k].get<int>();
        if (exp[k] < 0) throw ParseError("bivector: negative exponent in 'exp'");
      }
      poly = poly + Polynomial::monomial(n, coef, exp);
    }
    pi.set_entry(i, j, poly);
  }
  return pi;
}

BivectorField bivector_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open bivector file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bivector JSON parse failure: ") + e.what());
  }
  return bivector_from_json(doc);
}

nlohmann::json bivector_to_json(const BivectorField& pi) {
  nlohmann::json doc;
  doc["n"] = pi.n();
  doc["terms"] = nlohmann::json::array();
  for (int i = 1; i <= pi.n(); ++i)
    for (int j = i + 1; j <= pi.n(); ++j) {
      const Polynomial poly = pi.entry(i, j);
      if (poly.is_zero()) continue;
      nlohmann::json term;
      term["i"] = i;
      term["j"] = j;
      term["poly"] = nlohmann::json::array();
      for (const auto& [exp, coef] : poly.terms())
        term["poly"].push_back({{"coef", coef}, {"exp", exp}});
      doc["terms"].push_back(term);
    }
  return doc;
}

}  // namespace cotpath
