// Exact multivariate polynomial arithmetic with double coefficients.
// Terms are kept in canonical form: exponent vectors sorted by the map
// ordering, coefficients exactly equal to zero are dropped.
#pragma once

#include <map>
#include <vector>
#include <string>

#include <Eigen/Core>

namespace cotpath {

class Polynomial {
public:
  using Exponents = std::vector<int>;

  explicit Polynomial(int nvars);
  Polynomial(int nvars, std::map<Exponents, double> terms);

  static Polynomial zero(int nvars) { return Polynomial(nvars); }
  static Polynomial constant(int nvars, double c);
  // The coordinate monomial q_var (1-based index).
  static Polynomial variable(int nvars, int var);
  static Polynomial monomial(int nvars, double coef, Exponents exp);

  int nvars() const { return nvars_; }
  const std::map<Exponents, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  double eval(const Eigen::VectorXd& point) const;
  // Exact formal partial derivative with respect to q_var (1-based).
  Polynomial partial(int var) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(double lambda) const;
  Polynomial operator-() const { return scaled(-1.0); }

  bool operator==(const Polynomial& other) const;

  std::string to_string() const;

private:
  void add_term(const Exponents& exp, double coef);

  int nvars_;
  std::map<Exponents, double> terms_;
};

}  // namespace cotpath
