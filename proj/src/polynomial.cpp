#include "cotpath/polynomial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cotpath {

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
  if (nvars < 1) throw std::invalid_argument("Polynomial: nvars must be >= 1");
}

Polynomial::Polynomial(int nvars, std::map<Exponents, double> terms)
    : nvars_(nvars) {
  if (nvars < 1) throw std::invalid_argument("Polynomial: nvars must be >= 1");
  for (auto& [exp, coef] : terms) {
    if (static_cast<int>(exp.size()) != nvars)
      throw std::invalid_argument("Polynomial: exponent vector length mismatch");
    for (int e : exp)
      if (e < 0) throw std::invalid_argument("Polynomial: negative exponent");
    add_term(exp, coef);
  }
}

Polynomial Polynomial::constant(int nvars, double c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int var) {
  if (var < 1 || var > nvars)
    throw std::out_of_range("Polynomial::variable: index out of range");
  Exponents exp(nvars, 0);
  exp[var - 1] = 1;
  Polynomial p(nvars);
  p.add_term(exp, 1.0);
  return p;
}

Polynomial Polynomial::monomial(int nvars, double coef, Exponents exp) {
  if (static_cast<int>(exp.size()) != nvars)
    throw std::invalid_argument("Polynomial::monomial: exponent length mismatch");
  Polynomial p(nvars);
  p.add_term(exp, coef);
  return p;
}

void Polynomial::add_term(const Exponents& exp, double coef) {
  auto it = terms_.find(exp);
  if (it == terms_.end()) {
    if (coef != 0.0) terms_.emplace(exp, coef);
    return;
  }
  it->second += coef;
  if (it->second == 0.0) terms_.erase(it);
}

double Polynomial::eval(const Eigen::VectorXd& point) const {
  if (point.size() != nvars_)
    throw std::invalid_argument("Polynomial::eval: point dimension mismatch");
  double total = 0.0;
  for (const auto& [exp, coef] : terms_) {
    double m = coef;
    for (int i = 0; i < nvars_; ++i)
      for (int e = 0; e < exp[i]; ++e) m *= point[i];
    total += m;
  }
  return total;
}

Polynomial Polynomial::partial(int var) const {
  if (var < 1 || var > nvars_)
    throw std::out_of_range("Polynomial::partial: index out of range");
  Polynomial out(nvars_);
  const int k = var - 1;
  for (const auto& [exp, coef] : terms_) {
    if (exp[k] == 0) continue;
    Exponents e = exp;
    const double c = coef * e[k];
    e[k] -= 1;
    out.add_term(e, c);
  }
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (nvars_ != other.nvars_)
    throw std::invalid_argument("Polynomial::operator+: nvars mismatch");
  Polynomial out = *this;
  for (const auto& [exp, coef] : other.terms_) out.add_term(exp, coef);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other.scaled(-1.0);
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (nvars_ != other.nvars_)
    throw std::invalid_argument("Polynomial::operator*: nvars mismatch");
  Polynomial out(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      Exponents e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::scaled(double lambda) const {
  Polynomial out(nvars_);
  if (lambda == 0.0) return out;
  for (const auto& [exp, coef] : terms_) out.add_term(exp, lambda * coef);
  return out;
}

bool Polynomial::operator==(const Polynomial& other) const {
  return nvars_ == other.nvars_ && terms_ == other.terms_;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [exp, coef] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << coef;
    for (int i = 0; i < nvars_; ++i) {
      if (exp[i] == 0) continue;
      os << "*q" << (i + 1);
      if (exp[i] > 1) os << "^" << exp[i];
    }
  }
  return os.str();
}

}  // namespace cotpath
