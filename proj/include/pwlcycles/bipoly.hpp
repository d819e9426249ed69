// Sparse bivariate polynomials over Q in the variables (Y0, Y1).
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pwlcycles/polynomial.hpp"
#include "pwlcycles/rational.hpp"

namespace pwlcycles {

enum class Var { Y0, Y1 };

class BiPoly {
 public:
  using Exponents = std::pair<int, int>;  // (degree in Y0, degree in Y1)

  BiPoly() = default;

  static BiPoly constant(const Rational& c) {
    BiPoly p;
    p.add_term(0, 0, c);
    return p;
  }
  static BiPoly variable(Var v) {
    BiPoly p;
    p.add_term(v == Var::Y0 ? 1 : 0, v == Var::Y1 ? 1 : 0, Rational(1));
    return p;
  }

  void add_term(int i, int j, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace({i, j}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Rational coeff(int i, int j) const {
    const auto it = terms_.find({i, j});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
    return d;
  }
  int degree_in(Var v) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, v == Var::Y0 ? e.first : e.second);
    return d;
  }

  friend BiPoly operator+(BiPoly a, const BiPoly& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e.first, e.second, c);
    return a;
  }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e.first, e.second, -c);
    return a;
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
    return out;
  }
  friend BiPoly operator*(const Rational& s, const BiPoly& p) {
    BiPoly out;
    for (const auto& [e, c] : p.terms_) out.add_term(e.first, e.second, s * c);
    return out;
  }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

  /// Evaluation at a point of any ring that accepts Rational coefficients.
  template <class X>
  X operator()(const X& y0, const X& y1) const {
    X acc{};
    for (const auto& [e, c] : terms_) {
      X term = X(c);
      for (int k = 0; k < e.first; ++k) term = term * y0;
      for (int k = 0; k < e.second; ++k) term = term * y1;
      acc = acc + term;
    }
    return acc;
  }

  /// Floating-point evaluation.
  long double evaluate(long double y0, long double y1) const {
    long double acc = 0;
    for (const auto& [e, c] : terms_) {
      long double term = c.to_long_double();
      for (int k = 0; k < e.first; ++k) term *= y0;
      for (int k = 0; k < e.second; ++k) term *= y1;
      acc += term;
    }
    return acc;
  }

  /// View as a polynomial in `main` with coefficients in Q[other].
  Polynomial<UniPoly> as_univariate_in(Var main) const {
    std::vector<UniPoly> coeffs(static_cast<std::size_t>(std::max(degree_in(main), -1) + 1));
    for (const auto& [e, c] : terms_) {
      const int outer = main == Var::Y0 ? e.first : e.second;
      const int inner = main == Var::Y0 ? e.second : e.first;
      coeffs[static_cast<std::size_t>(outer)] += UniPoly::monomial(c, static_cast<std::size_t>(inner));
    }
    return Polynomial<UniPoly>(std::move(coeffs));
  }

  /// Substitute a rational value for one variable.
  UniPoly specialize(Var fixed, const Rational& value) const {
    UniPoly out;
    for (const auto& [e, c] : terms_) {
      const int fixed_deg = fixed == Var::Y0 ? e.first : e.second;
      const int free_deg = fixed == Var::Y0 ? e.second : e.first;
      out += UniPoly::monomial(c * pow(value, static_cast<unsigned>(fixed_deg)), static_cast<std::size_t>(free_deg));
    }
    return out;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!s.empty()) s += " + ";
      s += "(" + it->second.to_string() + ")";
      if (it->first.first) s += "*Y0^" + std::to_string(it->first.first);
      if (it->first.second) s += "*Y1^" + std::to_string(it->first.second);
    }
    return s;
  }

 private:
  std::map<Exponents, Rational> terms_;
};

}  // namespace pwlcycles
