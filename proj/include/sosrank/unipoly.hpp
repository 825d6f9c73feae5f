#pragma once

#include <span>
#include <utility>
#include <vector>

#include "sosrank/exactnum.hpp"

namespace sosrank {

/// Dense univariate polynomial over the rationals, lowest degree first.
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// no coefficients and degree() == -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coefficients);
  UniPoly(std::initializer_list<Rational> coefficients);

  static UniPoly constant(const Rational& c);
  /// The monomial c * k^e.
  static UniPoly monomial(unsigned e, const Rational& c = 1);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of k^i (zero past the degree).
  Rational coeff(std::size_t i) const;
  const Rational& leading() const;

  Rational operator()(const Rational& x) const;

  UniPoly& operator+=(const UniPoly& rhs);
  UniPoly& operator-=(const UniPoly& rhs);
  UniPoly& operator*=(const UniPoly& rhs);
  UniPoly& operator*=(const Rational& s);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
  friend UniPoly operator*(const Rational& s, UniPoly a) { return a *= s; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Exact Horner evaluation.
Rational eval(const UniPoly& p, const Rational& x);

/// Quotient and remainder with p = g*q + r and deg r < deg g.
/// Throws std::domain_error when g is the zero polynomial.
std::pair<UniPoly, UniPoly> divrem(const UniPoly& p, const UniPoly& g);

/// leading * prod (k - root_i).
struct RootFormPoly {
  Rational leading = 1;
  std::vector<Rational> roots;
};

UniPoly expand(const RootFormPoly& p);
/// Evaluates without expanding.
Rational eval(const RootFormPoly& p, const Rational& x);

/// (c - k)^{falling r} = prod_{i<r} (c - i - k) as a polynomial in k.
UniPoly descending_falling_poly(const Rational& c, unsigned r);
/// (k + c)^{falling r} = prod_{i<r} (k + c - i) as a polynomial in k.
UniPoly ascending_falling_poly(const Rational& c, unsigned r);

struct PolePart {
  Rational pole;
  Rational coefficient;
};

/// 1 / (x - a)^{falling b} = sum_i c_i / (x - a - i), i = 0..b-1.
struct PartialFractionDecomp {
  std::vector<PolePart> poles;

  /// Evaluates the right-hand side at x (x must avoid the poles).
  Rational operator()(const Rational& x) const;
};

/// Requires b >= 1 (std::invalid_argument otherwise).
PartialFractionDecomp partial_fractions(const Rational& a, unsigned b);

/// sum_{k=0}^{n} (-1)^k C(n,k) k^c.
Rational alternating_moment(unsigned n, unsigned c);

}  // namespace sosrank
