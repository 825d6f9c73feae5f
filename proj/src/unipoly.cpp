#include "sosrank/unipoly.hpp"

#include <stdexcept>

namespace sosrank {

UniPoly::UniPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

UniPoly::UniPoly(std::initializer_list<Rational> coefficients) : coeffs_(coefficients) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly(std::vector<Rational>{c}); }

UniPoly UniPoly::monomial(unsigned e, const Rational& c) {
  std::vector<Rational> cs(e + 1);
  cs[e] = c;
  return UniPoly(std::move(cs));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UniPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

const Rational& UniPoly::leading() const {
  if (coeffs_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

Rational UniPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

UniPoly& UniPoly::operator+=(const UniPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  coeffs_ = std::move(out);
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

Rational eval(const UniPoly& p, const Rational& x) { return p(x); }

std::pair<UniPoly, UniPoly> divrem(const UniPoly& p, const UniPoly& g) {
  if (g.is_zero()) throw std::domain_error("polynomial division by zero");
  if (p.degree() < g.degree()) return {UniPoly{}, p};

  std::vector<Rational> rem = p.coefficients();
  const auto& gc = g.coefficients();
  const std::size_t dg = gc.size() - 1;
  std::vector<Rational> quot(rem.size() - dg);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Rational c = rem[k + dg] / gc[dg];
    quot[k] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dg; ++i) rem[k + i] -= c * gc[i];
  }
  rem.resize(dg);
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly expand(const RootFormPoly& p) {
  UniPoly out = UniPoly::constant(p.leading);
  for (const auto& r : p.roots) out *= UniPoly{-r, 1};
  return out;
}

Rational eval(const RootFormPoly& p, const Rational& x) {
  Rational acc = p.leading;
  for (const auto& r : p.roots) acc *= (x - r);
  return acc;
}

UniPoly descending_falling_poly(const Rational& c, unsigned r) {
  RootFormPoly rf{sign_power(r), {}};
  for (unsigned i = 0; i < r; ++i) rf.roots.push_back(c - i);
  return expand(rf);
}

UniPoly ascending_falling_poly(const Rational& c, unsigned r) {
  RootFormPoly rf{1, {}};
  for (unsigned i = 0; i < r; ++i) rf.roots.push_back(Rational(i) - c);
  return expand(rf);
}

Rational PartialFractionDecomp::operator()(const Rational& x) const {
  Rational acc = 0;
  for (const auto& [pole, c] : poles) {
    if (x == pole) throw std::domain_error("evaluation at a pole");
    acc += c / (x - pole);
  }
  return acc;
}

PartialFractionDecomp partial_fractions(const Rational& a, unsigned b) {
  if (b == 0) throw std::invalid_argument("partial_fractions needs b >= 1");
  PartialFractionDecomp out;
  out.poles.reserve(b);
  for (unsigned i = 0; i < b; ++i) {
    const Rational c = sign_power(static_cast<long>(b - 1 - i)) / (factorial(i) * factorial(b - 1 - i));
    out.poles.push_back({a + i, c});
  }
  return out;
}

Rational alternating_moment(unsigned n, unsigned c) {
  Rational acc = 0;
  for (unsigned k = 0; k <= n; ++k) acc += sign_power(k) * binomial(n, k) * pow(Rational(k), c);
  return acc;
}

}  // namespace sosrank
