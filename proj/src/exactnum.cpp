#include "sosrank/exactnum.hpp"

#include <cmath>
#include <stdexcept>

namespace sosrank {

std::string to_string(const Rational& x) { return x.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  auto check_digits = [&](const std::string& part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) ++i;
    if (i == part.size()) throw std::invalid_argument("malformed rational: " + s);
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw std::invalid_argument("malformed rational: " + s);
  };
  if (slash == std::string::npos) {
    check_digits(s, true);
    if (s[0] == '+') s.erase(0, 1);
    return Rational(Integer(s));
  }
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  check_digits(num, true);
  check_digits(den, false);
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Rational r(Integer(num), d);
  r.canonicalize();
  return r;
}

Rational make_rational(std::int64_t p, std::int64_t q) {
  if (q == 0) throw std::invalid_argument("zero denominator");
  // mpz_class has no portable int64 constructor on every platform; go via long.
  Rational r(Integer(static_cast<long>(p)), Integer(static_cast<long>(q)));
  r.canonicalize();
  return r;
}

Rational falling_factorial(const Rational& a, unsigned r) {
  Rational out = 1;
  Rational term = a;
  for (unsigned i = 0; i < r; ++i) {
    out *= term;
    term -= 1;
  }
  return out;
}

Rational rising_factorial(const Rational& a, unsigned r) {
  Rational out = 1;
  Rational term = a;
  for (unsigned i = 0; i < r; ++i) {
    out *= term;
    term += 1;
  }
  return out;
}

Rational factorial(unsigned k) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return Rational(f);
}

Rational binomial(const Rational& a, unsigned b) { return falling_factorial(a, b) / factorial(b); }

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  return Rational(c);
}

Rational double_factorial(long k) {
  if (k < -1) throw std::domain_error("double factorial undefined below -1");
  Integer out = 1;
  for (long i = k; i > 1; i -= 2) out *= i;
  return Rational(out);
}

Rational sign_power(long r) { return (r % 2 == 0) ? Rational(1) : Rational(-1); }

Rational pow(const Rational& x, unsigned e) {
  Rational out;
  mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(x.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(x.get_mpq_t()), e);
  return out;
}

int sign(const Rational& x) { return sgn(x); }

double to_double(const Rational& x) { return x.get_d(); }

Rational snap_to_dyadic(double x, unsigned bits) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot snap a non-finite value");
  const double scaled = std::round(std::ldexp(x, static_cast<int>(bits)));
  Integer num(scaled);
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace sosrank
