#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sosrank/exactnum.hpp"
#include "sosrank/unipoly.hpp"

namespace sosrank::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  /// p/q with |p| <= num_max and 1 <= q <= den_max.
  Rational rational(long num_max = 20, long den_max = 9) {
    return make_rational(integer(-num_max, num_max), integer(1, den_max));
  }
  Rational positive_rational(long num_max = 20, long den_max = 9) {
    return make_rational(integer(1, num_max), integer(1, den_max));
  }
  Rational nonneg_rational(long num_max = 20, long den_max = 9) {
    return make_rational(integer(0, num_max), integer(1, den_max));
  }

  std::vector<Rational> rationals(std::size_t count, long num_max = 20, long den_max = 9) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(rational(num_max, den_max));
    return out;
  }

  UniPoly poly(int max_degree, long num_max = 20, long den_max = 9) {
    return UniPoly(rationals(static_cast<std::size_t>(integer(0, max_degree)) + 1, num_max, den_max));
  }
  /// Polynomial of exactly the given degree.
  UniPoly poly_of_degree(int degree, long num_max = 20, long den_max = 9) {
    auto cs = rationals(static_cast<std::size_t>(degree) + 1, num_max, den_max);
    if (cs.back() == 0) cs.back() = 1;
    return UniPoly(std::move(cs));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace sosrank::testing
