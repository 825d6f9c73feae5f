#include "sosrank/laurentk.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "sosrank/parallel.hpp"

namespace sosrank {

Rational constraint_value(Subset r, Subset i, unsigned n) {
  const auto mask = n >= 32 ? ~Subset{0} : ((Subset{1} << n) - 1);
  const auto differing = static_cast<unsigned>(std::popcount((r ^ i) & mask));
  return Rational(static_cast<long>(n - differing)) - Rational(1, 2);
}

std::vector<Rational> full_constraint_values(unsigned n) {
  std::vector<Rational> g(n + 1);
  for (unsigned k = 0; k <= n; ++k) g[k] = Rational(k) - Rational(1, 2);
  return g;
}

SymmetricAssignment laurent_weights(unsigned n) {
  const Rational scale = 1 / pow(Rational(2), n);
  std::vector<Rational> w(n + 1);
  for (unsigned k = 0; k <= n; ++k) w[k] = (Rational(k) - Rational(1, 2)) * scale;
  return {n, std::move(w)};
}

ReducedVerdict symmetric_feasibility(unsigned n, unsigned t) {
  if (t < 1 || t > n) throw std::invalid_argument("symmetric_feasibility needs 1 <= t <= n");
  return check_symmetric_psd(laurent_weights(n), t);
}

MomentMatrix laurent_constraint_matrix(unsigned n, unsigned t) {
  std::vector<Rational> uniform(n + 1, 1 / pow(Rational(2), n));
  return build_constraint_matrix(SymmetricAssignment(n, std::move(uniform)), full_constraint_values(n), t);
}

Rational upper_bound_certificate(unsigned n, unsigned t) {
  if (t < 1 || t > n) throw std::invalid_argument("upper_bound_certificate needs 1 <= t <= n");
  Rational s = 0;
  for (unsigned k = 1; k + t <= n; ++k) {
    const Rational ratio = falling_factorial(Rational(n - t), k) / falling_factorial(Rational(n), k);
    s += binomial(n, k) * (Rational(k) - Rational(1, 2)) * ratio * ratio;
  }
  return s - Rational(1, 2);
}

Rational root_form_objective(unsigned n, std::span<const Rational> roots) {
  Rational s = 0;
  for (unsigned k = 1; k <= n; ++k) {
    Rational prod = binomial(n, k) * (Rational(k) - Rational(1, 2));
    for (const auto& r : roots) {
      if (r == 0) throw std::domain_error("root at zero");
      const Rational f = (Rational(k) - r) / r;
      prod *= f * f;
    }
    s += prod;
  }
  return s;
}

double root_form_objective(unsigned n, std::span<const double> roots) {
  double s = 0;
  double c = 1;  // C(n, k)
  for (unsigned k = 1; k <= n; ++k) {
    c = c * (n - k + 1) / k;
    double prod = c * (k - 0.5);
    for (double r : roots) {
      const double f = (k - r) / r;
      prod *= f * f;
    }
    s += prod;
  }
  return s;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Minimizes F over roots in [1, n]. In the reciprocals u_i = 1/r_i,
// F = sum_k c_k prod_i (1 - k u_i)^2 is a convex quadratic in each u_i, so
// every coordinate step is an exact 1-D minimization. A compass search with
// halving steps follows to leave any coordinate-wise stall.
class RootSearch {
 public:
  RootSearch(unsigned n, unsigned max_sweeps) : n_(n), max_sweeps_(max_sweeps), c_(n + 1) {
    double binom = 1;
    for (unsigned k = 1; k <= n; ++k) {
      binom = binom * (n - k + 1) / k;
      c_[k] = binom * (k - 0.5);
    }
  }

  double value(const std::vector<double>& r) const { return root_form_objective(n_, std::span<const double>(r)); }

  double minimize(std::vector<double>& r) const {
    double best = coordinate_descent(r);
    for (double step = (n_ - 1) / 4.0; step > 1e-10; step /= 2) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (std::size_t i = 0; i < r.size(); ++i)
          for (double dir : {-1.0, 1.0}) {
            const double old = r[i];
            r[i] = std::clamp(old + dir * step, 1.0, static_cast<double>(n_));
            const double v = value(r);
            if (v < best - 1e-15 * std::abs(best)) {
              best = v;
              improved = true;
            } else {
              r[i] = old;
            }
          }
      }
      best = coordinate_descent(r);
    }
    return best;
  }

 private:
  double coordinate_descent(std::vector<double>& r) const {
    double best = value(r);
    const double lo = 1.0 / n_;
    for (unsigned sweep = 0; sweep < max_sweeps_; ++sweep) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        double num = 0, den = 0;
        for (unsigned k = 1; k <= n_; ++k) {
          double weight = c_[k];
          for (std::size_t j = 0; j < r.size(); ++j) {
            if (j == i) continue;
            const double f = 1.0 - k / r[j];
            weight *= f * f;
          }
          num += weight * k;
          den += weight * k * k;
        }
        if (den > 0) r[i] = 1.0 / std::clamp(num / den, lo, 1.0);
      }
      const double v = value(r);
      const bool stalled = v >= best - 1e-14 * std::abs(best);
      best = std::min(best, v);
      if (stalled) break;
    }
    return best;
  }

  unsigned n_;
  unsigned max_sweeps_;
  std::vector<double> c_;
};

}  // namespace

SearchResult lower_bound_search(unsigned n, unsigned t, const SearchOptions& opts) {
  if (n < 1 || t > n) throw std::invalid_argument("lower_bound_search needs t <= n");
  SearchResult out;
  if (t == 0) {
    out.best_exact = root_form_objective(n, std::span<const Rational>{});
    out.best_value = out.best_exact.get_d();
    out.restart_minima = {out.best_value};
    out.min_restart_exact = out.max_restart_exact = out.best_exact;
    return out;
  }

  const unsigned restarts = std::max(1u, opts.restarts);
  struct Slot {
    std::vector<double> roots;
    double value = 0;
    std::vector<Rational> exact_roots;
    Rational exact;
  };
  std::vector<Slot> slots(restarts);
  const RootSearch search(n, opts.max_sweeps);
  const double top = static_cast<double>(n);

  parallel_for(restarts, opts.threads, [&](std::size_t idx) {
    std::vector<double> r(t);
    if (idx == 0) {
      std::fill(r.begin(), r.end(), top);
    } else if (idx == 1) {
      for (unsigned i = 0; i < t; ++i) r[i] = 1.0 + (i + 0.5) * (top - 1.0) / t;
    } else {
      std::mt19937_64 rng(splitmix64(opts.seed ^ splitmix64(idx)));
      std::uniform_real_distribution<double> dist(1.0, top);
      for (auto& x : r) x = dist(rng);
    }
    Slot& s = slots[idx];
    s.value = search.minimize(r);
    s.roots = r;
    s.exact_roots.reserve(t);
    for (double x : r) s.exact_roots.push_back(snap_to_dyadic(x));
    s.exact = root_form_objective(n, std::span<const Rational>(s.exact_roots));
  });

  std::size_t best = 0;
  out.restart_minima.reserve(restarts);
  out.min_restart_exact = slots[0].exact;
  out.max_restart_exact = slots[0].exact;
  for (std::size_t i = 0; i < restarts; ++i) {
    out.restart_minima.push_back(slots[i].exact.get_d());
    if (slots[i].exact < slots[best].exact) best = i;
    if (slots[i].exact < out.min_restart_exact) out.min_restart_exact = slots[i].exact;
    if (slots[i].exact > out.max_restart_exact) out.max_restart_exact = slots[i].exact;
  }
  out.best_value = slots[best].value;
  out.best_exact = slots[best].exact;
  out.best_roots = slots[best].exact_roots;
  return out;
}

RankReport sos_rank(unsigned n, const RankOptions& opts) {
  if (n < 2) throw std::invalid_argument("sos_rank needs n >= 2");
  RankReport rep;
  rep.n = n;
  rep.levels.resize(n);
  parallel_for(n, opts.threads, [&](std::size_t idx) {
    const unsigned t = static_cast<unsigned>(idx) + 1;
    LevelVerdict& lv = rep.levels[idx];
    lv.t = t;
    lv.feasible = symmetric_feasibility(n, t).is_psd();
    lv.upper_cert_margin = upper_bound_certificate(n, t);
    if (opts.run_search) lv.search = lower_bound_search(n, t, opts.search);
    if (n <= opts.bruteforce_max_n) lv.bruteforce_psd = psd_exact(laurent_constraint_matrix(n, t)).is_psd;
  });
  bool seen_infeasible = false;
  for (const auto& lv : rep.levels) {
    if (!lv.feasible && !seen_infeasible) {
      seen_infeasible = true;
      rep.rank = lv.t;
    } else if (lv.feasible && seen_infeasible) {
      rep.monotone = false;
    }
    if (lv.upper_cert_margin < 0 && !rep.first_negative_margin_t) rep.first_negative_margin_t = lv.t;
  }
  return rep;
}

TheoreticalBounds theoretical_bounds(unsigned n, double c) {
  if (n < 4) throw std::invalid_argument("theoretical_bounds needs n >= 4");
  const double root = std::sqrt(static_cast<double>(n));
  TheoreticalBounds b;
  b.lower = root / 4.0;
  b.upper = n - c * std::cbrt(static_cast<double>(n));
  // log of 4^{-sqrt n} * sqrt(n)^{sqrt(n)/2} against log(1/2)
  b.lower_condition_holds = -root * std::log(4.0) + 0.5 * root * std::log(root) >= -std::log(2.0);
  return b;
}

double fitted_upper_constant(unsigned n) {
  for (unsigned t = 1; t <= n; ++t)
    if (upper_bound_certificate(n, t) < 0) return (n - static_cast<double>(t)) / std::cbrt(static_cast<double>(n));
  return 0.0;
}

Rational root_factor_product(const RootConfiguration& c, const Rational& k) {
  Rational prod = 1;
  for (const auto& r : c.real_roots) {
    if (r == 0) throw std::domain_error("root at zero");
    const Rational f = (k - r) / r;
    prod *= f * f;
  }
  for (const auto& [a, b] : c.conjugate_pairs) {
    // |(k - r)/r|^2 for r = a + bi, squared again for the conjugate.
    const Rational mod2 = a * a + b * b;
    if (mod2 == 0) throw std::domain_error("root at zero");
    const Rational f = ((a - k) * (a - k) + b * b) / mod2;
    prod *= f * f;
  }
  return prod;
}

Rational root_form_objective(unsigned n, const RootConfiguration& c) {
  Rational s = 0;
  for (unsigned k = 1; k <= n; ++k) s += binomial(n, k) * (Rational(k) - Rational(1, 2)) * root_factor_product(c, Rational(k));
  return s;
}

RootConfiguration merge_conjugate_pair(const RootConfiguration& c, std::size_t pair_index) {
  if (pair_index >= c.conjugate_pairs.size()) throw std::out_of_range("no such conjugate pair");
  const auto& [a, b] = c.conjugate_pairs[pair_index];
  const Rational mod2 = a * a + b * b;
  if (!mpz_perfect_square_p(mod2.get_num_mpz_t()) || !mpz_perfect_square_p(mod2.get_den_mpz_t()))
    throw std::invalid_argument("conjugate pair modulus is irrational");
  Integer num, den;
  mpz_sqrt(num.get_mpz_t(), mod2.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), mod2.get_den_mpz_t());
  const Rational rho(num, den);
  RootConfiguration out = c;
  out.conjugate_pairs.erase(out.conjugate_pairs.begin() + static_cast<std::ptrdiff_t>(pair_index));
  out.real_roots.push_back(rho);
  out.real_roots.push_back(rho);
  return out;
}

RootConfiguration reflect_negative_roots(const RootConfiguration& c) {
  RootConfiguration out = c;
  for (auto& r : out.real_roots)
    if (r < 0) r = -r;
  return out;
}

RootConfiguration clamp_small_roots(const RootConfiguration& c) {
  RootConfiguration out = c;
  for (auto& r : out.real_roots)
    if (r > 0 && r < 1) r = 1;
  return out;
}

RootConfiguration clamp_large_roots(const RootConfiguration& c, unsigned n) {
  RootConfiguration out = c;
  for (auto& r : out.real_roots)
    if (r > n) r = n;
  return out;
}

RootConfiguration pad_roots(const RootConfiguration& c, unsigned n, unsigned t) {
  RootConfiguration out = c;
  while (out.degree() < t) out.real_roots.push_back(Rational(n));
  return out;
}

}  // namespace sosrank
