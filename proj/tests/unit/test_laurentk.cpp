#include <doctest.h>

#include <bit>
#include <cmath>
#include <stdexcept>

#include "gen.hpp"
#include "sosrank/laurentk.hpp"

using namespace sosrank;
using sosrank::testing::Gen;

namespace {

Subset full_set(unsigned n) { return (Subset{1} << n) - 1; }

// R-constraint moment matrix of the uniform solution, by enumeration over I.
MomentMatrix literal_constraint_matrix(unsigned n, Subset r, unsigned t) {
  std::vector<Rational> c(std::size_t{1} << n);
  const Rational scale(1, Integer(1) << n);
  for (Subset i = 0; i < c.size(); ++i) c[i] = scale * constraint_value(r, i, n);
  return build_subset_weighted_matrix(n, c, t);
}

// First level at which the explicit R = N constraint matrix is not PSD.
unsigned bruteforce_rank(unsigned n) {
  for (unsigned t = 1; t <= n; ++t)
    if (!psd_exact(laurent_constraint_matrix(n, t)).is_psd) return t;
  return n + 1;
}

RootConfiguration random_config(Gen& g, unsigned n, unsigned reals, unsigned pairs) {
  RootConfiguration c;
  for (unsigned i = 0; i < reals; ++i) {
    Rational r;
    do r = make_rational(g.integer(-4 * static_cast<long>(n), 4 * static_cast<long>(n)), g.integer(1, 4));
    while (r == 0);
    c.real_roots.push_back(r);
  }
  for (unsigned i = 0; i < pairs; ++i) {
    // Pythagorean triple scaled by a rational keeps the modulus rational.
    const long u = g.integer(2, 6), v = g.integer(1, u - 1);
    const Rational s = make_rational(g.integer(1, 3 * static_cast<long>(n)), g.integer(1, 5) * (u * u + v * v));
    const Rational a = s * (u * u - v * v) * (g.coin() ? 1 : -1);
    const Rational b = s * 2 * u * v;
    if (g.coin())
      c.conjugate_pairs.emplace_back(a, b);
    else
      c.conjugate_pairs.emplace_back(b, a);
  }
  return c;
}

}  // namespace

TEST_CASE("constraint values") {
  for (unsigned n = 1; n <= 8; ++n) {
    CHECK(constraint_value(full_set(n), 0, n) == make_rational(-1, 2));
    for (Subset i = 0; i <= full_set(n); ++i) {
      const auto k = static_cast<unsigned>(std::popcount(i));
      CHECK(constraint_value(full_set(n), i, n) == Rational(2 * static_cast<long>(k) - 1, 2));
    }
    const auto g = full_constraint_values(n);
    REQUIRE(g.size() == n + 1);
    for (unsigned k = 0; k <= n; ++k) CHECK(g[k] == Rational(2 * static_cast<long>(k) - 1, 2));
  }
}

TEST_CASE("constraint values are invariant under joint flips") {
  Gen g(50);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<unsigned>(g.integer(1, 12));
    const auto mask = full_set(n);
    const Subset r = static_cast<Subset>(g.integer(0, mask));
    const Subset i = static_cast<Subset>(g.integer(0, mask));
    const Subset s = static_cast<Subset>(g.integer(0, mask));
    CHECK(constraint_value(r ^ s, i ^ s, n) == constraint_value(r, i, n));
  }
}

TEST_CASE("explicit constraint matrix matches enumeration") {
  for (unsigned n = 1; n <= 6; ++n)
    for (unsigned t = 0; t <= std::min(n, 3u); ++t)
      CHECK(laurent_constraint_matrix(n, t).entries == literal_constraint_matrix(n, full_set(n), t).entries);
}

TEST_CASE("every constraint has the same verdict as R = N") {
  Gen g(51);
  for (unsigned n = 2; n <= 5; ++n)
    for (unsigned t = 1; t <= 2; ++t) {
      const bool base = psd_exact(laurent_constraint_matrix(n, t)).is_psd;
      for (int trial = 0; trial < 4; ++trial) {
        const Subset r = static_cast<Subset>(g.integer(0, full_set(n)));
        const Subset s = static_cast<Subset>(g.integer(0, full_set(n)));
        CHECK(psd_exact(literal_constraint_matrix(n, r, t)).is_psd == base);
        // sum_I 2^-n g_{R xor S}(x_I) Z_{I xor S} Z_{I xor S}^T
        std::vector<Rational> c(std::size_t{1} << n);
        const Rational scale(1, Integer(1) << n);
        for (Subset i = 0; i < c.size(); ++i) c[i ^ s] = scale * constraint_value(r ^ s, i, n);
        CHECK(psd_exact(build_subset_weighted_matrix(n, c, t)).is_psd == base);
      }
    }
}

TEST_CASE("level one feasibility against direct 2x2 computation") {
  for (unsigned n = 2; n <= 20; ++n) {
    const Rational scale(1, Integer(1) << n);
    Rational a00 = 0, a01 = 0, a11 = 0, b0 = 0, a1 = 0;
    for (unsigned k = 0; k <= n; ++k) {
      const Rational w = binomial(n, k) * Rational(2 * static_cast<long>(k) - 1, 2) * scale;
      a00 += w;
      a01 += w * k;
      a11 += w * k * k;
      b0 += w * (k + 1) * (static_cast<long>(n) + 1 - static_cast<long>(k));
      if (k >= 1 && k + 1 <= n) a1 += w * k * (n - k);
    }
    const bool direct = a00 >= 0 && a11 >= 0 && a00 * a11 - a01 * a01 >= 0 && b0 >= 0 && a1 >= 0;
    CHECK(symmetric_feasibility(n, 1).is_psd() == direct);
    CHECK(symmetric_feasibility(n, 1).is_psd() == (n >= 3));
  }
}

TEST_CASE("feasibility is monotone and fails at t = n") {
  for (unsigned n = 2; n <= 16; ++n) {
    bool seen_infeasible = false;
    for (unsigned t = 1; t <= n; ++t) {
      const bool f = symmetric_feasibility(n, t).is_psd();
      if (seen_infeasible) CHECK_FALSE(f);
      if (!f) seen_infeasible = true;
    }
    CHECK_FALSE(symmetric_feasibility(n, n).is_psd());
    CHECK(upper_bound_certificate(n, n) == make_rational(-1, 2));
  }
}

TEST_CASE("negative certificate margins imply infeasibility") {
  for (unsigned n = 2; n <= 16; ++n)
    for (unsigned t = 1; t <= n; ++t)
      if (upper_bound_certificate(n, t) < 0) CHECK_FALSE(symmetric_feasibility(n, t).is_psd());
}

TEST_CASE("root form objective") {
  for (unsigned n = 1; n <= 12; ++n) {
    Rational base = 0;
    for (unsigned k = 1; k <= n; ++k) base += binomial(n, k) * Rational(2 * static_cast<long>(k) - 1, 2);
    const std::vector<Rational> none;
    CHECK(root_form_objective(n, none) == base);
    CHECK(root_form_objective(n, none) >= make_rational(1, 2));
    for (unsigned t = 1; t <= n; ++t) {
      const std::vector<Rational> at_n(t, Rational(n));
      Rational want = 0;
      for (unsigned k = 1; k <= n; ++k)
        want += binomial(n, k) * Rational(2 * static_cast<long>(k) - 1, 2) *
                pow(Rational(static_cast<long>(n) - static_cast<long>(k), n), 2 * t);
      CHECK(root_form_objective(n, at_n) == want);
    }
  }
  Gen g(52);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<unsigned>(g.integer(1, 14));
    std::vector<Rational> roots;
    std::vector<double> droots;
    for (long i = 0, t = g.integer(0, n); i < t; ++i) {
      roots.push_back(make_rational(g.integer(4, 4 * static_cast<long>(n)), 4));
      droots.push_back(roots.back().get_d());
    }
    const double exact = root_form_objective(n, roots).get_d();
    CHECK(root_form_objective(n, droots) == doctest::Approx(exact).epsilon(1e-12));
    CHECK(root_form_objective(n, RootConfiguration{roots, {}}) == root_form_objective(n, roots));
  }
}

TEST_CASE("lower bound search") {
  CHECK_THROWS_AS(lower_bound_search(4, 5), std::invalid_argument);
  SearchOptions opts;
  opts.restarts = 16;
  const auto a = lower_bound_search(7, 3, opts);
  const auto b = lower_bound_search(7, 3, opts);
  CHECK(a.best_exact == b.best_exact);
  CHECK(a.best_roots == b.best_roots);
  CHECK(a.restart_minima == b.restart_minima);
  CHECK(a.restart_minima.size() == 16);
  CHECK(root_form_objective(7, a.best_roots) == a.best_exact);
  for (const auto& r : a.best_roots) {
    CHECK(r >= 1);
    CHECK(r <= 7);
  }
  CHECK(a.min_restart_exact == a.best_exact);
  CHECK(a.min_restart_exact <= a.max_restart_exact);

  for (unsigned n = 2; n <= 8; ++n)
    for (unsigned t = 1; t <= n; ++t) {
      const auto s = lower_bound_search(n, t, opts);
      if (symmetric_feasibility(n, t).is_psd())
        CHECK(s.min_restart_exact >= make_rational(1, 2));
      else
        CHECK(s.best_exact < make_rational(1, 2));
    }
}

TEST_CASE("sos_rank") {
  CHECK_THROWS_AS(sos_rank(1), std::invalid_argument);
  for (unsigned n = 2; n <= 6; ++n) {
    RankOptions opts;
    opts.bruteforce_max_n = 6;
    const auto rep = sos_rank(n, opts);
    CHECK(rep.rank == bruteforce_rank(n));
    CHECK(rep.rank <= n);
    CHECK(rep.monotone);
    REQUIRE(rep.levels.size() == n);
    for (const auto& lv : rep.levels) {
      REQUIRE(lv.bruteforce_psd.has_value());
      CHECK(*lv.bruteforce_psd == lv.feasible);
      CHECK_FALSE(lv.search.has_value());
    }
  }
  RankOptions threaded;
  threaded.threads = 4;
  threaded.run_search = true;
  threaded.search.restarts = 8;
  RankOptions serial = threaded;
  serial.threads = 1;
  const auto x = sos_rank(9, threaded);
  const auto y = sos_rank(9, serial);
  CHECK(x.rank == y.rank);
  for (unsigned i = 0; i < 9; ++i) CHECK(x.levels[i].search->best_exact == y.levels[i].search->best_exact);
  CHECK(std::string(RankReport::kStatus) == "exact under cited-iff assumption");
}

TEST_CASE("theoretical bounds") {
  CHECK_THROWS_AS(theoretical_bounds(3), std::invalid_argument);
  const auto b = theoretical_bounds(64);
  CHECK(b.lower == doctest::Approx(2.0));
  CHECK(b.upper == doctest::Approx(60.0));
  CHECK(theoretical_bounds(64, 2.0).upper == doctest::Approx(56.0));
  CHECK_FALSE(theoretical_bounds(16).lower_condition_holds);
  CHECK(theoretical_bounds(100000).lower_condition_holds);
  for (unsigned n = 4; n <= 16; ++n) {
    const auto tb = theoretical_bounds(n);
    if (tb.lower_condition_holds) CHECK(sos_rank(n).rank >= static_cast<unsigned>(std::ceil(tb.lower)));
  }
  for (unsigned n = 8; n <= 60; n += 4) {
    const double c = fitted_upper_constant(n);
    CHECK(c > 0);
    CHECK(c < n);
  }
}

TEST_CASE("root normalizations never increase the objective") {
  Gen g(53);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<unsigned>(g.integer(2, 10));
    const auto reals = static_cast<unsigned>(g.integer(0, 3));
    const auto pairs = static_cast<unsigned>(g.integer(1, 2));
    const auto c = random_config(g, n, reals, pairs);
    const auto before = root_form_objective(n, c);
    const auto merged = merge_conjugate_pair(c, static_cast<std::size_t>(g.integer(0, pairs - 1)));
    CHECK(merged.degree() == c.degree());
    CHECK(root_form_objective(n, merged) <= before);
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<unsigned>(g.integer(2, 10));
    auto c = random_config(g, n, static_cast<unsigned>(g.integer(1, 4)), static_cast<unsigned>(g.integer(0, 1)));
    c.real_roots[0] = -abs(c.real_roots[0]);
    const auto r = reflect_negative_roots(c);
    for (const auto& x : r.real_roots) CHECK(x > 0);
    CHECK(root_form_objective(n, r) <= root_form_objective(n, c));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<unsigned>(g.integer(2, 10));
    auto c = random_config(g, n, static_cast<unsigned>(g.integer(1, 4)), 0);
    for (auto& x : c.real_roots) x = abs(x);
    c.real_roots[0] = make_rational(g.integer(1, 9), 10);
    const auto r = clamp_small_roots(c);
    for (const auto& x : r.real_roots) CHECK(x >= 1);
    CHECK(root_form_objective(n, r) <= root_form_objective(n, c));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<unsigned>(g.integer(2, 10));
    auto c = random_config(g, n, static_cast<unsigned>(g.integer(1, 4)), 0);
    for (auto& x : c.real_roots) x = abs(x) + 1;
    c.real_roots[0] = Rational(n) + g.positive_rational(10, 3);
    const auto r = clamp_large_roots(c, n);
    for (const auto& x : r.real_roots) CHECK(x <= n);
    CHECK(root_form_objective(n, r) <= root_form_objective(n, c));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<unsigned>(g.integer(2, 10));
    const auto c = random_config(g, n, static_cast<unsigned>(g.integer(0, 3)), static_cast<unsigned>(g.integer(0, 1)));
    const auto t = static_cast<unsigned>(c.degree() + g.integer(1, 4));
    const auto r = pad_roots(c, n, t);
    CHECK(r.degree() == t);
    CHECK(root_form_objective(n, r) <= root_form_objective(n, c));
  }
  RootConfiguration irrational{{}, {{1, 1}}};
  CHECK_THROWS_AS(merge_conjugate_pair(irrational, 0), std::invalid_argument);
}
