#pragma once

// SoS rank of the empty polytope
//   K = {x in {0,1}^n : sum_{r in R} x_r + sum_{r in N\R} (1 - x_r) >= 1/2 for all R}.
//
// By symmetrization the uniform solution y_I = 2^-n is feasible whenever
// anything is, and every constraint is a relabeling of R = N, whose value at
// x_I is |I| - 1/2. Level-t feasibility therefore reduces to the symmetric
// criterion with weights w_k = (k - 1/2) / 2^n.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sosrank/moments.hpp"
#include "sosrank/symsos.hpp"

namespace sosrank {

/// g_R(x_I) = |N \ (R xor I)| - 1/2.
Rational constraint_value(Subset r, Subset i, unsigned n);

/// Per-cardinality values of the R = N constraint: g_k = k - 1/2.
std::vector<Rational> full_constraint_values(unsigned n);

/// w_k = (k - 1/2) / 2^n.
SymmetricAssignment laurent_weights(unsigned n);

/// Reduced criterion for the R = N constraint at level t (1 <= t <= n).
ReducedVerdict symmetric_feasibility(unsigned n, unsigned t);

/// The explicit R = N constraint moment matrix at level t for the uniform
/// solution, for brute-force cross-checks.
MomentMatrix laurent_constraint_matrix(unsigned n, unsigned t);

/// sum_{k=1}^{n-t} C(n,k)(k-1/2) ((n-t)^{falling k} / n^{falling k})^2 - 1/2.
/// A negative margin certifies infeasibility at level t.
Rational upper_bound_certificate(unsigned n, unsigned t);

/// F(r) = sum_{k=1}^{n} C(n,k)(k-1/2) prod_i ((k - r_i)/r_i)^2.
/// Feasibility at level t is F >= 1/2 for every root vector of length t.
Rational root_form_objective(unsigned n, std::span<const Rational> roots);
double root_form_objective(unsigned n, std::span<const double> roots);

struct SearchOptions {
  unsigned restarts = 64;
  std::uint64_t seed = 0x5eed;
  unsigned max_sweeps = 400;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SearchResult {
  double best_value = 0;          // float objective at the best root vector
  Rational best_exact;            // exact objective at the snapped roots
  std::vector<Rational> best_roots;
  std::vector<double> restart_minima;  // exact objective per restart, as double
  Rational min_restart_exact;          // smallest exact restart value
  Rational max_restart_exact;          // largest exact restart value
};

/// Multi-start minimization of F over [1, n]^t. Throws
/// std::invalid_argument unless t <= n. Deterministic for a fixed seed.
SearchResult lower_bound_search(unsigned n, unsigned t, const SearchOptions& opts = {});

struct LevelVerdict {
  unsigned t = 0;
  bool feasible = false;
  Rational upper_cert_margin;
  std::optional<SearchResult> search;
  std::optional<bool> bruteforce_psd;  // full constraint matrix, small n
};

struct RankReport {
  unsigned n = 0;
  std::vector<LevelVerdict> levels;  // t = 1..n
  unsigned rank = 0;                 // first infeasible level
  std::optional<unsigned> first_negative_margin_t;
  bool monotone = true;  // feasibility never returns after the first infeasible level
  static constexpr const char* kStatus = "exact under cited-iff assumption";
};

struct RankOptions {
  bool run_search = false;
  SearchOptions search;
  /// Cross-check against the explicit constraint matrix when n is at most this.
  unsigned bruteforce_max_n = 0;
  unsigned threads = 0;  // workers over levels; 0: hardware concurrency
};

/// Throws std::invalid_argument for n < 2.
RankReport sos_rank(unsigned n, const RankOptions& opts = {});

struct TheoreticalBounds {
  double lower = 0;  // sqrt(n)/4
  double upper = 0;  // n - C n^{1/3}
  bool lower_condition_holds = false;  // 4^{-sqrt n} sqrt(n)^{sqrt(n)/2} >= 1/2
};

/// Throws std::invalid_argument for n < 4.
TheoreticalBounds theoretical_bounds(unsigned n, double c = 1.0);

/// (n - t*) / n^{1/3}, t* = smallest level with a negative certificate margin.
double fitted_upper_constant(unsigned n);

/// Root configurations used by the dominance argument: real roots plus
/// complex-conjugate pairs a +- bi.
struct RootConfiguration {
  std::vector<Rational> real_roots;
  std::vector<std::pair<Rational, Rational>> conjugate_pairs;
  std::size_t degree() const { return real_roots.size() + 2 * conjugate_pairs.size(); }
};

/// prod over roots of |(k - r)/r|^2 at the point k, exact.
Rational root_factor_product(const RootConfiguration& c, const Rational& k);
/// sum_{k=1}^{n} C(n,k)(k-1/2) root_factor_product(c, k).
Rational root_form_objective(unsigned n, const RootConfiguration& c);

/// Replace a +- bi by a double real root at sqrt(a^2 + b^2). Requires the
/// modulus to be rational (std::invalid_argument otherwise).
RootConfiguration merge_conjugate_pair(const RootConfiguration& c, std::size_t pair_index);
/// Reflect negative real roots to their absolute value.
RootConfiguration reflect_negative_roots(const RootConfiguration& c);
/// Clamp real roots in (0, 1) up to 1.
RootConfiguration clamp_small_roots(const RootConfiguration& c);
/// Clamp real roots above n down to n.
RootConfiguration clamp_large_roots(const RootConfiguration& c, unsigned n);
/// Append roots at n until the degree reaches t.
RootConfiguration pad_roots(const RootConfiguration& c, unsigned n, unsigned t);

}  // namespace sosrank
