#pragma once

// Full (unreduced) SoS moment matrices indexed by variable subsets, and exact
// positive-semidefiniteness decisions on them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sosrank/exactnum.hpp"

namespace sosrank {

/// A subset of {1..n} as a bitmask; bit i-1 stands for element i.
using Subset = std::uint32_t;

/// Largest moment matrix we are willing to build.
inline constexpr std::size_t kMaxMomentDimension = 5000;

/// Per-cardinality weights w_0..w_n: every I with |I| = k carries w_k.
struct SymmetricAssignment {
  unsigned n = 0;
  std::vector<Rational> weights;

  SymmetricAssignment() = default;
  /// Throws std::invalid_argument unless weights.size() == n + 1.
  SymmetricAssignment(unsigned n, std::vector<Rational> weights);

  const Rational& operator[](unsigned k) const { return weights[k]; }
};

/// Dense square matrix of rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  std::size_t dim() const { return dim_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  bool is_symmetric() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Rational> data_;
};

struct MomentMatrix {
  unsigned n = 0;
  unsigned q = 0;
  /// Rows/columns: all subsets with |J| <= q, by size then lexicographically.
  std::vector<Subset> order;
  RationalMatrix entries;
};

struct PsdVerdict {
  bool is_psd = true;
  /// On failure, v with v^T M v < 0 (exactly).
  std::optional<std::vector<Rational>> witness;
  /// v^T M v for the witness; zero when is_psd.
  Rational witness_value = 0;
};

/// Canonical index order: by size, then lexicographic on sorted elements.
std::vector<Subset> subset_order(unsigned n, unsigned q);

std::size_t moment_dimension(unsigned n, unsigned q);

/// sum_I w_{|I|} Z_I Z_I^T with zeta vectors over subsets of size <= q.
/// Entry (J1, J2) = sum_{k >= u} C(n-u, k-u) w_k with u = |J1 u J2|.
/// Throws std::invalid_argument when q > n, std::length_error when the
/// dimension exceeds kMaxMomentDimension.
MomentMatrix build_moment_matrix(const SymmetricAssignment& w, unsigned q);

/// Same as build_moment_matrix with weights w_k * g_k.
MomentMatrix build_constraint_matrix(const SymmetricAssignment& w, std::span<const Rational> g, unsigned q);

/// sum_I c_I Z_I Z_I^T for an arbitrary (non-symmetric) weight per subset.
/// subset_weights is indexed by the bitmask of I and has 2^n entries.
MomentMatrix build_subset_weighted_matrix(unsigned n, std::span<const Rational> subset_weights, unsigned q);

/// Exact LDL^T-style decision with diagonal pivoting. A zero pivot is
/// accepted only when its remaining row vanishes. Throws
/// std::invalid_argument for a non-symmetric input.
PsdVerdict psd_exact(const RationalMatrix& m);
PsdVerdict psd_exact(const MomentMatrix& m);

/// Double-precision pre-screen: smallest eigenvalue >= -tol. Advisory only.
bool psd_float(const RationalMatrix& m, double tol);
bool psd_float(const MomentMatrix& m, double tol);

Rational quadratic_form(const RationalMatrix& m, std::span<const Rational> v);

}  // namespace sosrank
