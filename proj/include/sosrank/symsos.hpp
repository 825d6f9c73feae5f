#pragma once

// Symmetry-reduced PSD criterion. For symmetric weights w_0..w_n the level-t
// moment condition is implied by
//
//   sum_{k=h}^{n-h} C(n,k) w_k G_h(k) >= 0   for every admissible G_h,
//
// and every admissible G_h has the form Pi_h(k) (p(k)^2 + s_h(k) q(k)^2) with
//   Pi_h(k) = prod_{i<h} (k-i)(n-i-k),   s_h(k) = (k-h+1)(n-h+1-k),
// deg p <= t-h and deg q <= t-h-1. Nonnegativity over all p and q is two
// Hankel PSD conditions per h.

#include <optional>
#include <vector>

#include "sosrank/moments.hpp"
#include "sosrank/unipoly.hpp"

namespace sosrank {

/// G_h = Pi_h * (sigma_p^2 + s_h * sigma_q^2).
struct GPolySpec {
  unsigned h = 0;
  UniPoly sigma_p;
  UniPoly sigma_q;
};

/// prod_{i<h} (k-i)(n-i-k).
UniPoly zero_pattern_poly(unsigned n, unsigned h);
/// (k-h+1)(n-h+1-k).
UniPoly interval_weight_poly(unsigned n, unsigned h);
UniPoly expand(const GPolySpec& g, unsigned n);

struct MembershipReport {
  bool degree_ok = false;      // deg G <= 2t
  bool zeros_ok = false;       // G vanishes on {0..h-1} u {n-h+1..n}
  bool divisible_ok = false;   // Pi_h | G with quotient p^2 + s q^2
  bool shape_ok = false;       // h <= t, deg p <= t-h, deg q <= t-h-1
  bool sampled_nonneg = false; // G >= 0 at the integers and half-integers of [h-1, n-h+1]
  bool ok() const { return degree_ok && zeros_ok && divisible_ok && shape_ok && sampled_nonneg; }
};

MembershipReport verify_membership(const GPolySpec& g, unsigned n, unsigned t);

struct ReducedBlock {
  unsigned h = 0;
  RationalMatrix a;                 // (t-h+1)^2
  std::optional<RationalMatrix> b;  // (t-h)^2, absent when t == h
};

struct ReducedCriterion {
  unsigned n = 0;
  unsigned t = 0;
  std::vector<ReducedBlock> blocks;  // h = 0..min(t, n/2)
};

enum class HankelKind { A, B };

struct ReducedFailure {
  unsigned h = 0;
  HankelKind kind = HankelKind::A;
  std::vector<Rational> witness;  // coefficients of p (kind A) or q (kind B)
  Rational value;                 // witness^T M witness < 0
  GPolySpec violating;
};

struct ReducedVerdict {
  PsdVerdict verdict;
  std::optional<ReducedFailure> failure;
  bool is_psd() const { return verdict.is_psd; }
};

/// Throws std::invalid_argument unless 1 <= t <= n.
ReducedCriterion build_reduced(const SymmetricAssignment& w, unsigned t);

/// Checks every block; stops at the first failing one (h ascending, A before B).
ReducedVerdict check_reduced(const ReducedCriterion& c);

/// Convenience: check_reduced(build_reduced(w, t)).
ReducedVerdict check_symmetric_psd(const SymmetricAssignment& w, unsigned t);

/// sum_{k=h}^{n-h} C(n,k) w_k G_h(k).
Rational eval_condition(const SymmetricAssignment& w, const GPolySpec& g);

}  // namespace sosrank
