#pragma once

// Lower-bound certificates for minimizing the degree-2d polynomial
//   f_d(x) = (|x| + d - m - 1)^{falling 2d}
// over {0,1}^n with n = 2m+1: an explicit symmetric solution that stays
// feasible at level m+d-1 yet has negative objective.

#include <optional>
#include <vector>

#include "sosrank/moments.hpp"
#include "sosrank/symsos.hpp"
#include "sosrank/unipoly.hpp"

namespace sosrank {

/// n odd, 1 <= d <= m = (n-1)/2, certificate level t = m + d - 1.
class Instance {
 public:
  /// Throws std::invalid_argument when n is even or d is out of range.
  Instance(unsigned n, unsigned d);

  unsigned n() const { return n_; }
  unsigned d() const { return d_; }
  unsigned m() const { return (n_ - 1) / 2; }
  unsigned level() const { return m() + d_ - 1; }
  /// n/2 as an exact half-integer.
  Rational half_n() const { return Rational(n_, 2); }

 private:
  unsigned n_;
  unsigned d_;
};

/// f_d(k) = (k + d - m - 1)^{falling 2d}.
Rational f_d_eval(const Rational& k, const Instance& inst);
UniPoly f_d_poly(const Instance& inst);

/// w_k = (n+1) C(alpha, n+1) (-1)^{n-k} / (alpha - k). Throws
/// std::invalid_argument for integer alpha or alpha outside (0, n].
SymmetricAssignment y_alpha(unsigned n, const Rational& alpha);

/// w_k = (2d-2)! (n+1) C(n/2-d+1, n+1) (-1)^{n-k} / (n/2+d-1-k)^{falling 2d-1}.
SymmetricAssignment z_solution(const Instance& inst);

/// a_j = C(2d-2, j) (n/2+d-1)^{falling j} / (n/2-d+1+j)^{falling j}, j = 0..2d-2.
std::vector<Rational> decomposition_coeffs(const Instance& inst);

/// The evaluation points n/2+d-1-j paired with decomposition_coeffs.
std::vector<Rational> decomposition_points(const Instance& inst);

/// sum_k C(n,k) w_k.
Rational normalization_sum(const SymmetricAssignment& w);

/// w / normalization_sum(w). Throws std::domain_error when the sum is <= 0.
SymmetricAssignment normalize(const SymmetricAssignment& w);

/// sum_k C(n,k) w_k f_d(k).
Rational objective_value(const SymmetricAssignment& w, const Instance& inst);

/// sum_k C(n,k) w_k P(k).
Rational pair_with_poly(const SymmetricAssignment& w, const UniPoly& p);

/// The finite hypergeometric-type sum defining g(d, n). `terms` overrides the
/// number of summands (default 2d-1); extra terms vanish.
Rational g_sum_form(unsigned d, unsigned n, std::optional<unsigned> terms = std::nullopt);

/// Double-factorial closed form of g(d, n).
Rational g_closed_form(unsigned d, unsigned n);

struct IdentitySides {
  Rational lhs;
  Rational rhs;
};

/// lhs = sum_k C(n,k) z_k P(k), rhs = sum_j a_j P(n/2+d-1-j).
/// Throws std::invalid_argument when deg P > 2(m+d-1), unless
/// allow_any_degree is set (used to exhibit the failure above the bound).
IdentitySides lemma4_identity(const Instance& inst, const UniPoly& p, bool allow_any_degree = false);

/// The degree-2(m+d) polynomial (n/2+d-1-k)^{falling 2d-1} * k^n, for which
/// the identity breaks.
UniPoly lemma4_tightness_poly(const Instance& inst);

struct BruteforceOutcome {
  bool skipped = true;
  PsdVerdict verdict;
  std::size_t dimension = 0;
  bool float_agrees = true;  // psd_float(1e-9) matched the exact verdict
};

struct CertificateReport {
  unsigned n = 0;
  unsigned d = 0;
  unsigned m = 0;
  unsigned t = 0;
  Rational normalization_sum;
  Rational objective_raw;         // = g(d, n)
  Rational objective_normalized;  // objective_raw / normalization_sum
  Rational g_sum;
  Rational g_closed;
  bool middle_band_positive = false;
  bool decomposition_verified = false;
  bool coefficients_positive = false;
  ReducedVerdict reduced;
  BruteforceOutcome bruteforce;

  bool passed() const;
};

struct VerifyOptions {
  bool skip_bruteforce = false;
  /// Brute force runs only when the moment dimension is at most this.
  std::size_t bruteforce_max_dimension = kMaxMomentDimension;
  double float_tolerance = 1e-9;
};

CertificateReport verify_theorem2(const Instance& inst, const VerifyOptions& opts = {});

}  // namespace sosrank
