#include "sosrank/certificates.hpp"

#include <stdexcept>
#include <string>

namespace sosrank {

Instance::Instance(unsigned n, unsigned d) : n_(n), d_(d) {
  if (n % 2 == 0) throw std::invalid_argument("instance needs odd n, got " + std::to_string(n));
  if (d < 1 || d > (n - 1) / 2)
    throw std::invalid_argument("instance needs 1 <= d <= (n-1)/2, got d=" + std::to_string(d) + " n=" + std::to_string(n));
}

Rational f_d_eval(const Rational& k, const Instance& inst) {
  return falling_factorial(k + inst.d() - inst.m() - 1, 2 * inst.d());
}

UniPoly f_d_poly(const Instance& inst) {
  return ascending_falling_poly(Rational(inst.d()) - inst.m() - 1, 2 * inst.d());
}

SymmetricAssignment y_alpha(unsigned n, const Rational& alpha) {
  if (alpha.get_den() == 1) throw std::invalid_argument("y_alpha needs non-integer alpha");
  if (alpha <= 0 || alpha > n) throw std::invalid_argument("y_alpha needs 0 < alpha <= n");
  const Rational scale = Rational(n + 1) * binomial(alpha, n + 1);
  std::vector<Rational> w(n + 1);
  for (unsigned k = 0; k <= n; ++k) w[k] = scale * sign_power(n - k) / (alpha - k);
  return {n, std::move(w)};
}

SymmetricAssignment z_solution(const Instance& inst) {
  const unsigned n = inst.n();
  const unsigned d = inst.d();
  const Rational scale = factorial(2 * d - 2) * (n + 1) * binomial(inst.half_n() - d + 1, n + 1);
  const Rational shift = inst.half_n() + d - 1;
  std::vector<Rational> w(n + 1);
  for (unsigned k = 0; k <= n; ++k) w[k] = scale * sign_power(n - k) / falling_factorial(shift - k, 2 * d - 1);
  return {n, std::move(w)};
}

std::vector<Rational> decomposition_coeffs(const Instance& inst) {
  const unsigned d = inst.d();
  const Rational top = inst.half_n() + d - 1;
  const Rational bottom = inst.half_n() - d + 1;
  std::vector<Rational> a(2 * d - 1);
  for (unsigned j = 0; j < a.size(); ++j)
    a[j] = binomial(2 * d - 2, j) * falling_factorial(top, j) / falling_factorial(bottom + j, j);
  return a;
}

std::vector<Rational> decomposition_points(const Instance& inst) {
  std::vector<Rational> pts(2 * inst.d() - 1);
  for (unsigned j = 0; j < pts.size(); ++j) pts[j] = inst.half_n() + inst.d() - 1 - j;
  return pts;
}

Rational normalization_sum(const SymmetricAssignment& w) {
  Rational s = 0;
  for (unsigned k = 0; k <= w.n; ++k) s += binomial(w.n, k) * w[k];
  return s;
}

SymmetricAssignment normalize(const SymmetricAssignment& w) {
  const Rational s = normalization_sum(w);
  if (s <= 0) throw std::domain_error("cannot normalize: sum_k C(n,k) w_k = " + to_string(s) + " is not positive");
  std::vector<Rational> out(w.weights);
  for (auto& x : out) x /= s;
  return {w.n, std::move(out)};
}

Rational pair_with_poly(const SymmetricAssignment& w, const UniPoly& p) {
  Rational s = 0;
  for (unsigned k = 0; k <= w.n; ++k) s += binomial(w.n, k) * w[k] * p(Rational(k));
  return s;
}

Rational objective_value(const SymmetricAssignment& w, const Instance& inst) {
  Rational s = 0;
  for (unsigned k = 0; k <= w.n; ++k) s += binomial(w.n, k) * w[k] * f_d_eval(Rational(k), inst);
  return s;
}

Rational g_sum_form(unsigned d, unsigned n, std::optional<unsigned> terms) {
  const Instance inst(n, d);
  const Rational top = inst.half_n() + d - 1;
  const Rational bottom = inst.half_n() - d + 1;
  const Rational base = Rational(4 * d - 3, 2);  // 2d - 3/2
  const unsigned count = terms.value_or(2 * d - 1);
  Rational s = 0;
  for (unsigned j = 0; j < count; ++j) {
    // C(2d-2, j) is written through the rising factorial of 2-2d so that
    // terms past j = 2d-2 vanish rather than fall outside the binomial.
    const Rational coeff = sign_power(j) * rising_factorial(Rational(2) - 2 * Rational(d), j) / factorial(j);
    s += coeff * falling_factorial(top, j) / falling_factorial(bottom + j, j) * falling_factorial(base - j, 2 * d);
  }
  return s;
}

Rational g_closed_form(unsigned d, unsigned n) {
  const Instance inst(n, d);
  const unsigned m = inst.m();
  const long dl = d;
  const long ml = m;
  const Rational lead = falling_factorial(Rational(4 * d - 3, 2), 2 * d);
  const Rational left = pow(Rational(4), d - 1) * factorial(2 * d - 2) * double_factorial(2 * dl - 1) /
                        (factorial(d - 1) * double_factorial(4 * dl - 3));
  const Rational right = double_factorial(2 * ml - 2 * dl + 3) * factorial(m - 1) /
                         (factorial(m - d) * double_factorial(2 * ml + 1));
  return lead * left * right;
}

IdentitySides lemma4_identity(const Instance& inst, const UniPoly& p, bool allow_any_degree) {
  const int bound = 2 * static_cast<int>(inst.level());
  if (!allow_any_degree && p.degree() > bound)
    throw std::invalid_argument("identity needs deg P <= " + std::to_string(bound) + ", got " + std::to_string(p.degree()));
  IdentitySides out;
  out.lhs = pair_with_poly(z_solution(inst), p);
  const auto a = decomposition_coeffs(inst);
  const auto pts = decomposition_points(inst);
  out.rhs = 0;
  for (std::size_t j = 0; j < a.size(); ++j) out.rhs += a[j] * p(pts[j]);
  return out;
}

UniPoly lemma4_tightness_poly(const Instance& inst) {
  return descending_falling_poly(inst.half_n() + inst.d() - 1, 2 * inst.d() - 1) * UniPoly::monomial(inst.n());
}

bool CertificateReport::passed() const {
  const bool brute_ok = bruteforce.skipped || bruteforce.verdict.is_psd;
  return middle_band_positive && decomposition_verified && coefficients_positive && normalization_sum > 0 &&
         reduced.is_psd() && brute_ok && objective_raw == g_closed && g_sum == g_closed && objective_raw < 0;
}

CertificateReport verify_theorem2(const Instance& inst, const VerifyOptions& opts) {
  const unsigned n = inst.n();
  const unsigned d = inst.d();
  const unsigned m = inst.m();
  CertificateReport r;
  r.n = n;
  r.d = d;
  r.m = m;
  r.t = inst.level();

  const SymmetricAssignment z = z_solution(inst);

  r.middle_band_positive = true;
  for (unsigned k = m - d + 1; k <= m + d; ++k) r.middle_band_positive = r.middle_band_positive && z[k] > 0;

  const auto a = decomposition_coeffs(inst);
  const auto pts = decomposition_points(inst);
  r.coefficients_positive = true;
  for (const auto& x : a) r.coefficients_positive = r.coefficients_positive && x > 0;
  std::vector<Rational> combined(n + 1);
  for (std::size_t j = 0; j < a.size(); ++j) {
    const SymmetricAssignment y = y_alpha(n, pts[j]);
    for (unsigned k = 0; k <= n; ++k) combined[k] += a[j] * y[k];
  }
  r.decomposition_verified = combined == z.weights;

  r.normalization_sum = normalization_sum(z);
  r.reduced = check_symmetric_psd(z, r.t);

  const std::size_t dim = moment_dimension(n, r.t);
  r.bruteforce.dimension = dim;
  if (!opts.skip_bruteforce && dim <= opts.bruteforce_max_dimension) {
    const MomentMatrix mm = build_moment_matrix(z, r.t);
    r.bruteforce.skipped = false;
    r.bruteforce.verdict = psd_exact(mm);
    r.bruteforce.float_agrees = psd_float(mm, opts.float_tolerance) == r.bruteforce.verdict.is_psd;
  }

  r.objective_raw = objective_value(z, inst);
  r.g_sum = g_sum_form(d, n);
  r.g_closed = g_closed_form(d, n);
  r.objective_normalized = r.normalization_sum > 0 ? r.objective_raw / r.normalization_sum : Rational(0);
  return r;
}

}  // namespace sosrank
