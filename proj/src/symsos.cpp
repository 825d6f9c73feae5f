#include "sosrank/symsos.hpp"

#include <algorithm>
#include <stdexcept>

namespace sosrank {

UniPoly zero_pattern_poly(unsigned n, unsigned h) {
  RootFormPoly rf{1, {}};
  for (unsigned i = 0; i < h; ++i) {
    // (k - i)(n - i - k) = -(k - i)(k - (n - i))
    rf.leading = -rf.leading;
    rf.roots.push_back(i);
    rf.roots.push_back(Rational(n) - i);
  }
  return expand(rf);
}

UniPoly interval_weight_poly(unsigned n, unsigned h) {
  // (k - (h-1)) * ((n-h+1) - k)
  return expand(RootFormPoly{-1, {Rational(h) - 1, Rational(n) - h + 1}});
}

UniPoly expand(const GPolySpec& g, unsigned n) {
  UniPoly inner = g.sigma_p * g.sigma_p + interval_weight_poly(n, g.h) * g.sigma_q * g.sigma_q;
  return zero_pattern_poly(n, g.h) * inner;
}

MembershipReport verify_membership(const GPolySpec& g, unsigned n, unsigned t) {
  MembershipReport r;
  const UniPoly full = expand(g, n);
  const int h = static_cast<int>(g.h);
  const int ti = static_cast<int>(t);

  r.degree_ok = full.degree() <= 2 * ti;
  r.shape_ok = h <= ti && g.sigma_p.degree() <= ti - h && g.sigma_q.degree() <= ti - h - 1;

  r.zeros_ok = true;
  if (h >= 1) {
    for (int k = 0; k <= h - 1; ++k) r.zeros_ok = r.zeros_ok && full(Rational(k)) == 0;
    for (int k = static_cast<int>(n) - h + 1; k <= static_cast<int>(n); ++k) r.zeros_ok = r.zeros_ok && full(Rational(k)) == 0;
  }

  const UniPoly pi = zero_pattern_poly(n, g.h);
  auto [quot, rem] = divrem(full, pi);
  const UniPoly expected = g.sigma_p * g.sigma_p + interval_weight_poly(n, g.h) * g.sigma_q * g.sigma_q;
  r.divisible_ok = rem.is_zero() && quot == expected;

  r.sampled_nonneg = true;
  const Rational lo = Rational(h - 1);
  const Rational hi = Rational(static_cast<int>(n) - h + 1);
  for (Rational x = lo; x <= hi; x += Rational(1, 2)) r.sampled_nonneg = r.sampled_nonneg && full(x) >= 0;
  return r;
}

namespace {

// M[i][j] = sum_k weight_k k^{i+j} over k = h..n-h.
RationalMatrix hankel(const std::vector<std::pair<unsigned, Rational>>& weights, unsigned size) {
  std::vector<Rational> moments(size == 0 ? 0 : 2 * size - 1);
  for (const auto& [k, c] : weights) {
    Rational power = 1;
    for (auto& m : moments) {
      m += c * power;
      power *= k;
    }
  }
  RationalMatrix out(size);
  for (unsigned i = 0; i < size; ++i)
    for (unsigned j = 0; j < size; ++j) out(i, j) = moments[i + j];
  return out;
}

}  // namespace

ReducedCriterion build_reduced(const SymmetricAssignment& w, unsigned t) {
  const unsigned n = w.n;
  if (t < 1 || t > n) throw std::invalid_argument("reduced criterion needs 1 <= t <= n");
  ReducedCriterion out{n, t, {}};
  const unsigned hmax = std::min(t, n / 2);
  for (unsigned h = 0; h <= hmax; ++h) {
    const UniPoly pi = zero_pattern_poly(n, h);
    const UniPoly s = interval_weight_poly(n, h);
    std::vector<std::pair<unsigned, Rational>> wa, wb;
    for (unsigned k = h; k <= n - h; ++k) {
      const Rational base = binomial(n, k) * w[k] * pi(Rational(k));
      wa.emplace_back(k, base);
      wb.emplace_back(k, base * s(Rational(k)));
    }
    ReducedBlock block{h, hankel(wa, t - h + 1), std::nullopt};
    if (t > h) block.b = hankel(wb, t - h);
    out.blocks.push_back(std::move(block));
  }
  return out;
}

ReducedVerdict check_reduced(const ReducedCriterion& c) {
  auto fail = [&](unsigned h, HankelKind kind, PsdVerdict v) {
    ReducedFailure f{h, kind, *v.witness, v.witness_value, GPolySpec{h, {}, {}}};
    if (kind == HankelKind::A)
      f.violating.sigma_p = UniPoly(f.witness);
    else
      f.violating.sigma_q = UniPoly(f.witness);
    return ReducedVerdict{std::move(v), std::move(f)};
  };
  for (const auto& block : c.blocks) {
    PsdVerdict va = psd_exact(block.a);
    if (!va.is_psd) return fail(block.h, HankelKind::A, std::move(va));
    if (block.b) {
      PsdVerdict vb = psd_exact(*block.b);
      if (!vb.is_psd) return fail(block.h, HankelKind::B, std::move(vb));
    }
  }
  return {};
}

ReducedVerdict check_symmetric_psd(const SymmetricAssignment& w, unsigned t) { return check_reduced(build_reduced(w, t)); }

Rational eval_condition(const SymmetricAssignment& w, const GPolySpec& g) {
  const unsigned n = w.n;
  const UniPoly full = expand(g, n);
  Rational acc = 0;
  if (2 * g.h > n) return acc;
  for (unsigned k = g.h; k <= n - g.h; ++k) acc += binomial(n, k) * w[k] * full(Rational(k));
  return acc;
}

}  // namespace sosrank
