#include "sosrank/moments.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace sosrank {

SymmetricAssignment::SymmetricAssignment(unsigned n_, std::vector<Rational> w) : n(n_), weights(std::move(w)) {
  if (weights.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("symmetric assignment needs n+1 weights, got " + std::to_string(weights.size()));
}

bool RationalMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

std::size_t moment_dimension(unsigned n, unsigned q) {
  Integer total = 0;
  for (unsigned i = 0; i <= std::min(n, q); ++i) {
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), n, i);
    total += c;
  }
  return total.fits_ulong_p() ? total.get_ui() : static_cast<std::size_t>(-1);
}

std::vector<Subset> subset_order(unsigned n, unsigned q) {
  if (n > 31) throw std::invalid_argument("subset bitmasks support n <= 31");
  std::vector<Subset> out;
  // Enumerate combinations of each size in lexicographic order of sorted elements.
  for (unsigned size = 0; size <= std::min(n, q); ++size) {
    std::vector<unsigned> idx(size);
    for (unsigned i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      Subset s = 0;
      for (unsigned e : idx) s |= Subset{1} << e;
      out.push_back(s);
      int pos = static_cast<int>(size) - 1;
      while (pos >= 0 && idx[pos] == n - size + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (unsigned i = pos + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return out;
}

namespace {

void check_level(unsigned n, unsigned q) {
  if (q > n) throw std::invalid_argument("moment level q exceeds n");
  if (moment_dimension(n, q) > kMaxMomentDimension)
    throw std::length_error("moment matrix dimension exceeds guardrail of " + std::to_string(kMaxMomentDimension));
}

MomentMatrix fill_by_union_size(unsigned n, unsigned q, const std::vector<Rational>& by_union) {
  MomentMatrix out{n, q, subset_order(n, q), {}};
  const std::size_t dim = out.order.size();
  out.entries = RationalMatrix(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) {
      const auto u = std::popcount(out.order[i] | out.order[j]);
      out.entries(i, j) = by_union[u];
      out.entries(j, i) = by_union[u];
    }
  return out;
}

}  // namespace

MomentMatrix build_moment_matrix(const SymmetricAssignment& w, unsigned q) {
  std::vector<Rational> g(w.n + 1, Rational(1));
  return build_constraint_matrix(w, g, q);
}

MomentMatrix build_constraint_matrix(const SymmetricAssignment& w, std::span<const Rational> g, unsigned q) {
  const unsigned n = w.n;
  if (g.size() != static_cast<std::size_t>(n) + 1) throw std::invalid_argument("constraint needs n+1 values");
  check_level(n, q);
  // Only unions of size <= 2q occur.
  const unsigned umax = std::min(n, 2 * q);
  std::vector<Rational> by_union(umax + 1);
  for (unsigned u = 0; u <= umax; ++u) {
    Rational s = 0;
    for (unsigned k = u; k <= n; ++k) s += binomial(n - u, k - u) * w[k] * g[k];
    by_union[u] = s;
  }
  return fill_by_union_size(n, q, by_union);
}

MomentMatrix build_subset_weighted_matrix(unsigned n, std::span<const Rational> subset_weights, unsigned q) {
  if (n > 24) throw std::invalid_argument("subset-weighted matrices support n <= 24");
  if (subset_weights.size() != (std::size_t{1} << n)) throw std::invalid_argument("need 2^n subset weights");
  check_level(n, q);
  // Superset sums: sup[U] = sum_{I >= U} c_I.
  std::vector<Rational> sup(subset_weights.begin(), subset_weights.end());
  for (unsigned bit = 0; bit < n; ++bit)
    for (Subset s = 0; s < sup.size(); ++s)
      if (!(s & (Subset{1} << bit))) sup[s] += sup[s | (Subset{1} << bit)];

  MomentMatrix out{n, q, subset_order(n, q), {}};
  const std::size_t dim = out.order.size();
  out.entries = RationalMatrix(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) {
      out.entries(i, j) = sup[out.order[i] | out.order[j]];
      out.entries(j, i) = out.entries(i, j);
    }
  return out;
}

Rational quadratic_form(const RationalMatrix& m, std::span<const Rational> v) {
  if (v.size() != m.dim()) throw std::invalid_argument("vector length mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (v[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (v[j] != 0) row += m(i, j) * v[j];
    acc += v[i] * row;
  }
  return acc;
}

namespace {

struct PivotRecord {
  std::size_t index;
  Integer diag;
  // Row of the scaled Schur complement at pivot time, over the indices still
  // active then (excluding the pivot itself).
  std::vector<std::pair<std::size_t, Integer>> row;
};

// Fraction-free symmetric elimination (Bareiss). After eliminating a pivot
// set P, entry (i,j) equals det(M[P+i, P+j]) = det(M[P,P]) * S_ij where S is
// the Schur complement; det(M[P,P]) > 0 along the way, so signs of the
// working matrix are those of S.
class SymmetricBareiss {
 public:
  explicit SymmetricBareiss(const RationalMatrix& m) : n_(m.dim()), a_(m.dim() * m.dim()) {
    Integer lcm = 1;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) {
        Integer v = lcm / m(i, j).get_den() * m(i, j).get_num();
        at(i, j) = v;
      }
    active_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) active_[i] = i;
  }

  // Returns a negative-direction witness over the full index set, or nullopt
  // when the matrix is PSD.
  std::optional<std::vector<Rational>> run() {
    Integer prev = 1;
    while (!active_.empty()) {
      if (auto w = local_witness()) return back_substitute(*w);
      if (active_.empty()) break;

      // All remaining diagonals are > 0; the smallest keeps the minors short.
      auto best = active_.begin();
      for (auto it = active_.begin(); it != active_.end(); ++it)
        if (cmp(at(*it, *it), at(*best, *best)) < 0) best = it;
      const std::size_t p = *best;
      active_.erase(best);
      PivotRecord rec{p, at(p, p), {}};
      rec.row.reserve(active_.size());
      for (std::size_t j : active_) rec.row.emplace_back(j, sym(p, j));

      for (std::size_t ii = 0; ii < active_.size(); ++ii) {
        const std::size_t i = active_[ii];
        for (std::size_t jj = ii; jj < active_.size(); ++jj) {
          const std::size_t j = active_[jj];
          mpz_ptr e = at(i, j).get_mpz_t();
          mpz_mul(e, e, rec.diag.get_mpz_t());
          mpz_submul(e, sym(i, p).get_mpz_t(), sym(p, j).get_mpz_t());
          mpz_divexact(e, e, prev.get_mpz_t());
        }
      }
      prev = rec.diag;
      pivots_.push_back(std::move(rec));
    }
    return std::nullopt;
  }

 private:
  Integer& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  // Only the upper triangle is maintained.
  Integer& sym(std::size_t i, std::size_t j) { return i <= j ? at(i, j) : at(j, i); }

  // Inspects the active block: a negative diagonal, or a zero diagonal with a
  // nonzero row, yields a witness in active coordinates. Zero rows are dropped.
  std::optional<std::vector<std::pair<std::size_t, Rational>>> local_witness() {
    for (std::size_t i : active_)
      if (sgn(at(i, i)) < 0) return std::vector<std::pair<std::size_t, Rational>>{{i, Rational(1)}};

    std::vector<std::size_t> keep;
    keep.reserve(active_.size());
    for (std::size_t i : active_) {
      if (sgn(at(i, i)) != 0) {
        keep.push_back(i);
        continue;
      }
      for (std::size_t j : active_) {
        if (j == i || sgn(sym(i, j)) == 0) continue;
        if (sgn(at(j, j)) == 0) {
          // (e_i - s e_j)^T S (e_i - s e_j) = -2 |S_ij|
          return std::vector<std::pair<std::size_t, Rational>>{{i, Rational(1)}, {j, Rational(-sgn(sym(i, j)))}};
        }
        // (t e_i + e_j)^T S (t e_i + e_j) = S_jj + 2 t S_ij = -S_jj with t = -S_jj / S_ij
        Rational t(at(j, j), sym(i, j));
        t.canonicalize();
        t = -t;
        return std::vector<std::pair<std::size_t, Rational>>{{i, t}, {j, Rational(1)}};
      }
      // zero row: drop
    }
    active_ = std::move(keep);
    return std::nullopt;
  }

  std::vector<Rational> back_substitute(const std::vector<std::pair<std::size_t, Rational>>& local) {
    std::vector<Rational> v(n_);
    for (const auto& [i, x] : local) v[i] = x;
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      Rational s = 0;
      for (const auto& [j, e] : it->row)
        if (v[j] != 0) s += Rational(e) * v[j];
      v[it->index] = -s / Rational(it->diag);
    }
    return v;
  }

  std::size_t n_;
  std::vector<Integer> a_;
  std::vector<std::size_t> active_;
  std::vector<PivotRecord> pivots_;
};

}  // namespace

PsdVerdict psd_exact(const RationalMatrix& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("psd_exact needs a symmetric matrix");
  SymmetricBareiss elim(m);
  auto w = elim.run();
  if (!w) return {};
  PsdVerdict out;
  out.is_psd = false;
  out.witness_value = quadratic_form(m, *w);
  if (out.witness_value >= 0) throw std::logic_error("internal error: PSD witness does not certify negativity");
  out.witness = std::move(*w);
  return out;
}

PsdVerdict psd_exact(const MomentMatrix& m) { return psd_exact(m.entries); }

bool psd_float(const RationalMatrix& m, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("psd_float needs tol > 0");
  if (m.dim() == 0) return true;
  Eigen::MatrixXd a(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) a(i, j) = m(i, j).get_d();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

bool psd_float(const MomentMatrix& m, double tol) { return psd_float(m.entries, tol); }

}  // namespace sosrank
