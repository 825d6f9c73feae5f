#include "sosrank/serialize.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sosrank {

namespace {

// Shortest round-trip decimal for reports; fixed format keeps bytes stable.
std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Json to_json(const Rational& x) { return to_string(x); }

Json to_json(std::span<const Rational> xs) {
  Json arr = Json::array();
  for (const auto& x : xs) arr.push_back(to_string(x));
  return arr;
}

Json to_json(const UniPoly& p) { return to_json(std::span<const Rational>(p.coefficients())); }

Json to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<unsigned> subset_elements(Subset s) {
  std::vector<unsigned> out;
  for (unsigned i = 0; i < 32; ++i)
    if (s & (Subset{1} << i)) out.push_back(i + 1);
  return out;
}

Json to_json(const MomentMatrix& m) {
  Json order = Json::array();
  for (Subset s : m.order) order.push_back(subset_elements(s));
  return Json{{"n", m.n}, {"q", m.q}, {"order", std::move(order)}, {"entries", to_json(m.entries)}};
}

Json to_json(const PsdVerdict& v) {
  Json j{{"psd", v.is_psd}};
  if (v.witness) {
    j["witness"] = to_json(std::span<const Rational>(*v.witness));
    j["witness_value"] = to_string(v.witness_value);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const GPolySpec& g, unsigned n) {
  return Json{{"h", g.h}, {"sigma_p", to_json(g.sigma_p)}, {"sigma_q", to_json(g.sigma_q)}, {"expanded", to_json(expand(g, n))}};
}

Json to_json(const ReducedCriterion& c) {
  Json blocks = Json::array();
  for (const auto& b : c.blocks) {
    Json jb{{"h", b.h}, {"A", to_json(b.a)}};
    jb["B"] = b.b ? to_json(*b.b) : Json(nullptr);
    blocks.push_back(std::move(jb));
  }
  return Json{{"n", c.n}, {"t", c.t}, {"blocks", std::move(blocks)}};
}

Json to_json(const ReducedVerdict& v, unsigned n) {
  Json j{{"psd", v.is_psd()}};
  if (v.failure) {
    const auto& f = *v.failure;
    j["failure"] = Json{{"h", f.h},
                        {"matrix", f.kind == HankelKind::A ? "A" : "B"},
                        {"witness", to_json(std::span<const Rational>(f.witness))},
                        {"value", to_string(f.value)},
                        {"violating_G", to_json(f.violating, n)}};
  } else {
    j["failure"] = nullptr;
  }
  return j;
}

Json to_json(const CertificateReport& r) {
  Json brute{{"skipped", r.bruteforce.skipped}, {"dimension", r.bruteforce.dimension}};
  if (!r.bruteforce.skipped) {
    brute["psd"] = r.bruteforce.verdict.is_psd;
    brute["float_prescreen_agrees"] = r.bruteforce.float_agrees;
    if (r.bruteforce.verdict.witness) brute["witness_value"] = to_string(r.bruteforce.verdict.witness_value);
  } else {
    brute["psd"] = nullptr;
  }
  return Json{{"n", r.n},
              {"d", r.d},
              {"m", r.m},
              {"t", r.t},
              {"normalization_sum", to_string(r.normalization_sum)},
              {"objective_raw", to_string(r.objective_raw)},
              {"objective_normalized", to_string(r.objective_normalized)},
              {"g_sum", to_string(r.g_sum)},
              {"g_closed", to_string(r.g_closed)},
              {"middle_band_positive", r.middle_band_positive},
              {"coefficients_positive", r.coefficients_positive},
              {"decomposition_verified", r.decomposition_verified},
              {"reduced_psd", to_json(r.reduced, r.n)},
              {"bruteforce_psd", std::move(brute)},
              {"pass", r.passed()}};
}

Json to_json(const SearchResult& s) {
  Json minima = Json::array();
  for (double x : s.restart_minima) minima.push_back(format_double(x));
  return Json{{"best_value", format_double(s.best_value)},
              {"best_exact", to_string(s.best_exact)},
              {"best_exact_decimal", format_double(s.best_exact.get_d())},
              {"best_roots", to_json(std::span<const Rational>(s.best_roots))},
              {"min_restart_exact", to_string(s.min_restart_exact)},
              {"max_restart_exact", to_string(s.max_restart_exact)},
              {"restart_minima", std::move(minima)}};
}

Json to_json(const RankReport& r) {
  Json levels = Json::array();
  for (const auto& lv : r.levels) {
    Json j{{"t", lv.t},
           {"feasible", lv.feasible},
           {"upper_cert_margin", to_string(lv.upper_cert_margin)},
           {"upper_cert_margin_decimal", format_double(lv.upper_cert_margin.get_d())}};
    j["lower_search"] = lv.search ? to_json(*lv.search) : Json(nullptr);
    j["bruteforce_psd"] = lv.bruteforce_psd ? Json(*lv.bruteforce_psd) : Json(nullptr);
    levels.push_back(std::move(j));
  }
  Json j{{"n", r.n}, {"rank", r.rank}, {"rank_status", RankReport::kStatus}};
  j["first_negative_margin_t"] = r.first_negative_margin_t ? Json(*r.first_negative_margin_t) : Json(nullptr);
  j["rank_over_n"] = format_double(static_cast<double>(r.rank) / r.n);
  j["monotone"] = r.monotone;
  j["levels"] = std::move(levels);
  return j;
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw std::invalid_argument("rational must be a string \"p/q\" or an integer");
}

UniPoly unipoly_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be an array of rationals");
  std::vector<Rational> cs;
  for (const auto& x : j) cs.push_back(rational_from_json(x));
  return UniPoly(std::move(cs));
}

SymmetricAssignment assignment_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("weights"))
    throw std::invalid_argument("weights document needs \"n\" and \"weights\"");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) throw std::invalid_argument("\"n\" must be a positive integer");
  const auto n = j["n"].get<unsigned>();
  if (!j["weights"].is_array()) throw std::invalid_argument("\"weights\" must be an array");
  std::vector<Rational> w;
  for (const auto& x : j["weights"]) w.push_back(rational_from_json(x));
  return SymmetricAssignment(n, std::move(w));
}

std::string sweep_csv_row(const CertificateReport& r) {
  std::ostringstream os;
  os << r.n << ',' << r.d << ',' << r.t << ',' << to_string(r.normalization_sum) << ',' << to_string(r.g_sum) << ','
     << to_string(r.g_closed) << ',' << (r.reduced.is_psd() ? "true" : "false") << ','
     << (r.bruteforce.skipped ? "skipped" : (r.bruteforce.verdict.is_psd ? "true" : "false")) << ','
     << (r.passed() ? "true" : "false");
  return os.str();
}

std::string rank_csv_row(const RankReport& r) {
  std::ostringstream os;
  os << r.n << ',' << r.rank << ',';
  if (r.first_negative_margin_t) os << *r.first_negative_margin_t;
  os << ',';
  bool first = true;
  for (const auto& lv : r.levels) {
    if (!lv.search) continue;
    if (!first) os << ';';
    os << format_double(lv.search->best_exact.get_d());
    first = false;
  }
  return os.str();
}

}  // namespace sosrank
