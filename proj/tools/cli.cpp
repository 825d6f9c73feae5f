#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sosrank/certificates.hpp"
#include "sosrank/laurentk.hpp"
#include "sosrank/parallel.hpp"
#include "sosrank/serialize.hpp"
#include "sosrank/symsos.hpp"
#include "sosrank/unipoly.hpp"

#ifndef SOSRANK_VERSION
#define SOSRANK_VERSION "0.0.0"
#endif

namespace sosrank::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckLog {
  std::vector<std::pair<std::string, bool>> checks;

  void add(std::string name, bool ok) { checks.emplace_back(std::move(name), ok); }
  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
  }
  Json summary() const {
    Json failed = Json::array();
    std::size_t passed = 0;
    for (const auto& [name, ok] : checks) {
      if (ok)
        ++passed;
      else
        failed.push_back(name);
    }
    return Json{{"total", checks.size()}, {"passed", passed}, {"failed", std::move(failed)}};
  }
};

struct Report {
  Json params = Json::object();
  std::optional<std::uint64_t> seed;
  Json results;
  std::string csv;
  CheckLog log;
};

struct Common {
  std::string out_dir;
  std::string format = "json";
  unsigned threads = 0;
};

Json manifest(const std::string& subcommand, const Report& r) {
  Json m{{"tool", "sosrank"}, {"version", SOSRANK_VERSION}, {"subcommand", subcommand}, {"params", r.params}};
  m["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  m["checks"] = r.log.summary();
  return m;
}

void emit(const std::string& subcommand, const Report& r, const Common& c, std::ostream& out) {
  Json doc{{"manifest", manifest(subcommand, r)}, {"results", r.results}};
  const std::string json_text = doc.dump(2) + "\n";
  const bool want_json = c.format != "csv";
  const bool want_csv = c.format != "json";
  if (c.out_dir.empty()) {
    if (want_json) out << json_text;
    if (want_json && want_csv) out << "\n";
    if (want_csv) out << r.csv;
    return;
  }
  std::filesystem::create_directories(c.out_dir);
  const auto base = std::filesystem::path(c.out_dir) / subcommand;
  if (want_json) {
    std::ofstream f(base.string() + ".json", std::ios::binary);
    f << json_text;
    if (!f) throw std::runtime_error("cannot write " + base.string() + ".json");
  }
  if (want_csv) {
    std::ofstream f(base.string() + ".csv", std::ios::binary);
    f << r.csv;
    if (!f) throw std::runtime_error("cannot write " + base.string() + ".csv");
  }
}

std::string instance_key(unsigned n, unsigned d) {
  return "n=" + std::to_string(n) + ",d=" + std::to_string(d);
}

void log_certificate(CheckLog& log, const CertificateReport& rep) {
  const auto key = instance_key(rep.n, rep.d);
  log.add(key + ":middle_band_positive", rep.middle_band_positive);
  log.add(key + ":coefficients_positive", rep.coefficients_positive);
  log.add(key + ":decomposition_verified", rep.decomposition_verified);
  log.add(key + ":normalization_sum_positive", sign(rep.normalization_sum) > 0);
  log.add(key + ":objective_negative", sign(rep.objective_raw) < 0);
  log.add(key + ":objective_equals_closed_form", rep.objective_raw == rep.g_closed);
  log.add(key + ":g_sum_equals_closed_form", rep.g_sum == rep.g_closed);
  log.add(key + ":reduced_psd", rep.reduced.is_psd());
  if (!rep.bruteforce.skipped) log.add(key + ":bruteforce_psd", rep.bruteforce.verdict.is_psd);
}

Report run_theorem2(unsigned n, unsigned d, bool skip_bruteforce) {
  std::optional<Instance> inst;
  try {
    inst.emplace(n, d);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  VerifyOptions opts;
  opts.skip_bruteforce = skip_bruteforce;
  const auto rep = verify_theorem2(*inst, opts);
  Report r;
  r.params = Json{{"n", n}, {"d", d}, {"skip_bruteforce", skip_bruteforce}};
  r.results = to_json(rep);
  r.csv = std::string(kSweepCsvHeader) + "\n" + sweep_csv_row(rep) + "\n";
  log_certificate(r.log, rep);
  return r;
}

Report run_theorem2_sweep(unsigned n_max, unsigned d_max, bool skip_bruteforce, unsigned threads) {
  if (n_max < 3) throw UsageError("--n-max must be at least 3");
  if (d_max < 1) throw UsageError("--d-max must be at least 1");
  std::vector<Instance> grid;
  for (unsigned n = 3; n <= n_max; n += 2)
    for (unsigned d = 1; d <= std::min(d_max, (n - 1) / 2); ++d) grid.emplace_back(n, d);
  VerifyOptions opts;
  opts.skip_bruteforce = skip_bruteforce;
  std::vector<CertificateReport> reports(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) { reports[i] = verify_theorem2(grid[i], opts); });

  Report r;
  r.params = Json{{"n_max", n_max}, {"d_max", d_max}, {"skip_bruteforce", skip_bruteforce}};
  r.results = Json::array();
  r.csv = std::string(kSweepCsvHeader) + "\n";
  for (const auto& rep : reports) {
    r.results.push_back(to_json(rep));
    r.csv += sweep_csv_row(rep) + "\n";
    log_certificate(r.log, rep);
  }
  return r;
}

Report run_rank_k(std::optional<unsigned> n, std::optional<unsigned> n_max, std::uint64_t seed, unsigned restarts,
                  unsigned bruteforce_max_n, unsigned threads) {
  if (n.has_value() == n_max.has_value()) throw UsageError("exactly one of --n and --n-max is required");
  const unsigned lo = n ? *n : 2;
  const unsigned hi = n ? *n : *n_max;
  if (lo < 2) throw UsageError("n must be at least 2");
  if (restarts < 1) throw UsageError("--restarts must be at least 1");

  RankOptions opts;
  opts.run_search = true;
  opts.search.seed = seed;
  opts.search.restarts = restarts;
  opts.search.threads = 1;
  opts.bruteforce_max_n = bruteforce_max_n;
  opts.threads = threads;

  Report r;
  r.seed = seed;
  r.params = Json{{"restarts", restarts}, {"bruteforce_max_n", bruteforce_max_n}};
  if (n)
    r.params["n"] = *n;
  else
    r.params["n_max"] = *n_max;
  r.results = Json::array();
  r.csv = std::string(kRankCsvHeader) + "\n";
  const Rational half(1, 2);
  for (unsigned k = lo; k <= hi; ++k) {
    const auto rep = sos_rank(k, opts);
    Json j = to_json(rep);
    r.results.push_back(std::move(j));
    r.csv += rank_csv_row(rep) + "\n";
    const auto key = "n=" + std::to_string(k);
    r.log.add(key + ":rank_at_most_n", rep.rank <= rep.n);
    r.log.add(key + ":monotone", rep.monotone);
    for (const auto& lv : rep.levels) {
      const auto lkey = key + ",t=" + std::to_string(lv.t);
      if (sign(lv.upper_cert_margin) < 0) r.log.add(lkey + ":negative_margin_infeasible", !lv.feasible);
      if (lv.feasible && lv.search) r.log.add(lkey + ":search_respects_feasibility", lv.search->min_restart_exact >= half);
      if (lv.bruteforce_psd) r.log.add(lkey + ":bruteforce_agrees", *lv.bruteforce_psd == lv.feasible);
    }
  }
  return r;
}

Report run_criterion(const std::string& path, unsigned t) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open weights file " + path);
  Json doc;
  try {
    doc = Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("invalid JSON in weights file: ") + e.what());
  }
  std::optional<SymmetricAssignment> w;
  try {
    w.emplace(assignment_from_json(doc));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (t < 1 || t > w->n) throw UsageError("--t must satisfy 1 <= t <= n");
  const auto crit = build_reduced(*w, t);
  const auto verdict = check_reduced(crit);

  Report r;
  r.params = Json{{"weights_file", path}, {"t", t}};
  r.results = Json{{"n", w->n}, {"t", t}, {"verdict", to_json(verdict, w->n)}, {"criterion", to_json(crit)}};
  std::ostringstream csv;
  csv << "n,t,psd,failing_h,failing_matrix,violation_value\n" << w->n << ',' << t << ',' << (verdict.is_psd() ? "true" : "false") << ',';
  if (verdict.failure)
    csv << verdict.failure->h << ',' << (verdict.failure->kind == HankelKind::A ? "A" : "B") << ','
        << to_string(verdict.failure->value);
  else
    csv << ",,";
  csv << "\n";
  r.csv = csv.str();
  r.log.add("reduced_psd", verdict.is_psd());
  return r;
}

Rational direct_inverse_falling(const Rational& x, const Rational& a, unsigned b) {
  return 1 / falling_factorial(x - a, b);
}

Report run_identity(unsigned d_max, unsigned m_max) {
  if (d_max < 1) throw UsageError("--d-max must be at least 1");
  if (m_max < 1) throw UsageError("--m-max must be at least 1");
  Report r;
  r.params = Json{{"d_max", d_max}, {"m_max", m_max}};
  Json g_rows = Json::array();
  Json mismatches = Json::array();
  std::ostringstream csv;
  csv << "d,n,g_sum,g_closed,dual_objective,match\n";
  for (unsigned d = 1; d <= d_max; ++d) {
    for (unsigned m = std::max(d, 1u); m <= m_max; ++m) {
      const unsigned n = 2 * m + 1;
      const Instance inst(n, d);
      const auto gs = g_sum_form(d, n);
      const auto gc = g_closed_form(d, n);
      const auto dual = objective_value(z_solution(inst), inst);
      const bool match = gs == gc && dual == gc;
      g_rows.push_back(Json{{"d", d}, {"n", n}, {"g_sum", to_string(gs)}, {"g_closed", to_string(gc)},
                            {"dual_objective", to_string(dual)}, {"match", match}});
      csv << d << ',' << n << ',' << to_string(gs) << ',' << to_string(gc) << ',' << to_string(dual) << ','
          << (match ? "true" : "false") << "\n";
      r.log.add(instance_key(n, d) + ":g_identity", match);
      if (!match) mismatches.push_back(Json{{"d", d}, {"n", n}});
    }
  }

  // Partial fractions of 1/(x-a)^{falling b} checked pointwise against the
  // direct quotient, and the alternating power sums they rest on.
  Json pf_rows = Json::array();
  const std::vector<Rational> shifts{Rational(0), Rational(1, 2), Rational(-3, 2), Rational(7, 3)};
  const std::vector<Rational> points{Rational(-5, 7), Rational(11, 5), Rational(41, 3), Rational(101, 4)};
  const unsigned b_max = 2 * d_max + 1;
  for (const auto& a : shifts) {
    for (unsigned b = 1; b <= b_max; ++b) {
      const auto pf = partial_fractions(a, b);
      bool ok = pf.poles.size() == b;
      for (const auto& x : points) ok = ok && pf(x) == direct_inverse_falling(x, a, b);
      pf_rows.push_back(Json{{"a", to_string(a)}, {"b", b}, {"match", ok}});
      r.log.add("partial_fractions:a=" + to_string(a) + ",b=" + std::to_string(b), ok);
    }
  }
  const unsigned mom_n = 2 * m_max + 1;
  bool moments_ok = true;
  for (unsigned c = 0; c <= mom_n; ++c) {
    const auto got = alternating_moment(mom_n, c);
    const Rational want = c < mom_n ? Rational(0) : sign_power(mom_n) * factorial(mom_n);
    moments_ok = moments_ok && got == want;
  }
  r.log.add("alternating_moments:n=" + std::to_string(mom_n), moments_ok);

  r.results = Json{{"g_identity", std::move(g_rows)},
                   {"mismatches", std::move(mismatches)},
                   {"partial_fractions", std::move(pf_rows)},
                   {"alternating_moments", Json{{"n", mom_n}, {"match", moments_ok}}}};
  r.csv = csv.str();
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact SoS hierarchy certificates for symmetric binary problems", "sosrank"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SOSRANK_VERSION);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out_dir, "Directory for <subcommand>.json / .csv (default: stdout)");
    sub->add_option("--format", common.format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));
    sub->add_option("--threads", common.threads, "Worker threads (0: hardware concurrency)");
  };

  unsigned n = 0, d = 0, n_max = 0, d_max = 0, m_max = 0, t = 0, restarts = 64, bf_max_n = 0;
  std::uint64_t seed = 0x5eed;
  bool skip_bf = false;
  std::string weights_path;

  auto* th2 = app.add_subcommand("theorem2", "Verify the degree-2d lower-bound certificate for one (n, d)");
  th2->add_option("--n", n, "Odd number of variables")->required();
  th2->add_option("--d", d, "Half-degree, 1 <= d <= (n-1)/2")->required();
  th2->add_flag("--skip-bruteforce", skip_bf, "Skip the full moment matrix check");
  add_common(th2);

  auto* sweep = app.add_subcommand("theorem2-sweep", "Verify certificates for all odd n <= n-max, d <= d-max");
  sweep->add_option("--n-max", n_max)->required();
  sweep->add_option("--d-max", d_max)->required();
  sweep->add_flag("--skip-bruteforce", skip_bf);
  add_common(sweep);

  auto* rank = app.add_subcommand("rank-k", "SoS rank of the empty polytope K");
  auto* opt_n = rank->add_option("--n", n, "Single n");
  auto* opt_nmax = rank->add_option("--n-max", n_max, "All n in [2, n-max]");
  opt_n->excludes(opt_nmax);
  rank->add_option("--seed", seed, "Seed for the root search");
  rank->add_option("--restarts", restarts, "Restarts per level");
  rank->add_option("--bruteforce-max-n", bf_max_n, "Cross-check full constraint matrices up to this n");
  add_common(rank);

  auto* crit = app.add_subcommand("criterion", "Reduced PSD criterion for a symmetric weight file");
  crit->add_option("weights", weights_path, "JSON file {\"n\": n, \"weights\": [...]}")->required();
  crit->add_option("--t", t, "Level")->required();
  add_common(crit);

  auto* ident = app.add_subcommand("identity", "g sum/closed-form and partial-fraction regression suites");
  ident->add_option("--d-max", d_max)->required();
  ident->add_option("--m-max", m_max)->required();
  add_common(ident);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << SOSRANK_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  std::string name;
  Report report;
  try {
    if (th2->parsed()) {
      name = "theorem2";
      report = run_theorem2(n, d, skip_bf);
    } else if (sweep->parsed()) {
      name = "theorem2-sweep";
      report = run_theorem2_sweep(n_max, d_max, skip_bf, common.threads);
    } else if (rank->parsed()) {
      name = "rank-k";
      std::optional<unsigned> one, upto;
      if (opt_n->count() > 0) one = n;
      if (opt_nmax->count() > 0) upto = n_max;
      report = run_rank_k(one, upto, seed, restarts, bf_max_n, common.threads);
    } else {
      if (crit->parsed()) {
        name = "criterion";
        report = run_criterion(weights_path, t);
      } else {
        name = "identity";
        report = run_identity(d_max, m_max);
      }
    }
    emit(name, report, common, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
  err << name << ": wall_time_s=" << wall.count() << "\n";

  if (!report.log.all_passed()) {
    for (const auto& [check, ok] : report.log.checks)
      if (!ok) err << "FAILED " << check << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace sosrank::cli
