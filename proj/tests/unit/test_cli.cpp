#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "sosrank/serialize.hpp"

using sosrank::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = sosrank::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("sosrank_cli_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

TEST_CASE("theorem2 reports the objective") {
  const auto r = run({"theorem2", "--n", "5", "--d", "1"});
  CHECK(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["results"]["objective_raw"] == "-1/4");
  CHECK(j["results"]["pass"] == true);
  CHECK(j["manifest"]["subcommand"] == "theorem2");
  CHECK(j["manifest"]["params"]["n"] == 5);
  CHECK(j["manifest"]["checks"]["failed"].empty());
  CHECK(r.err.find("wall_time_s=") != std::string::npos);
  CHECK(r.out.find("wall") == std::string::npos);
}

TEST_CASE("invalid arguments exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"theorem2", "--n", "4", "--d", "1"}).code == 2);
  CHECK(run({"theorem2", "--n", "5"}).code == 2);
  CHECK(run({"theorem2", "--n", "5", "--d", "3"}).code == 2);
  CHECK(run({"theorem2", "--n", "five", "--d", "1"}).code == 2);
  CHECK(run({"theorem2", "--n", "5", "--d", "1", "--format", "xml"}).code == 2);
  CHECK(run({"rank-k"}).code == 2);
  CHECK(run({"rank-k", "--n", "4", "--n-max", "5"}).code == 2);
  CHECK(run({"rank-k", "--n", "1"}).code == 2);
  CHECK(run({"criterion", "/nonexistent/weights.json", "--t", "1"}).code == 2);
  CHECK(run({"identity", "--d-max", "0", "--m-max", "3"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("rank-k reports a rank at most n") {
  const auto r = run({"rank-k", "--n", "4"});
  CHECK(r.code == 0);
  const auto j = Json::parse(r.out);
  REQUIRE(j["results"].size() == 1);
  CHECK(j["results"][0]["rank"].get<unsigned>() <= 4);
  CHECK(j["manifest"]["seed"].is_number_unsigned());
}

TEST_CASE("rank-k csv") {
  const auto r = run({"rank-k", "--n-max", "5", "--restarts", "4", "--format", "csv"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "n,rank,first_negative_margin_t,lower_search_values");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("identity suite passes") {
  const auto r = run({"identity", "--d-max", "5", "--m-max", "10"});
  CHECK(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["results"]["mismatches"].empty());
  CHECK(j["results"]["alternating_moments"]["match"] == true);
}

TEST_CASE("criterion verdicts and witnesses") {
  const auto dir = scratch_dir("criterion");
  {
    std::ofstream(dir / "good.json") << R"({"n": 3, "weights": ["1/8", "1/8", "1/8", "1/8"]})";
    std::ofstream(dir / "bad.json") << R"({"n": 4, "weights": [-1, 0, 0, 0, 0]})";
    std::ofstream(dir / "broken.json") << R"({"n": 4, "weights": [1]})";
  }
  const auto good = run({"criterion", (dir / "good.json").string(), "--t", "1"});
  CHECK(good.code == 0);
  CHECK(Json::parse(good.out)["results"]["verdict"]["psd"] == true);

  const auto bad = run({"criterion", (dir / "bad.json").string(), "--t", "1"});
  CHECK(bad.code == 1);
  const auto j = Json::parse(bad.out);
  CHECK(j["results"]["verdict"]["psd"] == false);
  CHECK(j["results"]["verdict"]["failure"]["witness"].size() > 0);
  CHECK(j["results"]["verdict"]["failure"]["violating_G"]["h"] == 0);

  CHECK(run({"criterion", (dir / "broken.json").string(), "--t", "1"}).code == 2);
  CHECK(run({"criterion", (dir / "good.json").string(), "--t", "4"}).code == 2);
}

TEST_CASE("--out writes report files") {
  const auto dir = scratch_dir("out");
  const auto r = run({"theorem2-sweep", "--n-max", "5", "--d-max", "2", "--format", "both", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const auto csv = slurp(dir / "theorem2-sweep.csv");
  CHECK(csv.rfind("n,d,t,normalization_sum,g_sum,g_closed,reduced_psd,bruteforce_psd,pass\n", 0) == 0);
  const auto j = Json::parse(slurp(dir / "theorem2-sweep.json"));
  CHECK(j["results"].size() == 3);
}

TEST_CASE("identical invocations produce identical bytes") {
  const std::vector<std::string> args{"rank-k", "--n-max", "7", "--seed", "12345", "--restarts", "8"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto other = args;
  other[4] = "999";
  CHECK(run(other).out != a.out);
}
