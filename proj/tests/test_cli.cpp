#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dpgs/cli.hpp"
#include "dpgs/graph.hpp"
#include "dpgs/summary.hpp"

namespace fs = std::filesystem;
using namespace dpgs;

namespace {

fs::path workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::path(DPGS_TEST_TMPDIR) / "cli_work";
    fs::remove_all(d);
    fs::create_directories(d);
    setenv("DPGS_LOG", "quiet", 1);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run(std::vector<std::string> args) { return run_cli(args); }

}  // namespace

TEST_CASE("generate, summarize, rerun") {
  const auto g = path("plaw.tsv");
  REQUIRE(run({"generate", "--model", "plaw", "--n", "3000", "--alpha", "3.0", "--seed", "2",
               "--output", g}) == kExitOk);
  CHECK(fs::exists(g + ".manifest.json"));

  const auto out = path("plaw.summary");
  REQUIRE(run({"summarize", "--input", g, "--method", "dpgs", "--target-ratio", "0.5", "--seed",
               "7", "--output", out}) == kExitOk);
  std::ifstream in(g);
  auto loaded = load_edge_list(in, IdDialect::kInteger);
  std::ifstream sin(out);
  SummaryGraph s = read_summary(sin, loaded.graph, loaded.original_ids);
  CHECK(s.num_supernodes() <= loaded.graph.num_nodes() / 2);

  auto manifest = nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(manifest["command"] == "summarize");
  CHECK(manifest["seed"] == 7);
  CHECK(manifest.contains("tool_version"));

  const auto first = slurp(out);
  fs::remove(out);
  REQUIRE(run({"rerun", "--manifest", out + ".manifest.json"}) == kExitOk);
  CHECK(slurp(out) == first);

  // The JSONL log carries one record per iteration.
  std::ifstream log(out + ".log.jsonl");
  std::string line;
  int records = 0;
  while (std::getline(log, line)) {
    auto rec = nlohmann::json::parse(line);
    CHECK(rec.contains("total_bits"));
    ++records;
  }
  CHECK(records > 0);
}

TEST_CASE("k-Gs hits k exactly") {
  const auto g = path("er.tsv");
  REQUIRE(run({"generate", "--model", "er", "--n", "400", "--p", "0.02", "--seed", "1",
               "--output", g}) == kExitOk);
  const auto out = path("er.kgs.summary");
  REQUIRE(run({"summarize", "--input", g, "--method", "kgs", "--k", "100", "--output", out}) ==
          kExitOk);
  std::istringstream header(slurp(out));
  std::size_t n = 0, n_s = 0;
  header >> n >> n_s;
  CHECK(n_s == 100);
  CHECK(run({"summarize", "--input", g, "--method", "kgs", "--output", out}) == kExitUsage);
}

TEST_CASE("evaluate the star summary") {
  const auto g = path("star.tsv");
  std::ofstream(g) << "0 1\n0 2\n0 3\n";
  const auto s = path("star.summary");
  std::ofstream(s) << "4 2 1\n0 0\n1 1\n2 1\n3 1\n0 1 3\n";
  const auto metrics = path("star.metrics.json");
  REQUIRE(run({"evaluate", "--graph", g, "--summary", s, "--spectral", "--assert-bound",
               "--scheme", "both", "--output", metrics}) == kExitOk);
  auto j = nlohmann::json::parse(slurp(metrics));
  CHECK(j["spectral_check"]["holds"] == true);
  CHECK(j["spectral_check"]["lhs"].get<double>() < 1e-12);
  CHECK(std::abs(j["kl_error_nats"].get<double>()) < 1e-12);

  const auto trivial = path("star.trivial");
  std::ofstream(trivial) << "4 4 3\n0 0\n1 1\n2 2\n3 3\n0 1 1\n0 2 1\n0 3 1\n";
  REQUIRE(run({"evaluate", "--graph", g, "--summary", trivial, "--output", metrics}) == kExitOk);
  CHECK(nlohmann::json::parse(slurp(metrics))["relative_description_length"] == 1.0);

  const auto rec = path("star.rec");
  REQUIRE(run({"reconstruct", "--graph", g, "--summary", s, "--output", rec}) == kExitOk);
  CHECK_FALSE(slurp(rec).empty());
}

TEST_CASE("bench writes one row per fraction") {
  const auto g = path("bench.tsv");
  REQUIRE(run({"generate", "--model", "plaw", "--n", "2000", "--alpha", "3.0", "--output", g}) ==
          kExitOk);
  const auto csv = path("bench.csv");
  REQUIRE(run({"bench", "--input", g, "--node-fractions", "0.25,0.5,1.0", "--iters", "5",
               "--output", csv}) == kExitOk);
  std::istringstream rows(slurp(csv));
  std::string line;
  std::getline(rows, line);
  CHECK(line == "fraction,nodes,edges,wall_ms,supernodes,relative_length");
  int count = 0;
  while (std::getline(rows, line)) count += line.empty() ? 0 : 1;
  CHECK(count == 3);
}

TEST_CASE("failures map to exit codes") {
  CHECK(run({"summarize", "--input", path("missing.tsv")}) == kExitUsage);
  CHECK(run({"frobnicate"}) == kExitUsage);
  CHECK(run({"generate", "--model", "er", "--n", "10", "--p", "2", "--output", path("x")}) ==
        kExitUsage);
  const auto bad = path("bad.tsv");
  std::ofstream(bad) << "0 1\nx y\n";
  CHECK(run({"summarize", "--input", bad}) == kExitUsage);
  CHECK(run({"rerun", "--manifest", path("nope.json")}) == kExitUsage);
}
