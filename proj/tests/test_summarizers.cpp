#include <doctest.h>

#include <cmath>
#include <random>

#include "dpgs/summarizers.hpp"
#include "oracles.hpp"

using namespace dpgs;

namespace {

// Disjoint stars: every star's leaves are twins.
Graph star_forest(NodeId stars, NodeId leaves) {
  std::vector<Edge> edges;
  for (NodeId c = 0; c < stars; ++c) {
    const NodeId center = c * (leaves + 1);
    for (NodeId l = 1; l <= leaves; ++l) edges.emplace_back(center, center + l);
  }
  return Graph::from_edges(stars * (leaves + 1), edges);
}

void check_monotone(const std::vector<double>& trace) {
  for (std::size_t q = 1; q < trace.size(); ++q) CHECK(trace[q] <= trace[q - 1] + 1e-9);
}

}  // namespace

TEST_CASE("a pair of perfect twins merges once") {
  // K_{2,5}: nodes 0 and 1 share all five neighbors.
  std::vector<Edge> edges;
  for (NodeId v = 2; v < 7; ++v) {
    edges.emplace_back(0, v);
    edges.emplace_back(1, v);
  }
  Graph g = Graph::from_edges(7, edges);
  SummaryGraph s = singleton_summary(g);
  CHECK(gain(s, 0, 1).gain_bits > 0);
  Rng rng(1);
  CHECK(merge_group(s, {0, 1}, rng) == 1);
  CHECK(s.num_supernodes() == 6);
  CHECK(s.num_superedges() == 5);
}

TEST_CASE("no merge when nothing clears the threshold") {
  Graph g = oracle::random_graph(4, 40, 40);
  SummaryGraph s = singleton_summary(g);
  MergeGroupOptions opts;
  opts.min_gain_bits = 1e12;
  Rng rng(2);
  SupernodeGroup group;
  for (SuperId k = 0; k < 16; ++k) group.push_back(k);
  CHECK(merge_group(s, group, rng, opts) == 0);
  CHECK(s.num_supernodes() == g.num_nodes());
  CHECK(merge_group(s, {3}, rng) == 0);
}

TEST_CASE("merge_group respects the supernode floor") {
  Graph g = star_forest(1, 30);
  SummaryGraph s = singleton_summary(g);
  MergeGroupOptions opts;
  opts.stop_at_supernodes = 25;
  SupernodeGroup leaves;
  for (SuperId k = 1; k <= 30; ++k) leaves.push_back(k);
  Rng rng(3);
  merge_group(s, leaves, rng, opts);
  CHECK(s.num_supernodes() == 25);
}

TEST_CASE("twin-rich forest: total bits fall merge by merge") {
  Graph g = star_forest(40, 6);
  DpgsConfig cfg;
  cfg.seed = 5;
  std::vector<double> recomputed;
  auto result = dpgs_summarize(g, cfg, [&](const SummaryGraph& s, const GainBreakdown& step) {
    CHECK(step.gain_bits > 0);
    recomputed.push_back(total_length(g, s).total_bits);
  });
  REQUIRE(result.merges > 0);
  REQUIRE(recomputed.size() + 1 == result.total_bits_trace.size());
  for (std::size_t q = 0; q < recomputed.size(); ++q) {
    CHECK(result.total_bits_trace[q + 1] == doctest::Approx(recomputed[q]).epsilon(1e-9));
    CHECK(result.total_bits_trace[q + 1] < result.total_bits_trace[q]);
  }
  for (std::size_t t = 1; t < result.log.size(); ++t) {
    CHECK(result.log[t].length.total_bits <= result.log[t - 1].length.total_bits + 1e-9);
  }
  CHECK(relative_length(g, result.summary) < 1.0);
  CHECK_NOTHROW(result.summary.check_invariants());
}

TEST_CASE("runs are monotone and reproducible on random graphs") {
  for (std::uint64_t seed = 1; seed < 12; ++seed) {
    Graph g = oracle::random_graph(seed, 100, 400);
    DpgsConfig cfg;
    cfg.iterations = 10;
    cfg.seed = seed;
    auto a = dpgs_summarize(g, cfg);
    auto b = dpgs_summarize(g, cfg);
    check_monotone(a.total_bits_trace);
    CHECK(a.relaxed_merges == 0);
    CHECK(a.summary.superedges() == b.summary.superedges());
    CHECK(oracle::labels_of(a.summary) == oracle::labels_of(b.summary));
    CHECK(relative_length(g, a.summary) <= 1.0);
    CHECK(a.total_bits_trace.back() ==
          doctest::Approx(total_length(g, a.summary).total_bits).epsilon(1e-9));
  }
}

TEST_CASE("target ratio") {
  Graph g = gen_power_law(1500, 3.0, 2, 11);
  DpgsConfig cfg;
  cfg.seed = 11;
  cfg.target_node_ratio = 1.0;
  auto none = dpgs_summarize(g, cfg);
  CHECK(none.summary.num_supernodes() == g.num_nodes());
  CHECK(relative_length(g, none.summary) == 1.0);

  cfg.target_node_ratio = 0.5;
  auto half = dpgs_summarize(g, cfg);
  CHECK(half.summary.num_supernodes() <= 750);
  CHECK(relative_length(g, half.summary) < 1.0);

  cfg.target_node_ratio = 1.5;
  CHECK_THROWS_AS(dpgs_summarize(g, cfg), std::invalid_argument);
}

TEST_CASE("k-Gs on a path stops after one merge") {
  std::vector<Edge> edges;
  for (NodeId i = 0; i + 1 < 12; ++i) edges.emplace_back(i, i + 1);
  Graph path = Graph::from_edges(12, edges);
  for (auto objective : {KgsObjective::kUniformL1, KgsObjective::kConfigurationKL}) {
    KgsConfig cfg;
    cfg.target_supernodes = 11;
    cfg.objective = objective;
    int merges = 0;
    SummaryGraph s = kgs_summarize(path, cfg, [&](const SummaryGraph&, const GainBreakdown&) { ++merges; });
    CHECK(merges == 1);
    CHECK(s.num_supernodes() == 11);
  }
  KgsConfig bad;
  bad.target_supernodes = 12;
  CHECK_THROWS_AS(kgs_summarize(path, bad), std::invalid_argument);
  bad.target_supernodes = 0;
  CHECK_THROWS_AS(kgs_summarize(path, bad), std::invalid_argument);
}

TEST_CASE("k-Gs with the CR objective recovers a star exactly") {
  std::vector<Edge> edges;
  for (NodeId leaf = 1; leaf <= 12; ++leaf) edges.emplace_back(0, leaf);
  Graph star = Graph::from_edges(13, edges);
  KgsConfig cfg;
  cfg.target_supernodes = 2;
  cfg.samples_per_step = 200;
  cfg.seed = 3;
  SummaryGraph s = kgs_summarize(star, cfg);
  CHECK(s.num_supernodes() == 2);
  CHECK(std::abs(error_length(star, s)) < 1e-9);
}

TEST_CASE("k-Gs reaches k exactly, isolated nodes included") {
  Graph g = gen_er(300, 0.01, 7);
  for (std::size_t k : {1, 50, 150}) {
    KgsConfig cfg;
    cfg.target_supernodes = k;
    cfg.objective = KgsObjective::kUniformL1;
    SummaryGraph s = kgs_summarize(g, cfg);
    CHECK(s.num_supernodes() == k);
    CHECK_NOTHROW(s.check_invariants());
  }
}

TEST_CASE("uniform L1 deltas match the dense oracle") {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = oracle::random_graph(seed, 10, 60);
    SummaryGraph s = singleton_summary(g);
    auto a = oracle::adjacency(g);
    for (int step = 0; step < 15 && s.num_supernodes() > 2; ++step) {
      auto live = s.assignment().live_supernodes();
      std::uniform_int_distribution<std::size_t> pick(0, live.size() - 1);
      SuperId i = live[pick(rng)], j = i;
      while (j == i) j = live[pick(rng)];
      auto before = oracle::labels_of(s);
      const double l1_before = oracle::l1(a, oracle::uniform_reconstruction(a, before));
      CHECK(uniform_l1_error_aggregated(s) == doctest::Approx(l1_before).epsilon(1e-9));
      const double delta = uniform_l1_delta(s, i, j);
      apply_merge(s, i, j);
      const double l1_after = oracle::l1(a, oracle::uniform_reconstruction(a, oracle::labels_of(s)));
      CHECK(delta == doctest::Approx(l1_after - l1_before).epsilon(1e-9));
    }
  }
}
