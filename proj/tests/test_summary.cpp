#include <doctest.h>

#include <random>
#include <sstream>

#include "dpgs/summary.hpp"
#include "oracles.hpp"

using namespace dpgs;

namespace {

Graph triangle() { return Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}}); }
Graph star3() { return Graph::from_edges(4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}); }

SummaryGraph partition(const Graph& g, std::vector<std::uint64_t> labels) {
  return build_summary(g, NodeAssignment::from_labels(labels));
}

}  // namespace

TEST_CASE("triangle in one supernode") {
  Graph g = triangle();
  SummaryGraph s = partition(g, {0, 0, 0});
  CHECK(s.num_supernodes() == 1);
  CHECK(s.weight(0, 0) == 6);
  CHECK(s.super_degree(0) == 6);
  CHECK(s.num_superedges() == 1);
}

TEST_CASE("singleton partition mirrors the graph") {
  Graph g = triangle();
  SummaryGraph s = singleton_summary(g);
  CHECK(s.num_superedges() == 3);
  for (SuperId k = 0; k < 3; ++k) CHECK(s.super_degree(k) == 2);
  CHECK(s.weight(0, 1) == 1);
  CHECK(s.weight(0, 0) == 0);
}

TEST_CASE("star with center and leaves") {
  Graph g = star3();
  SummaryGraph s = partition(g, {0, 1, 1, 1});
  CHECK(s.weight(0, 1) == 3);
  CHECK(s.weight(1, 0) == 3);
  CHECK(s.weight(1, 1) == 0);
  CHECK(s.super_degree(0) == 3);
  CHECK(s.super_degree(1) == 3);
  CHECK(s.num_superedges() == 1);
  CHECK(s.superedges() == std::vector<Superedge>{{0, 1, 3}});
}

TEST_CASE("assignment size mismatch is rejected") {
  CHECK_THROWS_AS(build_summary(triangle(), NodeAssignment::singletons(4)), std::invalid_argument);
}

TEST_CASE("configuration reconstruction examples") {
  Graph tri = triangle();
  auto d = tri.degrees();
  SummaryGraph one = partition(tri, {0, 0, 0});
  for (NodeId i = 0; i < 3; ++i) {
    for (NodeId j = 0; j < 3; ++j) CHECK(reconstruct_cr(one, d, i, j) == doctest::Approx(2.0 / 3.0));
  }
  SummaryGraph single = singleton_summary(tri);
  CHECK(reconstruct_cr(single, d, 0, 1) == 1.0);
  CHECK(reconstruct_cr(single, d, 0, 0) == 0.0);

  Graph star = star3();
  SummaryGraph cl = partition(star, {0, 1, 1, 1});
  CHECK(reconstruct_cr(cl, star.degrees(), 0, 2) == doctest::Approx(1.0));
  CHECK(reconstruct_cr(cl, star.degrees(), 2, 3) == 0.0);
}

TEST_CASE("uniform reconstruction examples") {
  Graph tri = triangle();
  SummaryGraph one = partition(tri, {0, 0, 0});
  CHECK(reconstruct_uniform(one, 0, 1) == doctest::Approx(1.0));
  CHECK(reconstruct_uniform(singleton_summary(tri), 1, 2) == 1.0);

  // Supernodes of sizes 2 and 5 joined by three edges.
  Graph g = Graph::from_edges(7, std::vector<Edge>{{0, 2}, {0, 3}, {1, 4}});
  SummaryGraph s = partition(g, {0, 0, 1, 1, 1, 1, 1});
  CHECK(s.weight(0, 1) == 3);
  CHECK(reconstruct_uniform(s, 1, 6) == doctest::Approx(3.0 / 10.0));
}

TEST_CASE("dense reconstructions match the oracle and preserve degrees") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Graph g = oracle::random_graph(seed, 5, 60);
    auto labels = oracle::random_labels(g.num_nodes(), 1 + rng() % 12, rng);
    SummaryGraph s = partition(g, labels);
    CHECK_NOTHROW(s.check_invariants());
    auto a = oracle::adjacency(g);
    std::vector<std::uint32_t> lab(labels.begin(), labels.end());
    auto cr = oracle::degree_reconstruction(a, lab);
    auto un = oracle::uniform_reconstruction(a, lab);
    DenseMatrix rc = full_reconstruction(s, g, Scheme::kConfiguration);
    DenseMatrix ru = full_reconstruction(s, g, Scheme::kUniform);
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
      double row = 0.0;
      for (NodeId j = 0; j < g.num_nodes(); ++j) {
        CHECK(rc(i, j) == doctest::Approx(cr[i][j]).epsilon(1e-12));
        CHECK(ru(i, j) == doctest::Approx(un[i][j]).epsilon(1e-12));
        row += rc(i, j);
      }
      CHECK(std::abs(row - g.degree(i)) <= 1e-9);
    }
  }
}

TEST_CASE("full reconstruction respects its size cap") {
  Graph g = gen_er(50, 0.1, 1);
  CHECK_THROWS_AS(full_reconstruction(singleton_summary(g), g, Scheme::kUniform, 49),
                  std::length_error);
}

TEST_CASE("compaction keeps the partition") {
  Graph g = gen_power_law(80, 2.5, 1, 2);
  SummaryGraph s = partition(g, std::vector<std::uint64_t>(80, 0));
  s = partition(g, [&] {
    std::vector<std::uint64_t> labels(80);
    for (NodeId i = 0; i < 80; ++i) labels[i] = 1000 + (i % 7) * 13;
    return labels;
  }());
  SummaryGraph c = s.compacted();
  CHECK(c.num_supernodes() == 7);
  CHECK(c.id_capacity() == 7);
  CHECK(c.num_superedges() == s.num_superedges());
  CHECK(oracle::labels_of(c) == oracle::labels_of(s));
}

TEST_CASE("summary files round trip") {
  Graph g = gen_power_law(120, 2.8, 1, 8);
  std::mt19937_64 rng(3);
  SummaryGraph s = partition(g, oracle::random_labels(g.num_nodes(), 20, rng));
  std::stringstream buf;
  write_summary(buf, s);
  SummaryGraph back = read_summary(buf, g);
  CHECK(back.superedges() == s.compacted().superedges());
  CHECK(oracle::labels_of(back) == oracle::labels_of(s));

  std::vector<std::string> names;
  for (NodeId i = 0; i < g.num_nodes(); ++i) names.push_back("n" + std::to_string(i));
  std::stringstream named;
  write_summary(named, s, names);
  CHECK(read_summary(named, g, names).superedges() == s.compacted().superedges());
}

TEST_CASE("summary files that disagree with the graph are rejected") {
  Graph g = triangle();
  std::istringstream wrong_n("4 1 1\n0 0\n1 0\n2 0\n3 0\n0 0 6\n");
  CHECK_THROWS_AS(read_summary(wrong_n, g), ParseError);
  std::istringstream wrong_w("3 1 1\n0 0\n1 0\n2 0\n0 0 4\n");
  CHECK_THROWS_AS(read_summary(wrong_w, g), ParseError);
  std::istringstream wrong_ms("3 1 2\n0 0\n1 0\n2 0\n0 0 6\n");
  CHECK_THROWS_AS(read_summary(wrong_ms, g), ParseError);
  std::istringstream truncated("3 1 1\n0 0\n1 0\n");
  CHECK_THROWS_AS(read_summary(truncated, g), ParseError);
  std::istringstream ok("3 1 1\n0 0\n1 0\n2 0\n0 0 6\n");
  CHECK(read_summary(ok, g).weight(0, 0) == 6);
}
