#include <doctest.h>

#include <cmath>
#include <random>

#include "dpgs/mdl.hpp"
#include "oracles.hpp"

using namespace dpgs;

namespace {

Graph triangle() { return Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}}); }

}  // namespace

TEST_CASE("universal integer code") {
  CHECK(universal_int_length(1) == doctest::Approx(1.5185673663648482).epsilon(1e-12));
  CHECK(std::abs(universal_int_length(2) - (std::log2(2.865064) + 1.0)) <= 1e-9);
  CHECK(universal_int_length(16) == doctest::Approx(8.518567366364849).epsilon(1e-12));
  CHECK_THROWS_AS(universal_int_length(0), std::domain_error);
  double prev = universal_int_length(1);
  for (std::uint64_t x = 2; x < 200'000; x += 1 + x / 50) {
    const double cur = universal_int_length(x);
    CHECK(cur >= prev);
    CHECK(cur == doctest::Approx(oracle::log_star(static_cast<double>(x))).epsilon(1e-12));
    prev = cur;
  }
}

TEST_CASE("binomial code") {
  CHECK(binomial_length(4, 2) == 4.0);
  CHECK(binomial_length(10, 0) == 0.0);
  CHECK(binomial_length(10, 10) == 0.0);
  CHECK(binomial_length(1, 1) == 0.0);
  CHECK(binomial_length(10, 3) == doctest::Approx(8.812908992306927).epsilon(1e-12));
  for (std::uint64_t a = 1; a < 60; a += 7) {
    for (std::uint64_t b = 0; b <= a; ++b) {
      CHECK(binomial_length(a, b) == doctest::Approx(binomial_length(a, a - b)).epsilon(1e-12));
      CHECK(binomial_length(a, b) ==
            doctest::Approx(oracle::binomial_bits(static_cast<double>(a), static_cast<double>(b)))
                .epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(binomial_length(3, 4), std::domain_error);
  CHECK_THROWS_AS(binomial_length(0, 0), std::domain_error);
}

TEST_CASE("error length examples") {
  Graph tri = triangle();
  SummaryGraph one = build_summary(tri, NodeAssignment::from_labels(std::vector<std::uint64_t>{0, 0, 0}));
  CHECK(error_length(tri, one) == doctest::Approx(2.4327906486489863).epsilon(1e-12));
  CHECK(error_length_aggregated(one, tri) == doctest::Approx(6.0 * std::log(1.5)).epsilon(1e-12));
  CHECK(error_length(tri, singleton_summary(tri)) == 0.0);
  CHECK(std::abs(error_length_aggregated(singleton_summary(tri), tri)) < 1e-12);

  Graph star = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}});
  SummaryGraph cl = build_summary(star, NodeAssignment::from_labels(std::vector<std::uint64_t>{0, 1, 1, 1}));
  CHECK(std::abs(error_length(star, cl)) < 1e-12);
}

TEST_CASE("model length examples") {
  Graph tri = triangle();
  SummaryGraph one = build_summary(tri, NodeAssignment::from_labels(std::vector<std::uint64_t>{0, 0, 0}));
  const double ln1 = universal_int_length(1), ln2 = universal_int_length(2);
  const double expected = ln1 + 3 * ln1 + 3 * ln2 + ln1 + universal_int_length(6);
  CHECK(model_length(tri, one) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(model_length(tri, one) == doctest::Approx(21.07653899373678).epsilon(1e-12));
}

TEST_CASE("closed-form error equals the per-edge sum") {
  std::mt19937_64 rng(17);
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Graph g = oracle::random_graph(seed, 10, 150);
    auto labels = oracle::random_labels(g.num_nodes(), 1 + rng() % g.num_nodes(), rng);
    SummaryGraph s = build_summary(g, NodeAssignment::from_labels(labels));
    const double direct = error_length(g, s);
    worst = std::max(worst, oracle::relative_gap(direct, error_length_aggregated(s, g)));
    std::vector<std::uint32_t> lab(labels.begin(), labels.end());
    auto a = oracle::adjacency(g);
    // Degrees are preserved, so the generalized KL equals the per-edge form.
    CHECK(oracle::relative_gap(direct,
                               oracle::generalized_kl(a, oracle::degree_reconstruction(a, lab))) < 1e-9);
    CHECK(oracle::relative_gap(model_length(g, s), oracle::model_bits(a, lab)) < 1e-9);
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("trivial summary has relative length exactly one") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = oracle::random_graph(seed, 20, 300);
    SummaryGraph s = singleton_summary(g);
    CHECK(relative_length(g, s) == 1.0);
    CHECK(total_length(g, s).total_bits == doctest::Approx(trivial_length(g).total_bits).epsilon(1e-12));
  }
  Graph empty = Graph::from_edges(4, std::vector<Edge>{});
  CHECK(relative_length(empty, singleton_summary(empty)) == 1.0);
}

TEST_CASE("total bits combine both units") {
  auto len = DescriptionLength::of(10.0, std::log(2.0) * 3.0);
  CHECK(len.total_bits == doctest::Approx(13.0));
}
