#include "dpgs/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "dpgs/random.hpp"

namespace dpgs {

Graph gen_er(NodeId n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  std::vector<Edge> edges;
  if (p == 1.0) {
    for (NodeId v = 1; v < n; ++v) {
      for (NodeId w = 0; w < v; ++w) edges.emplace_back(w, v);
    }
    return Graph::from_edges(n, edges);
  }
  if (p > 0.0) {
    // Geometric skipping over the lower triangle (Batagelj and Brandes).
    Rng rng = make_rng(seed, "gen-er");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double log_q = std::log1p(-p);
    std::int64_t v = 1;
    std::int64_t w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    edges.reserve(static_cast<std::size_t>(p * 0.5 * static_cast<double>(n) * (n - 1) * 1.1));
    while (v < nn) {
      const double r = unit(rng);
      w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
      while (w >= v && v < nn) {
        w -= v;
        ++v;
      }
      if (v < nn) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
    }
  }
  return Graph::from_edges(n, edges);
}

Graph gen_power_law(NodeId n, double alpha, std::uint32_t d_min, std::uint64_t seed) {
  if (!(alpha > 2.0)) throw std::invalid_argument("alpha must exceed 2");
  if (d_min < 1) throw std::invalid_argument("d_min must be at least 1");
  if (n < 2) return Graph::from_edges(n, {});
  const std::uint32_t d_max = std::max<std::uint32_t>(d_min, n - 1);

  std::vector<double> weights;
  weights.reserve(d_max - d_min + 1);
  for (std::uint32_t d = d_min; d <= d_max; ++d) weights.push_back(std::pow(d, -alpha));
  std::discrete_distribution<std::uint32_t> degree_dist(weights.begin(), weights.end());

  Rng rng = make_rng(seed, "gen-power-law");
  std::vector<std::uint32_t> degrees(n);
  std::uint64_t stubs = 0;
  for (NodeId i = 0; i < n; ++i) {
    degrees[i] = d_min + degree_dist(rng);
    stubs += degrees[i];
  }
  if (stubs % 2 == 1) {
    ++degrees[std::uniform_int_distribution<NodeId>(0, n - 1)(rng)];
    ++stubs;
  }

  std::vector<NodeId> stub_owner;
  stub_owner.reserve(stubs);
  for (NodeId i = 0; i < n; ++i) stub_owner.insert(stub_owner.end(), degrees[i], i);
  std::shuffle(stub_owner.begin(), stub_owner.end(), rng);

  std::vector<Edge> edges;
  edges.reserve(stubs / 2);
  for (std::size_t p = 0; p + 1 < stub_owner.size(); p += 2) {
    edges.emplace_back(stub_owner[p], stub_owner[p + 1]);
  }
  return Graph::from_edges(n, edges);
}

}  // namespace dpgs
