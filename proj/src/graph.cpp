#include "dpgs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dpgs {

Graph Graph::from_edges(NodeId n, std::span<const Edge> edges, EdgeCleanupStats* stats) {
  EdgeCleanupStats local;
  std::vector<std::size_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::out_of_range("edge endpoint outside node range");
    if (u == v) {
      ++local.self_loops_dropped;
      continue;
    }
    ++counts[u + 1];
    ++counts[v + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());

  std::vector<NodeId> raw(counts.back());
  std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    raw[cursor[u]++] = v;
    raw[cursor[v]++] = u;
  }

  Graph g;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  g.degrees_.assign(n, 0);
  g.targets_.reserve(raw.size());
  std::size_t removed_entries = 0;
  for (NodeId i = 0; i < n; ++i) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(counts[i]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(counts[i + 1]);
    std::sort(first, last);
    auto unique_end = std::unique(first, last);
    removed_entries += static_cast<std::size_t>(last - unique_end);
    g.targets_.insert(g.targets_.end(), first, unique_end);
    g.offsets_[i + 1] = g.targets_.size();
    g.degrees_[i] = static_cast<std::uint32_t>(unique_end - first);
  }
  g.targets_.shrink_to_fit();
  // Each surplus copy of an undirected edge shows up once in each endpoint row.
  local.duplicates_collapsed = removed_entries / 2;
  if (stats != nullptr) *stats = local;
  return g;
}

std::uint32_t Graph::degree(NodeId i) const {
  if (i >= num_nodes()) {
    throw std::out_of_range("node id " + std::to_string(i) + " out of range (n=" +
                            std::to_string(num_nodes()) + ")");
  }
  return degrees_[i];
}

bool Graph::has_edge(NodeId i, NodeId j) const {
  if (i >= num_nodes() || j >= num_nodes()) return false;
  auto row = neighbors(i);
  return std::binary_search(row.begin(), row.end(), j);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId i = 0; i < num_nodes(); ++i) {
    for (NodeId j : neighbors(i)) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

void Graph::check_invariants() const {
  std::size_t degree_sum = 0;
  for (NodeId i = 0; i < num_nodes(); ++i) {
    auto row = neighbors(i);
    if (row.size() != degrees_[i]) throw std::logic_error("degree does not match row length");
    degree_sum += degrees_[i];
    for (std::size_t p = 0; p < row.size(); ++p) {
      if (row[p] == i) throw std::logic_error("self-loop present");
      if (p > 0 && row[p - 1] >= row[p]) throw std::logic_error("row not strictly sorted");
      if (!has_edge(row[p], i)) throw std::logic_error("adjacency not symmetric");
    }
  }
  if (degree_sum != 2 * num_edges()) throw std::logic_error("degree sum differs from 2m");
}

Graph sample_induced_subgraph(const Graph& g, double fraction, Rng& rng,
                              std::vector<NodeId>* kept) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("fraction must lie in (0, 1]");
  }
  const NodeId n = g.num_nodes();
  const auto target = static_cast<NodeId>(std::llround(fraction * n));
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(target);
  std::sort(order.begin(), order.end());

  constexpr NodeId kAbsent = ~NodeId{0};
  std::vector<NodeId> remap(n, kAbsent);
  for (NodeId k = 0; k < target; ++k) remap[order[k]] = k;

  std::vector<Edge> edges;
  for (NodeId u : order) {
    for (NodeId v : g.neighbors(u)) {
      if (u < v && remap[v] != kAbsent) edges.emplace_back(remap[u], remap[v]);
    }
  }
  if (kept != nullptr) *kept = std::move(order);
  return Graph::from_edges(target, edges);
}

}  // namespace dpgs
