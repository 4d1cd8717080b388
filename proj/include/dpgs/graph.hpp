#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dpgs/random.hpp"
#include "dpgs/types.hpp"

namespace dpgs {

using Edge = std::pair<NodeId, NodeId>;

struct EdgeCleanupStats {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_collapsed = 0;
};

// Immutable simple undirected graph in compressed sparse row form. Every
// neighbor list is sorted; each undirected edge is stored in both rows.
class Graph {
 public:
  Graph() = default;

  // Builds a simple graph on nodes 0..n-1. Direction is ignored, self-loops
  // are dropped and parallel edges collapsed; `stats` (optional) counts both.
  static Graph from_edges(NodeId n, std::span<const Edge> edges,
                          EdgeCleanupStats* stats = nullptr);

  NodeId num_nodes() const { return static_cast<NodeId>(degrees_.size()); }
  std::size_t num_edges() const { return targets_.size() / 2; }

  // Throws std::out_of_range for ids outside 0..n-1.
  std::uint32_t degree(NodeId i) const;
  std::span<const std::uint32_t> degrees() const { return degrees_; }

  std::span<const NodeId> neighbors(NodeId i) const {
    return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
  }

  bool has_edge(NodeId i, NodeId j) const;

  // Undirected edges with first < second, in row order.
  std::vector<Edge> edges() const;

  // Throws std::logic_error when symmetry, simplicity or the degree sum fails.
  void check_invariants() const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<std::uint32_t> degrees_;
};

inline std::uint32_t degree(const Graph& g, NodeId i) { return g.degree(i); }

enum class IdDialect {
  kInteger,  // tokens must be non-negative integers; dense ids follow numeric order
  kString,   // any token; dense ids follow first appearance
};

// A graph plus the original identifier of every dense node id.
struct LoadedGraph {
  Graph graph;
  std::vector<std::string> original_ids;
  EdgeCleanupStats cleanup;
};

// Parses a whitespace/TSV edge list. Lines starting with '#' or '%' are
// comments. Gzip input is detected from its magic bytes and inflated.
LoadedGraph load_edge_list(std::istream& in, IdDialect dialect = IdDialect::kInteger);
LoadedGraph load_edge_list_file(const std::string& path,
                                IdDialect dialect = IdDialect::kInteger);

// Writes one `u<TAB>v` line per undirected edge using the supplied ids
// (dense ids when `original_ids` is empty).
void write_edge_list(std::ostream& out, const Graph& g,
                     std::span<const std::string> original_ids = {});

// Node-induced subgraph on a uniformly random subset of round(fraction * n)
// nodes. `kept` receives the original id of every node in the subgraph.
Graph sample_induced_subgraph(const Graph& g, double fraction, Rng& rng,
                              std::vector<NodeId>* kept = nullptr);

}  // namespace dpgs
