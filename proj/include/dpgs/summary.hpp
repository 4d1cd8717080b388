#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "dpgs/graph.hpp"
#include "dpgs/random.hpp"
#include "dpgs/types.hpp"

namespace dpgs {

// Fixed (unsalted) hash so that row iteration order, and therefore every
// floating-point summation over a row, is identical from run to run.
struct SuperIdHash {
  std::size_t operator()(SuperId k) const { return static_cast<std::size_t>(splitmix64(k)); }
};

// Superedge row of one supernode: neighbor supernode -> A_S weight. The entry
// keyed by the supernode itself is the diagonal, stored as 2 x internal edges.
using SuperRow = absl::flat_hash_map<SuperId, Weight, SuperIdHash>;

class SummaryGraph;

// Partition of nodes into supernodes. Supernode ids are slots; merged-away
// slots stay allocated but dead until the summary is compacted.
class NodeAssignment {
 public:
  NodeAssignment() = default;

  static NodeAssignment singletons(NodeId n);

  // `labels[i]` is an arbitrary supernode label for node i. Distinct labels
  // are renumbered densely in ascending label order.
  static NodeAssignment from_labels(std::span<const std::uint64_t> labels);

  NodeId num_nodes() const { return static_cast<NodeId>(pi_.size()); }
  std::size_t num_supernodes() const { return live_; }
  std::size_t id_capacity() const { return members_.size(); }

  SuperId supernode_of(NodeId i) const { return pi_[i]; }
  SuperId operator[](NodeId i) const { return pi_[i]; }
  std::span<const SuperId> labels() const { return pi_; }

  bool is_live(SuperId k) const { return k < members_.size() && !members_[k].empty(); }
  std::span<const NodeId> members(SuperId k) const { return members_[k]; }
  std::size_t size_of(SuperId k) const { return members_[k].size(); }

  // Live ids in ascending order.
  std::vector<SuperId> live_supernodes() const;

 private:
  friend class SummaryGraph;
  friend SuperId apply_merge(SummaryGraph& s, SuperId i, SuperId j);

  std::vector<SuperId> pi_;
  std::vector<std::vector<NodeId>> members_;
  std::size_t live_ = 0;
};

struct Superedge {
  SuperId first;
  SuperId second;  // first <= second
  Weight weight;   // doubled internal edge count when first == second

  friend bool operator==(const Superedge&, const Superedge&) = default;
};

// Supernodes, superedges and supernode degree sums.
//
// Invariants: D_k = sum_l A_S(k, l) with the diagonal added once;
// sum_k D_k = 2m; stored weights are strictly positive.
class SummaryGraph {
 public:
  SummaryGraph() = default;

  const NodeAssignment& assignment() const { return assignment_; }
  NodeId num_nodes() const { return assignment_.num_nodes(); }
  std::size_t num_supernodes() const { return assignment_.num_supernodes(); }
  std::size_t num_superedges() const { return num_superedges_; }
  std::size_t id_capacity() const { return rows_.size(); }
  bool is_live(SuperId k) const { return assignment_.is_live(k); }

  Weight weight(SuperId k, SuperId l) const;
  Weight super_degree(SuperId k) const { return super_degrees_[k]; }
  const SuperRow& row(SuperId k) const { return rows_[k]; }

  // Superedges with first <= second, sorted.
  std::vector<Superedge> superedges() const;

  // Copy with dead slots removed; live ids renumbered in ascending order.
  SummaryGraph compacted() const;

  // Throws std::logic_error if the stored aggregates disagree with each other.
  void check_invariants() const;

 private:
  friend SummaryGraph build_summary(const Graph& g, NodeAssignment assignment);
  friend SuperId apply_merge(SummaryGraph& s, SuperId i, SuperId j);

  NodeAssignment assignment_;
  std::vector<SuperRow> rows_;
  std::vector<Weight> super_degrees_;
  std::size_t num_superedges_ = 0;
};

// Aggregates every edge of `g` into superedges under `assignment`.
// Throws std::invalid_argument if the assignment covers a different node count.
SummaryGraph build_summary(const Graph& g, NodeAssignment assignment);

inline SummaryGraph singleton_summary(const Graph& g) {
  return build_summary(g, NodeAssignment::singletons(g.num_nodes()));
}

// CR scheme: (d_i / D_k) * A_S(k, l) * (d_j / D_l). Zero for isolated nodes.
double reconstruct_cr(const SummaryGraph& s, std::span<const std::uint32_t> degrees, NodeId i,
                      NodeId j);

// Uniform scheme: A_S(k, l) / (|S_k| |S_l|) across supernodes and
// A_S(k, k) / (|S_k| (|S_k| - 1)) inside one (zero for singletons). The
// within-supernode value applies to i == j as well.
double reconstruct_uniform(const SummaryGraph& s, NodeId i, NodeId j);

enum class Scheme { kConfiguration, kUniform };

// Row-major dense n x n matrix.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values[i * n + j]; }
};

inline constexpr std::size_t kDefaultReconstructionCap = 5000;

// Materializes A'. Throws std::length_error above `cap` nodes; use the
// pairwise reconstruct_* functions for larger graphs.
DenseMatrix full_reconstruction(const SummaryGraph& s, const Graph& g, Scheme scheme,
                                std::size_t cap = kDefaultReconstructionCap);

// Summary file: header `n n_s m_s`, n lines `node supernode`, then m_s lines
// `k l weight` with k <= l. Supernodes are written compacted.
void write_summary(std::ostream& out, const SummaryGraph& s,
                   std::span<const std::string> original_ids = {});

// Reads a summary file against the graph it summarizes and rebuilds it from
// the node map. Throws ParseError on malformed input, on a node count that
// differs from the graph, or on superedges that disagree with the graph.
SummaryGraph read_summary(std::istream& in, const Graph& g,
                          std::span<const std::string> original_ids = {});

}  // namespace dpgs
