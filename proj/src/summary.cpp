#include "dpgs/summary.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dpgs {

NodeAssignment NodeAssignment::singletons(NodeId n) {
  NodeAssignment a;
  a.pi_.resize(n);
  std::iota(a.pi_.begin(), a.pi_.end(), SuperId{0});
  a.members_.resize(n);
  for (NodeId i = 0; i < n; ++i) a.members_[i].push_back(i);
  a.live_ = n;
  return a;
}

NodeAssignment NodeAssignment::from_labels(std::span<const std::uint64_t> labels) {
  std::vector<std::uint64_t> distinct(labels.begin(), labels.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  NodeAssignment a;
  a.pi_.resize(labels.size());
  a.members_.resize(distinct.size());
  for (NodeId i = 0; i < labels.size(); ++i) {
    auto k = static_cast<SuperId>(std::lower_bound(distinct.begin(), distinct.end(), labels[i]) -
                                  distinct.begin());
    a.pi_[i] = k;
    a.members_[k].push_back(i);
  }
  a.live_ = distinct.size();
  return a;
}

std::vector<SuperId> NodeAssignment::live_supernodes() const {
  std::vector<SuperId> out;
  out.reserve(live_);
  for (SuperId k = 0; k < members_.size(); ++k) {
    if (!members_[k].empty()) out.push_back(k);
  }
  return out;
}

SummaryGraph build_summary(const Graph& g, NodeAssignment assignment) {
  if (assignment.num_nodes() != g.num_nodes()) {
    throw std::invalid_argument("assignment covers " + std::to_string(assignment.num_nodes()) +
                                " nodes but the graph has " + std::to_string(g.num_nodes()));
  }
  SummaryGraph s;
  const std::size_t slots = assignment.id_capacity();
  s.rows_.resize(slots);
  s.super_degrees_.assign(slots, 0);
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    const SuperId k = assignment[i];
    s.super_degrees_[k] += g.degree(i);
    // Ordered traversal: an internal edge lands twice on the diagonal and a
    // cross edge once in each direction.
    for (NodeId j : g.neighbors(i)) ++s.rows_[k][assignment[j]];
  }
  std::size_t entries = 0;
  std::size_t diagonal = 0;
  for (SuperId k = 0; k < slots; ++k) {
    entries += s.rows_[k].size();
    if (s.rows_[k].contains(k)) ++diagonal;
  }
  s.num_superedges_ = (entries - diagonal) / 2 + diagonal;
  s.assignment_ = std::move(assignment);
  return s;
}

Weight SummaryGraph::weight(SuperId k, SuperId l) const {
  const auto& r = rows_[k];
  auto it = r.find(l);
  return it == r.end() ? 0 : it->second;
}

std::vector<Superedge> SummaryGraph::superedges() const {
  std::vector<Superedge> out;
  out.reserve(num_superedges_);
  for (SuperId k = 0; k < rows_.size(); ++k) {
    for (const auto& [l, w] : rows_[k]) {
      if (k <= l) out.push_back({k, l, w});
    }
  }
  std::sort(out.begin(), out.end(), [](const Superedge& a, const Superedge& b) {
    return a.first != b.first ? a.first < b.first : a.second < b.second;
  });
  return out;
}

SummaryGraph SummaryGraph::compacted() const {
  constexpr SuperId kDead = ~SuperId{0};
  std::vector<SuperId> remap(rows_.size(), kDead);
  SuperId next = 0;
  for (SuperId k = 0; k < rows_.size(); ++k) {
    if (is_live(k)) remap[k] = next++;
  }

  SummaryGraph out;
  out.rows_.resize(next);
  out.super_degrees_.resize(next);
  out.num_superedges_ = num_superedges_;
  out.assignment_.pi_.resize(assignment_.pi_.size());
  out.assignment_.members_.resize(next);
  out.assignment_.live_ = next;
  for (NodeId i = 0; i < assignment_.pi_.size(); ++i) {
    out.assignment_.pi_[i] = remap[assignment_.pi_[i]];
  }
  for (SuperId k = 0; k < rows_.size(); ++k) {
    if (remap[k] == kDead) continue;
    const SuperId nk = remap[k];
    auto& members = out.assignment_.members_[nk];
    members.assign(assignment_.members_[k].begin(), assignment_.members_[k].end());
    std::sort(members.begin(), members.end());
    out.super_degrees_[nk] = super_degrees_[k];
    out.rows_[nk].reserve(rows_[k].size());
    for (const auto& [l, w] : rows_[k]) out.rows_[nk].emplace(remap[l], w);
  }
  return out;
}

void SummaryGraph::check_invariants() const {
  std::size_t entries = 0;
  std::size_t diagonal = 0;
  std::size_t live = 0;
  for (SuperId k = 0; k < rows_.size(); ++k) {
    if (!is_live(k)) {
      if (!rows_[k].empty() || super_degrees_[k] != 0) {
        throw std::logic_error("dead supernode still carries superedges");
      }
      continue;
    }
    ++live;
    for (NodeId i : assignment_.members(k)) {
      if (assignment_[i] != k) throw std::logic_error("members and node map disagree");
    }
    Weight row_sum = 0;
    for (const auto& [l, w] : rows_[k]) {
      if (w == 0) throw std::logic_error("zero-weight superedge stored");
      if (!is_live(l)) throw std::logic_error("superedge to dead supernode");
      if (weight(l, k) != w) throw std::logic_error("superedge weights not symmetric");
      row_sum += w;
      ++entries;
      if (l == k) ++diagonal;
    }
    if (row_sum != super_degrees_[k]) throw std::logic_error("row sum differs from D_k");
  }
  if (live != num_supernodes()) throw std::logic_error("live supernode count mismatch");
  if ((entries - diagonal) / 2 + diagonal != num_superedges_) {
    throw std::logic_error("superedge count mismatch");
  }
}

double reconstruct_cr(const SummaryGraph& s, std::span<const std::uint32_t> degrees, NodeId i,
                      NodeId j) {
  if (i >= degrees.size() || j >= degrees.size()) throw std::out_of_range("node id out of range");
  if (degrees[i] == 0 || degrees[j] == 0) return 0.0;
  const SuperId k = s.assignment()[i];
  const SuperId l = s.assignment()[j];
  const Weight w = s.weight(k, l);
  if (w == 0) return 0.0;
  return (static_cast<double>(degrees[i]) / static_cast<double>(s.super_degree(k))) *
         static_cast<double>(w) *
         (static_cast<double>(degrees[j]) / static_cast<double>(s.super_degree(l)));
}

double reconstruct_uniform(const SummaryGraph& s, NodeId i, NodeId j) {
  if (i >= s.num_nodes() || j >= s.num_nodes()) throw std::out_of_range("node id out of range");
  const SuperId k = s.assignment()[i];
  const SuperId l = s.assignment()[j];
  const Weight w = s.weight(k, l);
  if (w == 0) return 0.0;
  const auto size_k = static_cast<double>(s.assignment().size_of(k));
  if (k != l) {
    return static_cast<double>(w) / (size_k * static_cast<double>(s.assignment().size_of(l)));
  }
  if (size_k < 2) return 0.0;
  return static_cast<double>(w) / (size_k * (size_k - 1.0));
}

DenseMatrix full_reconstruction(const SummaryGraph& s, const Graph& g, Scheme scheme,
                                std::size_t cap) {
  const std::size_t n = g.num_nodes();
  if (n > cap) {
    throw std::length_error("full reconstruction of " + std::to_string(n) +
                            " nodes exceeds the cap of " + std::to_string(cap) +
                            "; query pairs with reconstruct_cr/reconstruct_uniform instead");
  }
  if (s.num_nodes() != n) throw std::invalid_argument("summary and graph node counts differ");
  DenseMatrix a{n, std::vector<double>(n * n, 0.0)};
  const auto degrees = g.degrees();
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      a(i, j) = scheme == Scheme::kConfiguration ? reconstruct_cr(s, degrees, i, j)
                                                 : reconstruct_uniform(s, i, j);
    }
  }
  return a;
}

}  // namespace dpgs
