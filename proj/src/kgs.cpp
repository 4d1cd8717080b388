#include <algorithm>
#include <limits>
#include <stdexcept>

#include "dpgs/summarizers.hpp"

namespace dpgs {
namespace {

// L1 error of one block of `entries` ordered node pairs holding `w` edge
// endpoints, each pair reconstructed to q.
double block_error(double w, double entries, double q) { return w * (1.0 - q) + (entries - w) * q; }

double cross_block(Weight w, double size_k, double size_l) {
  if (w == 0) return 0.0;
  const double entries = size_k * size_l;
  return block_error(static_cast<double>(w), entries, static_cast<double>(w) / entries);
}

// Diagonal block: all size^2 pairs, including i == j, get A_S(k,k)/(s(s-1)).
double inner_block(Weight w, double size) {
  if (w == 0 || size < 2.0) return 0.0;
  return block_error(static_cast<double>(w), size * size,
                     static_cast<double>(w) / (size * (size - 1.0)));
}

class CandidatePool {
 public:
  explicit CandidatePool(std::vector<SuperId> ids, std::size_t capacity)
      : ids_(std::move(ids)), pos_(capacity, kAbsent) {
    for (std::size_t p = 0; p < ids_.size(); ++p) pos_[ids_[p]] = p;
  }

  std::size_t size() const { return ids_.size(); }
  SuperId at(std::size_t p) const { return ids_[p]; }

  void remove(SuperId k) {
    const std::size_t p = pos_[k];
    if (p == kAbsent) return;
    ids_[p] = ids_.back();
    pos_[ids_[p]] = p;
    ids_.pop_back();
    pos_[k] = kAbsent;
  }

 private:
  static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
  std::vector<SuperId> ids_;
  std::vector<std::size_t> pos_;
};

}  // namespace

double uniform_l1_delta(const SummaryGraph& s, SuperId i, SuperId j) {
  if (i == j || !s.is_live(i) || !s.is_live(j)) {
    throw std::invalid_argument("uniform_l1_delta needs two distinct live supernodes");
  }
  const auto& a = s.assignment();
  const auto size_i = static_cast<double>(a.size_of(i));
  const auto size_j = static_cast<double>(a.size_of(j));
  const double size_k = size_i + size_j;

  double delta = 0.0;
  for (const auto& [l, w_il] : s.row(i)) {
    if (l == i || l == j) continue;
    const Weight w_jl = s.weight(j, l);
    const auto size_l = static_cast<double>(a.size_of(l));
    delta += 2.0 * (cross_block(w_il + w_jl, size_k, size_l) - cross_block(w_il, size_i, size_l) -
                    cross_block(w_jl, size_j, size_l));
  }
  for (const auto& [l, w_jl] : s.row(j)) {
    if (l == i || l == j || s.row(i).contains(l)) continue;
    const auto size_l = static_cast<double>(a.size_of(l));
    delta += 2.0 * (cross_block(w_jl, size_k, size_l) - cross_block(w_jl, size_j, size_l));
  }
  const Weight w_ii = s.weight(i, i);
  const Weight w_jj = s.weight(j, j);
  const Weight w_ij = s.weight(i, j);
  delta += inner_block(w_ii + w_jj + 2 * w_ij, size_k) - inner_block(w_ii, size_i) -
           inner_block(w_jj, size_j) - 2.0 * cross_block(w_ij, size_i, size_j);
  return delta;
}

double uniform_l1_error_aggregated(const SummaryGraph& s) {
  const auto& a = s.assignment();
  double total = 0.0;
  for (SuperId k = 0; k < s.id_capacity(); ++k) {
    if (!s.is_live(k)) continue;
    const auto size_k = static_cast<double>(a.size_of(k));
    for (const auto& [l, w] : s.row(k)) {
      total += l == k ? inner_block(w, size_k)
                      : cross_block(w, size_k, static_cast<double>(a.size_of(l)));
    }
  }
  return total;
}

SummaryGraph kgs_summarize(const Graph& g, const KgsConfig& cfg, const MergeObserver& observer) {
  const std::size_t n = g.num_nodes();
  if (cfg.target_supernodes < 1 || cfg.target_supernodes >= n) {
    throw std::invalid_argument("k must satisfy 1 <= k < n");
  }
  SummaryGraph s = singleton_summary(g);
  Rng rng = make_rng(cfg.seed, "kgs");

  // Isolated nodes stay singletons while any connected pair remains.
  std::vector<SuperId> connected;
  std::vector<SuperId> isolated;
  for (SuperId k = 0; k < n; ++k) (g.degree(k) > 0 ? connected : isolated).push_back(k);
  CandidatePool pool(connected, n);
  bool widened = false;

  while (s.num_supernodes() > cfg.target_supernodes) {
    if (pool.size() < 2 && !widened) {
      for (SuperId k = 0; k < pool.size(); ++k) isolated.push_back(pool.at(k));
      pool = CandidatePool(isolated, n);
      widened = true;
    }
    const std::size_t samples =
        cfg.samples_per_step > 0
            ? cfg.samples_per_step
            : std::min<std::size_t>(10'000, (s.num_supernodes() + 1) / 2);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);

    double best_cost = std::numeric_limits<double>::infinity();
    std::pair<SuperId, SuperId> best{0, 0};
    for (std::size_t q = 0; q < samples; ++q) {
      SuperId u = pool.at(pick(rng));
      SuperId v = pool.at(pick(rng));
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      const double cost = cfg.objective == KgsObjective::kConfigurationKL
                              ? error_delta(s, u, v)
                              : uniform_l1_delta(s, u, v);
      if (cost < best_cost || (cost == best_cost && std::make_pair(u, v) < best)) {
        best_cost = cost;
        best = {u, v};
      }
    }
    if (best_cost == std::numeric_limits<double>::infinity()) continue;

    const GainBreakdown step = observer ? gain(s, best.first, best.second) : GainBreakdown{};
    const bool keep_first = s.row(best.first).size() >= s.row(best.second).size();
    const SuperId kept = keep_first ? apply_merge(s, best.first, best.second)
                                    : apply_merge(s, best.second, best.first);
    pool.remove(kept == best.first ? best.second : best.first);
    if (observer) observer(s, step);
  }
  return s;
}

}  // namespace dpgs
