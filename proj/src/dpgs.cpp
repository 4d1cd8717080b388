#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "dpgs/summarizers.hpp"

namespace dpgs {
namespace {

std::size_t floor_log2(std::size_t x) {
  return x < 2 ? 0 : static_cast<std::size_t>(std::bit_width(x) - 1);
}

// Keeps the larger superedge row, since apply_merge walks the retired one.
SuperId merge_cheaper_way(SummaryGraph& s, SuperId a, SuperId b) {
  const bool keep_a = s.row(a).size() > s.row(b).size() ||
                      (s.row(a).size() == s.row(b).size() &&
                       s.assignment().size_of(a) >= s.assignment().size_of(b));
  return keep_a ? apply_merge(s, a, b) : apply_merge(s, b, a);
}

}  // namespace

std::size_t merge_group(SummaryGraph& s, SupernodeGroup group, Rng& rng,
                        const MergeGroupOptions& options) {
  group.erase(std::remove_if(group.begin(), group.end(),
                             [&s](SuperId k) { return !s.is_live(k); }),
              group.end());
  if (group.size() < 2) return 0;

  const std::size_t times = std::max<std::size_t>(1, floor_log2(group.size()));
  std::size_t skips = 0;
  std::size_t merges = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  while (skips < times && group.size() >= 2) {
    if (options.stop_at_supernodes > 0 && s.num_supernodes() <= options.stop_at_supernodes) break;
    const std::size_t size = group.size();
    const std::size_t available = size * (size - 1) / 2;
    const std::size_t wanted = std::min(available, std::max<std::size_t>(1, floor_log2(size)));

    pairs.clear();
    std::uniform_int_distribution<std::size_t> pick(0, size - 1);
    while (pairs.size() < wanted) {
      std::size_t a = pick(rng);
      std::size_t b = pick(rng);
      if (a == b) continue;
      if (group[a] > group[b]) std::swap(a, b);
      auto p = std::make_pair(a, b);
      if (std::find(pairs.begin(), pairs.end(), p) == pairs.end()) pairs.push_back(p);
    }

    GainBreakdown best;
    std::size_t best_index = pairs.size();
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      const SuperId u = group[pairs[q].first];
      const SuperId v = group[pairs[q].second];
      GainBreakdown candidate = gain(s, u, v);
      const bool better =
          best_index == pairs.size() || candidate.gain_bits > best.gain_bits ||
          (candidate.gain_bits == best.gain_bits &&
           std::make_pair(u, v) < std::make_pair(best.first, best.second));
      if (better) {
        best = candidate;
        best_index = q;
      }
    }

    if (best.gain_bits > options.min_gain_bits) {
      const SuperId kept = merge_cheaper_way(s, best.first, best.second);
      const SuperId retired = kept == best.first ? best.second : best.first;
      const std::size_t slot = group[pairs[best_index].first] == retired
                                   ? pairs[best_index].first
                                   : pairs[best_index].second;
      group[slot] = group.back();
      group.pop_back();
      ++merges;
      skips = 0;
      if (options.observer != nullptr && *options.observer) (*options.observer)(s, best);
    } else {
      ++skips;
    }
  }
  return merges;
}

void DpgsConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("iteration count must be at least 1");
  if (max_relaxed_iterations < 0) throw std::invalid_argument("relaxed iterations must be >= 0");
  lsh.validate();
  if (target_node_ratio && !(*target_node_ratio > 0.0 && *target_node_ratio <= 1.0)) {
    throw std::invalid_argument("target node ratio must lie in (0, 1]");
  }
}

DpgsResult dpgs_summarize(const Graph& g, const DpgsConfig& cfg, const MergeObserver& observer) {
  cfg.validate();
  using Clock = std::chrono::steady_clock;

  DpgsResult result;
  result.summary = singleton_summary(g);
  SummaryGraph& s = result.summary;
  const std::size_t target =
      cfg.target_node_ratio
          ? static_cast<std::size_t>(std::floor(*cfg.target_node_ratio * g.num_nodes()))
          : 0;
  auto reached = [&] { return cfg.target_node_ratio && s.num_supernodes() <= target; };

  double current_bits = total_length(g, s).total_bits;
  result.total_bits_trace.push_back(current_bits);
  const MergeObserver track = [&](const SummaryGraph& after, const GainBreakdown& step) {
    current_bits -= step.gain_bits;
    result.total_bits_trace.push_back(current_bits);
    if (observer) observer(after, step);
  };
  MergeGroupOptions options;
  options.observer = &track;
  options.stop_at_supernodes = cfg.target_node_ratio ? std::max<std::size_t>(target, 1) : 0;

  auto run_iteration = [&](int t, int bands, std::uint64_t stream) {
    const auto start = Clock::now();
    Rng rng = make_rng(cfg.seed, "dpgs-iteration", stream);
    std::size_t merges = 0;
    for (SupernodeGroup& group : group_supernodes(s, bands, cfg.lsh, rng)) {
      if (reached()) break;
      merges += merge_group(s, std::move(group), rng, options);
    }
    result.merges += merges;

    IterationLog entry;
    entry.iteration = t;
    entry.bands = bands;
    entry.supernodes = s.num_supernodes();
    entry.superedges = s.num_superedges();
    entry.length = total_length(g, s);
    entry.merges = merges;
    entry.min_gain_bits = options.min_gain_bits;
    entry.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    result.log.push_back(entry);
    return merges;
  };

  for (int t = 1; t <= cfg.iterations && !reached(); ++t) {
    run_iteration(t, band_count(t, cfg.iterations, cfg.lsh), static_cast<std::uint64_t>(t));
  }
  for (int e = 1; e <= cfg.max_relaxed_iterations && cfg.target_node_ratio && !reached(); ++e) {
    options.min_gain_bits = -std::ldexp(1.0, e - 1);
    const int t = cfg.iterations + e;
    result.relaxed_merges += run_iteration(t, cfg.lsh.bands_max, static_cast<std::uint64_t>(t));
  }
  return result;
}

}  // namespace dpgs
