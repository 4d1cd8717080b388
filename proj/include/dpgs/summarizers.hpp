#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dpgs/graph.hpp"
#include "dpgs/lsh.hpp"
#include "dpgs/mdl.hpp"
#include "dpgs/merge.hpp"
#include "dpgs/random.hpp"
#include "dpgs/summary.hpp"

namespace dpgs {

// Called after every applied merge with the updated summary.
using MergeObserver = std::function<void(const SummaryGraph&, const GainBreakdown&)>;

struct MergeGroupOptions {
  // A sampled best pair is merged when its gain exceeds this many bits.
  double min_gain_bits = 0.0;
  // Stop as soon as the summary has at most this many supernodes (0: never).
  std::size_t stop_at_supernodes = 0;
  const MergeObserver* observer = nullptr;
};

// Sampled greedy merging inside one group: each round samples
// floor(log2 |g|) distinct pairs of live members and merges the best one if
// its gain clears the threshold; the group is abandoned after floor(log2 |g|)
// consecutive rounds without a merge or once fewer than two members remain.
// Ties on gain go to the lexicographically smallest pair. Returns the merge
// count.
std::size_t merge_group(SummaryGraph& s, SupernodeGroup group, Rng& rng,
                        const MergeGroupOptions& options = {});

struct DpgsConfig {
  int iterations = 30;
  LshConfig lsh;
  // Stop once n_s <= ratio * n (checked after every merge).
  std::optional<double> target_node_ratio;
  // When a target ratio is set but the T gain-positive iterations stop short
  // of it, up to this many extra iterations run with a relaxed acceptance
  // threshold of -2^(e-1) bits in extra iteration e, so the least harmful
  // merges are taken first.
  int max_relaxed_iterations = 64;
  std::uint64_t seed = 0;

  void validate() const;
};

struct IterationLog {
  int iteration = 0;
  int bands = 0;
  std::size_t supernodes = 0;
  std::size_t superedges = 0;
  DescriptionLength length;
  std::size_t merges = 0;
  // Acceptance threshold in bits: 0 for regular iterations, negative for the
  // relaxed ones that chase a target ratio.
  double min_gain_bits = 0.0;
  double elapsed_ms = 0.0;
};

struct DpgsResult {
  SummaryGraph summary;
  std::vector<IterationLog> log;
  // total_bits before any merge, then after every merge.
  std::vector<double> total_bits_trace;
  std::size_t merges = 0;
  // Merges taken with a non-positive gain by the relaxed iterations.
  std::size_t relaxed_merges = 0;
};

DpgsResult dpgs_summarize(const Graph& g, const DpgsConfig& cfg,
                          const MergeObserver& observer = {});

enum class KgsObjective {
  kUniformL1,        // minimize the L1 increase under uniform reconstruction
  kConfigurationKL,  // minimize the KL increase under the CR scheme
};

struct KgsConfig {
  std::size_t target_supernodes = 1;
  // Pairs sampled per step; 0 selects ceil(n_s / 2) capped at 10,000.
  std::size_t samples_per_step = 0;
  KgsObjective objective = KgsObjective::kConfigurationKL;
  std::uint64_t seed = 0;
};

// Greedy k-supernode summarization with pair sampling: each step merges the
// sampled pair whose merge raises the objective least, until k supernodes
// remain. Throws std::invalid_argument unless 1 <= k < n.
SummaryGraph kgs_summarize(const Graph& g, const KgsConfig& cfg,
                           const MergeObserver& observer = {});

// Increase of the ordered-pair L1 error sum |A - A'_uniform| if i and j were
// merged, from block statistics of the two rows.
double uniform_l1_delta(const SummaryGraph& s, SuperId i, SuperId j);

// L1 error of the uniform reconstruction in O(n_s + m_s).
double uniform_l1_error_aggregated(const SummaryGraph& s);

}  // namespace dpgs
