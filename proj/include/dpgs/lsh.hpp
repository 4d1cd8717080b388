#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dpgs/random.hpp"
#include "dpgs/summary.hpp"

namespace dpgs {

// How the per-band minhash values of a supernode decide its group.
enum class Banding {
  // Supernodes must agree on every band: P(co-group) = J^b, stricter as b grows.
  kAllBands,
  // Bands are tried in order; a supernode not yet grouped joins the first band
  // bucket it shares with another ungrouped supernode. More bands group more
  // supernodes, and each group still shares one minhash value.
  kAnyBand,
};

struct LshConfig {
  Banding banding = Banding::kAnyBand;
  int bands_min = 3;
  int bands_max = 8;
  std::size_t group_cap = 500;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument unless 1 <= bands_min <= bands_max and
  // group_cap >= 2.
  void validate() const;
};

// Band count for iteration t of T (1-based), interpolated linearly from
// bands_min to bands_max and rounded.
int band_count(int t, int total_iterations, const LshConfig& cfg);

using SupernodeGroup = std::vector<SuperId>;

// Minhash grouping of live supernodes with D_k > 0. Each supernode is hashed
// by `bands` independent minhashes over its superedge neighbors plus itself,
// and groups are formed from the signatures according to cfg.banding. Groups above
// cfg.group_cap are shuffled and cut into near-equal chunks, and groups of
// one are dropped. The hash salts are drawn from `rng`.
std::vector<SupernodeGroup> group_supernodes(const SummaryGraph& s, int bands,
                                             const LshConfig& cfg, Rng& rng);

// Cuts an oversized group into ceil(size / cap) near-equal random chunks.
std::vector<SupernodeGroup> split_group(SupernodeGroup group, std::size_t cap, Rng& rng);

}  // namespace dpgs
