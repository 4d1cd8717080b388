#pragma once

#include <numbers>

#include "dpgs/summary.hpp"

namespace dpgs {

// Effect of merging one supernode pair on the description length.
struct GainBreakdown {
  SuperId first = 0;
  SuperId second = 0;
  double delta_error_nats = 0.0;  // >= 0 up to rounding
  double delta_model_bits = 0.0;
  double gain_bits = 0.0;         // -(delta_model_bits + delta_error_nats / ln 2)
};

// Change of L(D|M) (nats) if i and j were merged. Only common superedge
// neighbors and the i/j block contribute, so the cost is
// O(min(deg_S(i), deg_S(j))) hash lookups. Throws std::invalid_argument for
// equal or dead ids.
double error_delta(const SummaryGraph& s, SuperId i, SuperId j);

// Exact change of model_length (bits) if i and j were merged.
double model_delta(const SummaryGraph& s, SuperId i, SuperId j);

// Both deltas from one pass over the smaller row.
GainBreakdown gain(const SummaryGraph& s, SuperId i, SuperId j);

// Merges j into i following A_S(k,l) = A_S(i,l) + A_S(j,l) and
// A_S(k,k) = A_S(i,i) + A_S(j,j) + 2 A_S(i,j). Supernode j is retired; the
// merged supernode keeps id i, which is returned. Cost is O(deg_S(j)), so
// callers pass the supernode with the larger row as i.
SuperId apply_merge(SummaryGraph& s, SuperId i, SuperId j);

}  // namespace dpgs
