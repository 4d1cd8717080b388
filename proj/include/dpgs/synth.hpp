#pragma once

#include <cstdint>

#include "dpgs/graph.hpp"

namespace dpgs {

// G(n, p): every unordered pair independently with probability p. Isolated
// nodes stay in the graph. p may be 0 or 1.
Graph gen_er(NodeId n, double p, std::uint64_t seed);

// Erased configuration model: degrees drawn from P(d) ~ d^-alpha on
// d_min..n-1, one stub added if the sum is odd, stubs paired uniformly, then
// self-loops and parallel edges removed.
Graph gen_power_law(NodeId n, double alpha, std::uint32_t d_min, std::uint64_t seed);

inline constexpr std::uint32_t kDefaultPowerLawMinDegree = 2;

}  // namespace dpgs
