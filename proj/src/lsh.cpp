#include "dpgs/lsh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dpgs {

namespace {

std::vector<SupernodeGroup> group_by_full_signature(const std::vector<SuperId>& nodes,
                                                    const std::vector<std::uint64_t>& sig,
                                                    std::size_t b) {
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto sig_less = [&](std::size_t x, std::size_t y) {
    return std::lexicographical_compare(&sig[x * b], &sig[x * b] + b, &sig[y * b],
                                        &sig[y * b] + b);
  };
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return sig_less(x, y) || (!sig_less(y, x) && nodes[x] < nodes[y]);
  });

  std::vector<SupernodeGroup> groups;
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() &&
           std::equal(&sig[order[start] * b], &sig[order[start] * b] + b, &sig[order[end] * b])) {
      ++end;
    }
    SupernodeGroup g;
    for (std::size_t q = start; q < end; ++q) g.push_back(nodes[order[q]]);
    groups.push_back(std::move(g));
    start = end;
  }
  return groups;
}

std::vector<SupernodeGroup> group_by_any_band(const std::vector<SuperId>& nodes,
                                              const std::vector<std::uint64_t>& sig,
                                              std::size_t b) {
  std::vector<SupernodeGroup> groups;
  std::vector<std::size_t> pending(nodes.size());
  std::iota(pending.begin(), pending.end(), std::size_t{0});
  std::vector<std::size_t> leftover;
  for (std::size_t h = 0; h < b && pending.size() >= 2; ++h) {
    std::sort(pending.begin(), pending.end(), [&](std::size_t x, std::size_t y) {
      return sig[x * b + h] != sig[y * b + h] ? sig[x * b + h] < sig[y * b + h] : x < y;
    });
    leftover.clear();
    std::size_t start = 0;
    while (start < pending.size()) {
      std::size_t end = start + 1;
      while (end < pending.size() && sig[pending[end] * b + h] == sig[pending[start] * b + h]) {
        ++end;
      }
      if (end - start >= 2) {
        SupernodeGroup g;
        for (std::size_t q = start; q < end; ++q) g.push_back(nodes[pending[q]]);
        groups.push_back(std::move(g));
      } else {
        leftover.push_back(pending[start]);
      }
      start = end;
    }
    pending.swap(leftover);
  }
  return groups;
}

}  // namespace

void LshConfig::validate() const {
  if (bands_min < 1 || bands_min > bands_max) {
    throw std::invalid_argument("bands must satisfy 1 <= bands_min <= bands_max");
  }
  if (group_cap < 2) throw std::invalid_argument("group cap must be at least 2");
}

int band_count(int t, int total_iterations, const LshConfig& cfg) {
  if (t < 1 || t > total_iterations) throw std::out_of_range("iteration outside 1..T");
  const double span = std::max(total_iterations - 1, 1);
  const double frac = static_cast<double>(t - 1) / span;
  return static_cast<int>(std::lround(cfg.bands_min + (cfg.bands_max - cfg.bands_min) * frac));
}

std::vector<SupernodeGroup> split_group(SupernodeGroup group, std::size_t cap, Rng& rng) {
  std::vector<SupernodeGroup> out;
  if (group.size() <= cap) {
    out.push_back(std::move(group));
    return out;
  }
  std::shuffle(group.begin(), group.end(), rng);
  const std::size_t chunks = (group.size() + cap - 1) / cap;
  const std::size_t base = group.size() / chunks;
  const std::size_t extra = group.size() % chunks;
  auto it = group.begin();
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t len = base + (c < extra ? 1 : 0);
    out.emplace_back(it, it + static_cast<std::ptrdiff_t>(len));
    it += static_cast<std::ptrdiff_t>(len);
  }
  return out;
}

std::vector<SupernodeGroup> group_supernodes(const SummaryGraph& s, int bands,
                                             const LshConfig& cfg, Rng& rng) {
  if (bands < 1) throw std::invalid_argument("band count must be positive");
  const auto b = static_cast<std::size_t>(bands);

  // Multiply-add hashing over 64-bit words: odd multiplier, random offset.
  std::vector<std::uint64_t> mul(b);
  std::vector<std::uint64_t> add(b);
  for (std::size_t h = 0; h < b; ++h) {
    mul[h] = rng() | 1ULL;
    add[h] = rng();
  }

  std::vector<SuperId> nodes;
  nodes.reserve(s.num_supernodes());
  for (SuperId k = 0; k < s.id_capacity(); ++k) {
    if (s.is_live(k) && s.super_degree(k) > 0) nodes.push_back(k);
  }

  std::vector<std::uint64_t> signatures(nodes.size() * b);
  for (std::size_t p = 0; p < nodes.size(); ++p) {
    const SuperId k = nodes[p];
    std::uint64_t* sig = &signatures[p * b];
    for (std::size_t h = 0; h < b; ++h) sig[h] = mul[h] * k + add[h];
    for (const auto& entry : s.row(k)) {
      const std::uint64_t x = entry.first;
      for (std::size_t h = 0; h < b; ++h) sig[h] = std::min(sig[h], mul[h] * x + add[h]);
    }
  }

  std::vector<SupernodeGroup> raw_groups =
      cfg.banding == Banding::kAllBands ? group_by_full_signature(nodes, signatures, b)
                                        : group_by_any_band(nodes, signatures, b);
  std::vector<SupernodeGroup> groups;
  for (SupernodeGroup& g : raw_groups) {
    if (g.size() < 2) continue;
    for (auto& chunk : split_group(std::move(g), cfg.group_cap, rng)) {
      if (chunk.size() >= 2) groups.push_back(std::move(chunk));
    }
  }
  return groups;
}

}  // namespace dpgs
