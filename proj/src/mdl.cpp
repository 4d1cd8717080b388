#include "dpgs/mdl.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace dpgs {
namespace {

double log_star_bits(std::uint64_t x) {
  double bits = std::log2(kLogStarNormalizer);
  double term = std::log2(static_cast<double>(x));
  while (term > 0.0) {
    bits += term;
    term = std::log2(term);
  }
  return bits;
}

constexpr std::size_t kTableSize = 1 << 16;

const std::vector<double>& small_lengths() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kTableSize, 0.0);
    for (std::uint64_t x = 1; x < kTableSize; ++x) t[x] = log_star_bits(x);
    return t;
  }();
  return table;
}

}  // namespace

double universal_int_length(std::uint64_t x) {
  if (x < 1) throw std::domain_error("universal integer code needs x >= 1");
  if (x < kTableSize) return small_lengths()[x];
  return log_star_bits(x);
}

double binomial_length(std::uint64_t a, std::uint64_t b) {
  if (a < 1 || b > a) {
    throw std::domain_error("binomial length needs a >= 1 and 0 <= b <= a (a=" +
                            std::to_string(a) + ", b=" + std::to_string(b) + ")");
  }
  if (b == 0 || b == a) return 0.0;
  const double fa = static_cast<double>(a);
  const double fb = static_cast<double>(b);
  const double p = fb / fa;
  // log1p keeps the (a-b) term accurate when b << a, which is the usual case
  // for superedge counts against n_s(n_s+1)/2 slots.
  const double log2_q = p < 0.25 ? std::log1p(-p) / std::numbers::ln2 : std::log2(1.0 - p);
  return -fb * std::log2(p) - (fa - fb) * log2_q;
}

double degree_log_constant(const Graph& g) {
  double total = 0.0;
  for (std::uint32_t d : g.degrees()) total += xlogx(static_cast<double>(d));
  return 2.0 * total;
}

double error_length(const Graph& g, const SummaryGraph& s) {
  const auto degrees = g.degrees();
  double total = 0.0;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    for (NodeId j : g.neighbors(i)) {
      const double a = reconstruct_cr(s, degrees, i, j);
      if (a <= 0.0) {
        throw std::domain_error("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") reconstructs to zero weight");
      }
      total -= std::log(a);
    }
  }
  return total;
}

double error_length_aggregated(const SummaryGraph& s, double degree_constant) {
  double degree_part = 0.0;
  double weight_part = 0.0;
  for (SuperId k = 0; k < s.id_capacity(); ++k) {
    if (!s.is_live(k)) continue;
    degree_part += xlogx(static_cast<double>(s.super_degree(k)));
    // Each off-diagonal superedge is visited from both endpoints, matching
    // the full double sum over (k, l).
    for (const auto& [l, w] : s.row(k)) weight_part += xlogx(static_cast<double>(w));
  }
  return 2.0 * degree_part - weight_part - degree_constant;
}

double error_length_aggregated(const SummaryGraph& s, const Graph& g) {
  return error_length_aggregated(s, degree_log_constant(g));
}

double degree_code_length(const Graph& g) {
  double bits = 0.0;
  for (std::uint32_t d : g.degrees()) {
    if (d > 0) bits += universal_int_length(d);
  }
  return bits;
}

double model_length_from_counts(std::uint64_t n, std::uint64_t n_s, std::uint64_t m_s,
                                double degree_bits, double weight_bits) {
  if (n == 0) return 0.0;
  const double node_bits = static_cast<double>(n + 1) * universal_int_length(n_s);
  const double count_bits = m_s > 0 ? universal_int_length(m_s) : 0.0;
  const std::uint64_t slots = n_s * (n_s + 1) / 2;
  return node_bits + degree_bits + count_bits + weight_bits + binomial_length(slots, m_s);
}

double model_length(const Graph& g, const SummaryGraph& s) {
  double weight_bits = 0.0;
  for (SuperId k = 0; k < s.id_capacity(); ++k) {
    for (const auto& [l, w] : s.row(k)) {
      if (k <= l) weight_bits += universal_int_length(w);
    }
  }
  return model_length_from_counts(g.num_nodes(), s.num_supernodes(), s.num_superedges(),
                                  degree_code_length(g), weight_bits);
}

DescriptionLength total_length(const Graph& g, const SummaryGraph& s) {
  return DescriptionLength::of(model_length(g, s), error_length_aggregated(s, g));
}

DescriptionLength trivial_length(const Graph& g) {
  const std::uint64_t m = g.num_edges();
  // Summed term by term, like model_length, so the singleton summary divides
  // to exactly 1.0 in relative_length.
  double weight_bits = 0.0;
  for (std::uint64_t e = 0; e < m; ++e) weight_bits += universal_int_length(1);
  return DescriptionLength::of(
      model_length_from_counts(g.num_nodes(), g.num_nodes(), m, degree_code_length(g),
                               weight_bits),
      0.0);
}

double relative_length(const Graph& g, const SummaryGraph& s) {
  const double base = trivial_length(g).total_bits;
  if (base <= 0.0) return 1.0;
  return total_length(g, s).total_bits / base;
}

}  // namespace dpgs
