#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "dpgs/graph.hpp"
#include "dpgs/summary.hpp"

namespace dpgs {

// Description lengths mix two units: model costs are in bits (log2) and the
// reconstruction error is a generalized KL divergence in nats (ln). The two
// are only combined in total_bits.
struct DescriptionLength {
  double model_bits = 0.0;
  double error_nats = 0.0;
  double total_bits = 0.0;

  static DescriptionLength of(double model_bits, double error_nats) {
    return {model_bits, error_nats, model_bits + error_nats / std::numbers::ln2};
  }
};

// Normalizing constant of Rissanen's log-star code.
inline constexpr double kLogStarNormalizer = 2.865064;

// Universal code length LN(x) in bits: log2(c0) plus the iterated log2 terms
// while they stay positive. Throws std::domain_error for x < 1.
double universal_int_length(std::uint64_t x);

// BE(a, b) = -b log2(b/a) - (a-b) log2(1 - b/a) in bits, 0 log 0 := 0.
// Throws std::domain_error unless 0 <= b <= a and a >= 1.
double binomial_length(std::uint64_t a, std::uint64_t b);

// x ln x with f(0) = 0.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// sum over ordered edge pairs of ln(d_i d_j) = 2 sum_i d_i ln d_i. Depends only
// on the input graph.
double degree_log_constant(const Graph& g);

// L(D|M) in nats, evaluated edge by edge as sum over ordered pairs (i, j) in E
// of ln(1 / A'_CR(i, j)). Throws std::domain_error if an edge reconstructs to 0.
double error_length(const Graph& g, const SummaryGraph& s);

// Same quantity from supernode aggregates:
// 2 sum_k f(D_k) - sum_{k,l} f(A_S(k,l)) - degree_log_constant(g).
double error_length_aggregated(const SummaryGraph& s, double degree_constant);
double error_length_aggregated(const SummaryGraph& s, const Graph& g);

// sum_i LN(d_i) over nodes with d_i > 0.
double degree_code_length(const Graph& g);

// L(M) in bits: LN(n_s) + n LN(n_s) + sum_i LN(d_i) + L(A_S), with
// L(A_S) = LN(m_s) + sum LN(w) + BE(n_s(n_s+1)/2, m_s). LN(m_s) is taken as 0
// when there are no superedges.
double model_length(const Graph& g, const SummaryGraph& s);

// Model length of a summary with the given counts and superedge weight code
// sum; the building block shared by model_length and the merge deltas.
double model_length_from_counts(std::uint64_t n, std::uint64_t n_s, std::uint64_t m_s,
                                double degree_bits, double weight_bits);

DescriptionLength total_length(const Graph& g, const SummaryGraph& s);

// Length of the singleton summary of g (zero error, every edge a weight-1
// superedge), computed without materializing it.
DescriptionLength trivial_length(const Graph& g);

// total_bits(s) / total_bits(singleton summary). 1.0 for an edgeless graph.
double relative_length(const Graph& g, const SummaryGraph& s);

}  // namespace dpgs
