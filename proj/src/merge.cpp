#include "dpgs/merge.hpp"

#include <stdexcept>
#include <utility>

#include "dpgs/mdl.hpp"

namespace dpgs {
namespace {

void check_pair(const SummaryGraph& s, SuperId i, SuperId j) {
  if (i == j) throw std::invalid_argument("cannot merge a supernode with itself");
  if (!s.is_live(i) || !s.is_live(j)) {
    throw std::invalid_argument("merge of dead supernode (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
  }
}

double ln_code(Weight w) { return w > 0 ? universal_int_length(w) : 0.0; }

struct PairScan {
  double delta_error_nats = 0.0;
  std::int64_t delta_superedges = 0;
  double delta_weight_bits = 0.0;
};

PairScan scan_pair(const SummaryGraph& s, SuperId i, SuperId j, bool want_model) {
  check_pair(s, i, j);
  const Weight d_i = s.super_degree(i);
  const Weight d_j = s.super_degree(j);

  PairScan out;
  double neighbor_terms = 0.0;
  // Walk the shorter row; neighbors adjacent to only one side keep their
  // weight and contribute nothing.
  const SuperId small = s.row(i).size() <= s.row(j).size() ? i : j;
  const SuperId large = small == i ? j : i;
  const SuperRow& large_row = s.row(large);
  for (const auto& [l, w_small] : s.row(small)) {
    if (l == i || l == j) continue;
    auto it = large_row.find(l);
    if (it == large_row.end()) continue;
    const Weight w_large = it->second;
    const auto a = static_cast<double>(w_small);
    const auto b = static_cast<double>(w_large);
    neighbor_terms += xlogx(a) + xlogx(b) - xlogx(a + b);
    if (want_model) {
      out.delta_superedges -= 1;
      out.delta_weight_bits += ln_code(w_small + w_large) - ln_code(w_small) - ln_code(w_large);
    }
  }

  const Weight a_ii = s.weight(i, i);
  const Weight a_jj = s.weight(j, j);
  const Weight a_ij = s.weight(i, j);
  const Weight a_kk = a_ii + a_jj + 2 * a_ij;
  const auto di = static_cast<double>(d_i);
  const auto dj = static_cast<double>(d_j);
  out.delta_error_nats = 2.0 * (xlogx(di + dj) - xlogx(di) - xlogx(dj)) + 2.0 * neighbor_terms +
                         xlogx(static_cast<double>(a_ii)) + xlogx(static_cast<double>(a_jj)) +
                         2.0 * xlogx(static_cast<double>(a_ij)) -
                         xlogx(static_cast<double>(a_kk));
  if (want_model) {
    out.delta_superedges += static_cast<std::int64_t>(a_kk > 0) -
                            static_cast<std::int64_t>(a_ii > 0) -
                            static_cast<std::int64_t>(a_jj > 0) -
                            static_cast<std::int64_t>(a_ij > 0);
    out.delta_weight_bits += ln_code(a_kk) - ln_code(a_ii) - ln_code(a_jj) - ln_code(a_ij);
  }
  return out;
}

double model_delta_from_scan(const SummaryGraph& s, const PairScan& scan) {
  const std::uint64_t n = s.num_nodes();
  const std::uint64_t n_s = s.num_supernodes();
  const std::uint64_t m_s = s.num_superedges();
  const auto m_after =
      static_cast<std::uint64_t>(static_cast<std::int64_t>(m_s) + scan.delta_superedges);
  // The degree code is unchanged by a merge; only counts and weights move.
  const double before = model_length_from_counts(n, n_s, m_s, 0.0, 0.0);
  const double after = model_length_from_counts(n, n_s - 1, m_after, 0.0, 0.0);
  return after - before + scan.delta_weight_bits;
}

}  // namespace

double error_delta(const SummaryGraph& s, SuperId i, SuperId j) {
  return scan_pair(s, i, j, false).delta_error_nats;
}

double model_delta(const SummaryGraph& s, SuperId i, SuperId j) {
  return model_delta_from_scan(s, scan_pair(s, i, j, true));
}

GainBreakdown gain(const SummaryGraph& s, SuperId i, SuperId j) {
  const PairScan scan = scan_pair(s, i, j, true);
  GainBreakdown out;
  out.first = i;
  out.second = j;
  out.delta_error_nats = scan.delta_error_nats;
  out.delta_model_bits = model_delta_from_scan(s, scan);
  out.gain_bits = -(out.delta_model_bits + out.delta_error_nats / std::numbers::ln2);
  return out;
}

SuperId apply_merge(SummaryGraph& s, SuperId i, SuperId j) {
  check_pair(s, i, j);
  SuperRow& row_i = s.rows_[i];
  SuperRow row_j = std::move(s.rows_[j]);
  s.rows_[j] = SuperRow();

  const Weight a_ii = s.weight(i, i);
  const Weight a_ij = s.weight(i, j);
  Weight a_jj = 0;
  std::int64_t superedges = static_cast<std::int64_t>(s.num_superedges_);
  for (const auto& [l, w] : row_j) {
    if (l == j) {
      a_jj = w;
      continue;
    }
    if (l == i) continue;
    SuperRow& row_l = s.rows_[l];
    row_l.erase(j);
    row_l[i] += w;
    auto [it, inserted] = row_i.try_emplace(l, w);
    if (!inserted) {
      it->second += w;
      --superedges;  // (i,l) and (j,l) collapse into one
    }
  }
  const Weight a_kk = a_ii + a_jj + 2 * a_ij;
  superedges += static_cast<std::int64_t>(a_kk > 0) - static_cast<std::int64_t>(a_ii > 0) -
                static_cast<std::int64_t>(a_jj > 0) - static_cast<std::int64_t>(a_ij > 0);
  row_i.erase(j);
  if (a_kk > 0) row_i[i] = a_kk;
  s.num_superedges_ = static_cast<std::size_t>(superedges);

  s.super_degrees_[i] += s.super_degrees_[j];
  s.super_degrees_[j] = 0;

  NodeAssignment& a = s.assignment_;
  for (NodeId node : a.members_[j]) a.pi_[node] = i;
  a.members_[i].insert(a.members_[i].end(), a.members_[j].begin(), a.members_[j].end());
  a.members_[j] = std::vector<NodeId>();
  --a.live_;
  return i;
}

}  // namespace dpgs
