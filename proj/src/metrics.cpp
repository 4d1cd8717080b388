#include "dpgs/metrics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dpgs {

double kl_error(const Graph& g, const SummaryGraph& s) { return error_length(g, s); }

double l1_error(const Graph& g, const SummaryGraph& s, Scheme scheme, std::size_t cap) {
  const DenseMatrix a = full_reconstruction(s, g, scheme, cap);
  double total = 0.0;
  for (NodeId i = 0; i < a.n; ++i) {
    for (NodeId j = 0; j < a.n; ++j) {
      const double original = g.has_edge(i, j) ? 1.0 : 0.0;
      total += std::abs(original - a(i, j));
    }
  }
  return total;
}

double kl_error_uniform(const Graph& /*g*/, const SummaryGraph& s) {
  const auto& a = s.assignment();
  // For a block of P ordered pairs holding w edges, each reconstructed to
  // q = w / P', the divergence is -w ln q - w + P q.
  double total = 0.0;
  for (SuperId k = 0; k < s.id_capacity(); ++k) {
    if (!s.is_live(k)) continue;
    const auto size_k = static_cast<double>(a.size_of(k));
    for (const auto& [l, w] : s.row(k)) {
      const auto wf = static_cast<double>(w);
      double entries;
      double q;
      if (l == k) {
        if (size_k < 2.0) return std::numeric_limits<double>::infinity();
        entries = size_k * size_k;
        q = wf / (size_k * (size_k - 1.0));
      } else {
        entries = size_k * static_cast<double>(a.size_of(l));
        q = wf / entries;
      }
      total += -wf * std::log(q) - wf + entries * q;
    }
  }
  return total;
}

SchemeComparison compare_schemes(const Graph& g, const SummaryGraph& s) {
  SchemeComparison out;
  const double n = std::max<double>(1.0, g.num_nodes());
  out.kl_cr = kl_error(g, s) / n;
  const double uniform = kl_error_uniform(g, s);
  out.uniform_undefined = std::isinf(uniform);
  out.kl_uniform = uniform / n;
  return out;
}

std::vector<double> symmetric_eigenvalues(const DenseMatrix& m) {
  Eigen::MatrixXd dense(m.n, m.n);
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) dense(i, j) = m(i, j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(values.begin(), values.end());
  return values;
}

SpectralCheck spectral_bound_check(const Graph& g, const SummaryGraph& s, std::size_t cap) {
  if (g.num_nodes() > cap) {
    throw std::length_error("spectral check limited to " + std::to_string(cap) + " nodes");
  }
  std::vector<NodeId> kept;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    if (g.degree(i) > 0) kept.push_back(i);
  }
  if (kept.empty()) throw std::invalid_argument("spectral check needs at least one edge");

  const std::size_t n = kept.size();
  const auto degrees = g.degrees();
  DenseMatrix original{n, std::vector<double>(n * n, 0.0)};
  DenseMatrix rebuilt{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t p = 0; p < n; ++p) {
    const double dp = degrees[kept[p]];
    for (std::size_t q = 0; q < n; ++q) {
      const double scale = 1.0 / std::sqrt(dp * degrees[kept[q]]);
      const double a = g.has_edge(kept[p], kept[q]) ? 1.0 : 0.0;
      const double a_rec = reconstruct_cr(s, degrees, kept[p], kept[q]);
      const double identity = p == q ? 1.0 : 0.0;
      original(p, q) = identity - a * scale;
      rebuilt(p, q) = identity - a_rec * scale;
    }
  }
  const auto lambda = symmetric_eigenvalues(original);
  const auto lambda_rec = symmetric_eigenvalues(rebuilt);
  SpectralCheck out;
  for (std::size_t p = 0; p < n; ++p) {
    const double diff = lambda[p] - lambda_rec[p];
    out.lhs += diff * diff;
  }
  out.rhs = 2.0 * kl_error(g, s);
  out.holds = out.lhs <= out.rhs + 1e-8;
  return out;
}

MetricsReport evaluate(const Graph& g, const SummaryGraph& s, const EvaluateOptions& options) {
  MetricsReport r;
  r.length = total_length(g, s);
  r.kl_error_nats = kl_error(g, s);
  r.relative_description_length = relative_length(g, s);
  if (options.l1) {
    r.l1_error_cr = l1_error(g, s, Scheme::kConfiguration, options.reconstruction_cap);
    r.l1_error_uniform = l1_error(g, s, Scheme::kUniform, options.reconstruction_cap);
  }
  if (options.schemes) r.schemes = compare_schemes(g, s);
  if (options.spectral) r.spectral = spectral_bound_check(g, s, options.spectral_cap);
  return r;
}

std::string metrics_csv_header() {
  return "model_bits,error_nats,total_bits,relative,kl_error_nats,l1_cr,l1_uniform,"
         "kl_cr_per_node,kl_uniform_per_node,spectral_lhs,spectral_rhs,spectral_holds";
}

std::string metrics_csv_row(const MetricsReport& r) {
  std::ostringstream out;
  out.precision(17);
  auto opt = [&out](const std::optional<double>& v) {
    out << ',';
    if (v) out << *v;
  };
  out << r.length.model_bits << ',' << r.length.error_nats << ',' << r.length.total_bits << ','
      << r.relative_description_length << ',' << r.kl_error_nats;
  opt(r.l1_error_cr);
  opt(r.l1_error_uniform);
  opt(r.schemes ? std::optional<double>(r.schemes->kl_cr) : std::nullopt);
  opt(r.schemes ? std::optional<double>(r.schemes->kl_uniform) : std::nullopt);
  opt(r.spectral ? std::optional<double>(r.spectral->lhs) : std::nullopt);
  opt(r.spectral ? std::optional<double>(r.spectral->rhs) : std::nullopt);
  out << ',';
  if (r.spectral) out << (r.spectral->holds ? "true" : "false");
  return out.str();
}

}  // namespace dpgs
