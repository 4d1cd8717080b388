#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>

#include "dpgs/graph.hpp"
#include "dpgs/mdl.hpp"
#include "dpgs/summary.hpp"

namespace dpgs {

struct SpectralCheck {
  double lhs = 0.0;  // sum_i (lambda_i - lambda'_i)^2, both spectra sorted ascending
  double rhs = 0.0;  // 2 L(D|M)
  bool holds = false;
};

struct SchemeComparison {
  double kl_cr = 0.0;       // per node
  double kl_uniform = 0.0;  // per node; +inf if an edge reconstructs to 0
  bool uniform_undefined = false;
};

struct MetricsReport {
  DescriptionLength length;
  double kl_error_nats = 0.0;
  double relative_description_length = 0.0;
  std::optional<double> l1_error_cr;
  std::optional<double> l1_error_uniform;
  std::optional<SchemeComparison> schemes;
  std::optional<SpectralCheck> spectral;
};

inline constexpr std::size_t kDefaultSpectralCap = 2000;

// L(D|M) under the CR scheme, in nats.
double kl_error(const Graph& g, const SummaryGraph& s);

// sum over ordered pairs of |A(i,j) - A'(i,j)|, from the dense reconstruction.
double l1_error(const Graph& g, const SummaryGraph& s, Scheme scheme,
                std::size_t cap = kDefaultReconstructionCap);

// Generalized KL divergence sum A ln(A/A') - A + A' of the uniform scheme.
// The linear terms are kept since uniform reconstruction does not preserve
// degrees. Computed per block in O(n_s + m_s); +inf when some edge falls in
// a block reconstructed to zero.
double kl_error_uniform(const Graph& g, const SummaryGraph& s);

// Both KL errors divided by n.
SchemeComparison compare_schemes(const Graph& g, const SummaryGraph& s);

// Eigenvalue perturbation of the normalized Laplacian against 2 L(D|M).
// Isolated nodes are dropped from both matrices; the reconstructed Laplacian
// is normalized with the original degrees. Throws std::length_error above
// `cap` nodes and std::invalid_argument when no node has an edge.
SpectralCheck spectral_bound_check(const Graph& g, const SummaryGraph& s,
                                   std::size_t cap = kDefaultSpectralCap);

// Sorted eigenvalues of a dense symmetric matrix.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& m);

struct EvaluateOptions {
  bool l1 = false;
  bool schemes = false;
  bool spectral = false;
  std::size_t reconstruction_cap = kDefaultReconstructionCap;
  std::size_t spectral_cap = kDefaultSpectralCap;
};

MetricsReport evaluate(const Graph& g, const SummaryGraph& s, const EvaluateOptions& options);

// Column order is fixed; absent optional metrics are written as empty cells.
std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsReport& report);

}  // namespace dpgs
