#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "phaseid/clustering.hpp"
#include "phaseid/embedding.hpp"
#include "phaseid/parallel.hpp"
#include "phaseid/selection.hpp"

namespace phaseid {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Per-sample silhouette values (Euclidean). Singleton clusters score 0; a
/// sample with a = b = 0 scores 0. Requires K >= 2.
std::vector<double> silhouette_samples(const RowMatrix& points, const std::vector<int>& labels, int K,
                                       Backend backend = Backend::Parallel);

/// Mean silhouette. Samples are reduced serially in index order, so both
/// backends return the same bits.
double silhouette(const RowMatrix& points, const std::vector<int>& labels, int K, Backend backend = Backend::Parallel);
double silhouette(const Embedding2D& emb, const PhaseAssignment& assign, Backend backend = Backend::Parallel);

struct RotationalRegularity {
  std::optional<double> value;  // |mean|; absent when no term survived
  double signed_mean = 0.0;     // positive: counterclockwise on average
  std::size_t external_transitions = 0;
  std::size_t used = 0;
  std::size_t skipped_zero_norm = 0;
};

/// Mean normalised cross product r_t x v_t over between-cluster successor
/// links, with r_t measured from the centroid of all embedded points.
/// Terms where either vector has zero length are skipped and counted.
RotationalRegularity rotational_regularity(const Embedding2D& emb, const std::vector<int>& labels);
inline RotationalRegularity rotational_regularity(const Embedding2D& emb, const PhaseAssignment& assign) {
  return rotational_regularity(emb, assign.labels);
}

/// Chance-corrected Rand index between two labelings of the same items.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

struct MetricsReport {
  int K = 0;
  double silhouette = 0.0;
  std::optional<double> R;
  double C_ext = 0.0;
  double H_c = 0.0;
  long long n_transitions_external = 0;
  long long n_transitions_self = 0;
  std::size_t R_skipped_zero_norm = 0;
};

/// Assembles every metric for one cut. `silhouette_space` overrides the 2D
/// embedding as the silhouette distance space (e.g. feature rows).
MetricsReport full_report(const Embedding2D& emb, const PhaseAssignment& assign, const TransitionCounts& tc,
                          const RowMatrix* silhouette_space = nullptr);

}  // namespace phaseid
