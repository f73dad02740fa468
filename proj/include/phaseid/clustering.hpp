#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include <Eigen/Dense>

#include "phaseid/embedding.hpp"
#include "phaseid/parallel.hpp"

namespace phaseid {

/// One agglomeration step. Ids 0..N-1 are leaves; the cluster created by
/// merge m has id N + m. `left` < `right` always.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double distance = 0.0;  // Ward distance, sqrt of the Lance-Williams value
  std::size_t size = 0;

  bool operator==(const Merge&) const = default;
};

struct Dendrogram {
  std::vector<Merge> merges;
  std::size_t leaf_count = 0;
};

/// Ward linkage over Euclidean distances with the Lance-Williams update.
/// The minimum-distance pair merges first; ties go to the lexicographically
/// smallest (left id, right id).
///
/// Backend::Serial rescans every active pair at each step (O(N^3)) and is
/// kept as the reference. Backend::Parallel caches each cluster's nearest
/// higher-id neighbour and updates rows with OpenMP; it yields the same merge
/// sequence bit for bit. Both store a condensed N(N-1)/2 distance table.
Dendrogram build_dendrogram(const Points2& points, Backend backend = Backend::Parallel);
inline Dendrogram build_dendrogram(const Embedding2D& emb, Backend backend = Backend::Parallel) {
  return build_dendrogram(emb.points, backend);
}

using Centroids = Eigen::Matrix<double, Eigen::Dynamic, 2, Eigen::RowMajor>;

struct PhaseAssignment {
  std::vector<int> labels;
  int K = 0;
  std::vector<std::size_t> cluster_sizes;
  Centroids cluster_centroids;
};

/// Validates labels (every label in 0..K-1, no empty cluster) and computes
/// sizes and centroids over `points`.
PhaseAssignment make_assignment(std::vector<int> labels, int K, const Points2& points);

/// Undoes the last K-1 merges. Clusters are numbered by first occurrence
/// along the row order. `cut_labels` accepts 1 <= K <= N; `cut` needs K >= 2.
/// The 2..20 scan window belongs to model selection, not to the cut.
std::vector<int> cut_labels(const Dendrogram& dendrogram, int K);
PhaseAssignment cut(const Dendrogram& dendrogram, int K, const Embedding2D& emb);

/// Rewrites labels so clusters are numbered by first occurrence.
std::vector<int> renumber_by_first_occurrence(const std::vector<int>& labels);

void write_dendrogram(const Dendrogram& dendrogram, const std::filesystem::path& path);

}  // namespace phaseid
