#pragma once

#include <filesystem>
#include <vector>

#include <Eigen/Dense>

#include "phaseid/features.hpp"
#include "phaseid/parallel.hpp"

namespace phaseid {

using Points2 = Eigen::Matrix<double, Eigen::Dynamic, 2, Eigen::RowMajor>;

struct Embedding2D {
  Points2 points;
  std::vector<StepRef> step_index;
  SuccessorMap successor;
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();

  std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
};

/// Wraps externally produced coordinates with the provenance of `features`.
/// Throws InputError on row-count mismatch or non-finite coordinates.
Embedding2D make_embedding(const FeatureMatrix& features, Points2 points);

/// Projection onto the top two principal components. Each component's sign is
/// fixed so that its largest-magnitude loading is positive (lowest index wins
/// on ties). Requires N >= 3 and d >= 2; throws DegenerateError when fewer
/// than two principal directions carry variance.
Embedding2D embed_pca(const FeatureMatrix& features, Backend backend = Backend::Parallel);

/// Reads N lines of "x y" (whitespace or comma separated). Blank lines and
/// lines starting with '#' are ignored.
Points2 read_embedding_file(const std::filesystem::path& path);
Embedding2D import_embedding(const FeatureMatrix& features, const std::filesystem::path& path);
void write_embedding_file(const Embedding2D& emb, const std::filesystem::path& path);

/// Centered Gram matrix X^T X (d x d), accumulated column pair by column pair.
Eigen::MatrixXd centered_scatter(const Eigen::MatrixXd& x, Backend backend = Backend::Parallel);

}  // namespace phaseid
