#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "phaseid/parallel.hpp"
#include "phaseid/trajectory.hpp"

namespace phaseid {

enum class Composition { StateOnly, Augmented };

enum class Scaling {
  None,
  InvSqrtTotalDim,  // whole row times 1/sqrt(d), d = concatenated width
  InvSqrtBlockDim,  // each block times 1/sqrt(block width)
};

struct FeatureConfig {
  Composition composition = Composition::Augmented;
  Scaling scaling = Scaling::InvSqrtTotalDim;
  bool zscore = true;

  static FeatureConfig baseline() { return {Composition::StateOnly, Scaling::None, false}; }
  static FeatureConfig proposed() { return {Composition::Augmented, Scaling::InvSqrtTotalDim, true}; }

  bool operator==(const FeatureConfig&) const = default;
};

/// (episode id, t) of the step a feature row was built from.
struct StepRef {
  int episode = 0;
  std::size_t t = 0;

  bool operator==(const StepRef&) const = default;
};

/// Successor links: successor[i] is the row index of the chronologically next
/// step of the same episode, if that step has a row. Links never cross episodes.
using SuccessorMap = std::vector<std::optional<std::size_t>>;

struct FeatureMatrix {
  Eigen::MatrixXd rows;  // N x d
  std::vector<StepRef> step_index;
  SuccessorMap successor;
  std::vector<std::string> column_names;

  std::size_t size() const { return static_cast<std::size_t>(rows.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(rows.cols()); }
};

FeatureMatrix compose_features(const TrajectorySet& set, const FeatureConfig& cfg,
                               Backend backend = Backend::Parallel);

/// In-place per-column z-score with sample (ddof = 1) standard deviation.
/// Zero-variance columns, and every column when N < 2, become all zeros.
void zscore_columns(Eigen::MatrixXd& m, Backend backend = Backend::Parallel);

/// Header row of column names, then one comma-separated row per feature row.
void write_feature_dump(const FeatureMatrix& fm, const std::filesystem::path& path);

std::string to_string(Composition c);
std::string to_string(Scaling s);
Composition parse_composition(const std::string& s);
Scaling parse_scaling(const std::string& s);

}  // namespace phaseid
