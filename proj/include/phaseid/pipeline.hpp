#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "phaseid/clustering.hpp"
#include "phaseid/embedding.hpp"
#include "phaseid/features.hpp"
#include "phaseid/metrics.hpp"
#include "phaseid/selection.hpp"
#include "phaseid/transitions.hpp"

namespace phaseid {

enum class Method { Baseline, Proposed, Custom };

std::string to_string(Method m);
Method parse_method(const std::string& s);

enum class SilhouetteSpace { Embedding, Features };

struct PipelineConfig {
  FeatureConfig features = FeatureConfig::proposed();
  SelectionRule rule = SelectionRule::ElbowCext;
  std::optional<std::filesystem::path> embedding_file;  // PCA when empty
  int K_min = 2;
  int K_max = 20;
  LabelSeed label_seed = LabelSeed::FirstStep;
  SilhouetteSpace silhouette_space = SilhouetteSpace::Embedding;
  Backend backend = Backend::Parallel;

  static PipelineConfig for_method(Method m);
};

/// Failure inside one pipeline stage; `stage` names it for diagnostics.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what, bool input_error)
      : std::runtime_error(what), stage_(std::move(stage)), input_error_(input_error) {}
  const std::string& stage() const { return stage_; }
  bool input_error() const { return input_error_; }

 private:
  std::string stage_;
  bool input_error_;
};

struct PipelineResult {
  FeatureMatrix features;
  Embedding2D embedding;
  Dendrogram dendrogram;
  SelectionCurve curve;
  int K_star = 0;
  PhaseAssignment assignment;  // phase labels after sequential relabelling
  TransitionModel transitions;
  MetricsReport metrics;
};

/// features -> embedding -> Ward dendrogram -> K scan -> cut at K* ->
/// sequential relabelling -> metrics.
PipelineResult run_pipeline(const TrajectorySet& set, const PipelineConfig& cfg);

/// The rule-independent half: features, embedding, dendrogram and K scan.
PipelineResult prepare_pipeline(const TrajectorySet& set, const PipelineConfig& cfg);

/// Picks K* by `cfg.rule` on a prepared result and fills the assignment,
/// transition model and metrics.
PipelineResult finalize_pipeline(PipelineResult prepared, const PipelineConfig& cfg);

}  // namespace phaseid
