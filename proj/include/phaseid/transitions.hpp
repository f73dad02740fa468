#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "phaseid/selection.hpp"

namespace phaseid {

/// Where sequential labelling starts.
enum class LabelSeed {
  FirstStep,     // cluster of the first step of the first episode
  HighestWeight, // cluster with the largest w_i
};

std::string to_string(LabelSeed s);
LabelSeed parse_label_seed(const std::string& s);

/// perm[old] = new.
using Relabeling = std::vector<int>;

/// Sequential phase labelling: the seed becomes 0; each newly labelled
/// phase hands the next label to its most frequent external destination.
/// When that destination is already labelled (or there is none), labelling
/// restarts from the unlabelled phase with the highest w_i. Ties go to the
/// smallest original id.
Relabeling relabel_sequential(const TransitionCounts& tc, int seed_cluster);

/// Resolves a LabelSeed against counts and the label of the first row.
int seed_cluster(LabelSeed seed, const TransitionCounts& tc, int first_row_label);

/// Counts after a simultaneous row/column permutation.
TransitionCounts permute(const TransitionCounts& tc, const Relabeling& perm);
std::vector<int> apply_relabeling(const std::vector<int>& labels, const Relabeling& perm);

struct DominantCycle {
  std::vector<int> path;        // starts at 0 unless empty
  bool closed = false;          // last phase's dominant destination is 0
  std::optional<int> repeat_at; // label revisited when the path does not close
};

/// Argmax over j != i of row i, smallest j on ties; nullopt without any
/// external transition.
std::optional<int> dominant_destination(const TransitionCounts& tc, int i);

DominantCycle dominant_cycle(const TransitionCounts& relabeled);

struct TransitionModel {
  TransitionCounts counts;            // relabelled
  Eigen::MatrixXd probabilities;      // row-stochastic where rows have mass
  Relabeling relabeling;              // old -> new
  DominantCycle cycle;
};

TransitionModel build_transition_model(const TransitionCounts& tc, int seed_cluster);

/// Cells (row, col) outlined as the dominant cycle: consecutive path pairs
/// plus the closing edge back to 0 when the cycle closes.
std::vector<std::pair<int, int>> cycle_cells(const DominantCycle& cycle);

/// Heatmap with one cell per (source, destination): "p (n)", probabilities
/// to 2 decimals, dominant-cycle cells outlined.
std::string render_transition_matrix(const TransitionModel& model);

/// "source,destination,count,probability" rows with a header.
void write_transition_table(const TransitionModel& model, const std::filesystem::path& path);

}  // namespace phaseid
