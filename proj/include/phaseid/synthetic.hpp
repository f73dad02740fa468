#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "phaseid/features.hpp"
#include "phaseid/trajectory.hpp"

namespace phaseid {

enum class Aliasing {
  None,
  // Phase floor(K/2) reuses phase 0's state archetype. The two phases still
  // differ in action and in successor phase.
  StateAliased,
};

struct RingSpec {
  int K_true = 8;
  int steps_per_phase = 1;
  double noise_sigma = 0.0;
  int episodes = 1;
  int episode_len = 200;
  std::uint64_t seed = 0;
  int state_dim = 4;
  int action_dim = 2;
  Aliasing aliasing = Aliasing::None;
};

void validate(const RingSpec& spec);

struct SyntheticRing {
  TrajectorySet trajectories;
  std::vector<int> step_labels;  // ground-truth phase of every step, file order
};

/// States visit K_true archetypes on the vertices of a regular polygon in
/// state dims (0, 1), holding each phase for steps_per_phase steps, with
/// isotropic Gaussian noise on every state dim. Actions are an exact
/// function of the current phase. Every episode starts in phase 0.
SyntheticRing generate_ring(const RingSpec& spec);

/// Ground truth aligned with feature rows (Augmented drops each episode's
/// final step).
std::vector<int> row_labels(const SyntheticRing& ring, Composition composition);

/// One label per line, in step order.
void write_labels(const std::vector<int>& labels, const std::filesystem::path& path);
std::vector<int> read_labels(const std::filesystem::path& path);

}  // namespace phaseid
