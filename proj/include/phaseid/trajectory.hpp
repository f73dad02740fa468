#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace phaseid {

struct Step {
  std::vector<double> state;
  std::vector<double> action;

  bool operator==(const Step&) const = default;
};

struct Episode {
  int id = 0;
  std::vector<Step> steps;

  bool operator==(const Episode&) const = default;
};

/// A validated collection of rollouts. Construct through `make_trajectory_set`
/// or `load_trajectories` to get the invariants checked.
struct TrajectorySet {
  std::vector<Episode> episodes;
  std::size_t state_dim = 0;
  std::size_t action_dim = 0;
  std::map<std::string, std::string> meta;

  std::size_t total_steps() const;

  bool operator==(const TrajectorySet&) const = default;
};

/// Infers dimensions from the first step and checks every invariant:
/// uniform dimensions, finite values, unique ids, at least two steps per
/// episode. Throws InputError on violation.
TrajectorySet make_trajectory_set(std::vector<Episode> episodes,
                                  std::map<std::string, std::string> meta = {});

void validate(const TrajectorySet& set);

// JSON-lines format. An optional first line `{"meta": {...}}` carries string
// metadata; every other line is
//   {"episode": 0, "t": 0, "state": [...], "action": [...]}
// with each episode's records contiguous, in increasing t, without gaps.
TrajectorySet load_trajectories(const std::filesystem::path& path);
TrajectorySet parse_trajectories(std::istream& in);

void save_trajectories(const TrajectorySet& set, const std::filesystem::path& path);
void write_trajectories(const TrajectorySet& set, std::ostream& out);

}  // namespace phaseid
