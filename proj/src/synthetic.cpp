#include "phaseid/synthetic.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "phaseid/error.hpp"

namespace phaseid {

void validate(const RingSpec& spec) {
  if (spec.K_true < 2) throw std::invalid_argument("ring: K_true must be at least 2");
  if (spec.steps_per_phase < 1) throw std::invalid_argument("ring: steps_per_phase must be at least 1");
  if (!(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma)) throw std::invalid_argument("ring: noise_sigma must be >= 0");
  if (spec.episodes < 1) throw std::invalid_argument("ring: episodes must be at least 1");
  if (spec.state_dim < 2) throw std::invalid_argument("ring: state_dim must be at least 2");
  if (spec.action_dim < 1) throw std::invalid_argument("ring: action_dim must be at least 1");
  if (spec.episode_len < spec.K_true * spec.steps_per_phase || spec.episode_len < 2) {
    throw std::invalid_argument("ring: episode_len must cover at least one full cycle");
  }
}

SyntheticRing generate_ring(const RingSpec& spec) {
  validate(spec);
  const int K = spec.K_true;
  const int aliased = spec.aliasing == Aliasing::StateAliased ? K / 2 : -1;
  auto angle = [&](int p) { return 2.0 * std::numbers::pi * p / K; };

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  SyntheticRing out;
  std::vector<Episode> episodes;
  for (int e = 0; e < spec.episodes; ++e) {
    Episode ep{e, {}};
    ep.steps.reserve(static_cast<std::size_t>(spec.episode_len));
    for (int t = 0; t < spec.episode_len; ++t) {
      const int phase = (t / spec.steps_per_phase) % K;
      const int archetype = phase == aliased ? 0 : phase;
      Step step;
      step.state.assign(static_cast<std::size_t>(spec.state_dim), 0.0);
      step.state[0] = std::cos(angle(archetype));
      step.state[1] = std::sin(angle(archetype));
      if (spec.noise_sigma > 0.0) {
        for (double& x : step.state) x += spec.noise_sigma * noise(rng);
      }
      step.action.resize(static_cast<std::size_t>(spec.action_dim));
      for (int k = 0; k < spec.action_dim; ++k) {
        step.action[static_cast<std::size_t>(k)] = std::cos(angle(phase) - std::numbers::pi * k / spec.action_dim);
      }
      ep.steps.push_back(std::move(step));
      out.step_labels.push_back(phase);
    }
    episodes.push_back(std::move(ep));
  }

  std::map<std::string, std::string> meta{
      {"env", "synthetic-ring"},
      {"K_true", std::to_string(K)},
      {"steps_per_phase", std::to_string(spec.steps_per_phase)},
      {"seed", std::to_string(spec.seed)},
      {"aliasing", spec.aliasing == Aliasing::StateAliased ? "state" : "none"},
  };
  out.trajectories = make_trajectory_set(std::move(episodes), std::move(meta));
  return out;
}

std::vector<int> row_labels(const SyntheticRing& ring, Composition composition) {
  if (composition == Composition::StateOnly) return ring.step_labels;
  std::vector<int> rows;
  std::size_t offset = 0;
  for (const auto& ep : ring.trajectories.episodes) {
    for (std::size_t t = 0; t + 1 < ep.steps.size(); ++t) rows.push_back(ring.step_labels[offset + t]);
    offset += ep.steps.size();
  }
  return rows;
}

void write_labels(const std::vector<int>& labels, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write label file '" + path.string() + "'");
  for (int l : labels) out << l << '\n';
}

std::vector<int> read_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open label file '" + path.string() + "'");
  std::vector<int> labels;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      std::size_t used = 0;
      const int v = std::stoi(line, &used);
      if (line.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument("trailing");
      labels.push_back(v);
    } catch (const std::exception&) {
      throw InputError("label file line " + std::to_string(n) + ": expected an integer");
    }
  }
  return labels;
}

}  // namespace phaseid
