#include "phaseid/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "phaseid/error.hpp"

namespace phaseid {

using nlohmann::json;

std::size_t TrajectorySet::total_steps() const {
  return std::accumulate(episodes.begin(), episodes.end(), std::size_t{0},
                         [](std::size_t acc, const Episode& e) { return acc + e.steps.size(); });
}

namespace {

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::string where(const Episode& e, std::size_t t) {
  return "episode " + std::to_string(e.id) + ", t=" + std::to_string(t);
}

}  // namespace

void validate(const TrajectorySet& set) {
  if (set.episodes.empty()) throw InputError("trajectory set has no episodes");
  if (set.state_dim == 0) throw InputError("state dimension must be positive");
  if (set.action_dim == 0) throw InputError("action dimension must be positive");

  std::set<int> ids;
  for (const auto& ep : set.episodes) {
    if (ep.id < 0) throw InputError("negative episode id " + std::to_string(ep.id));
    if (!ids.insert(ep.id).second) throw InputError("duplicate episode id " + std::to_string(ep.id));
    if (ep.steps.size() < 2) {
      throw InputError("episode " + std::to_string(ep.id) + " has " + std::to_string(ep.steps.size()) +
                       " step(s); at least 2 are required");
    }
    for (std::size_t t = 0; t < ep.steps.size(); ++t) {
      const auto& s = ep.steps[t];
      if (s.state.size() != set.state_dim) {
        throw InputError("state dimension mismatch at " + where(ep, t) + ": expected " +
                         std::to_string(set.state_dim) + ", found " + std::to_string(s.state.size()));
      }
      if (s.action.size() != set.action_dim) {
        throw InputError("action dimension mismatch at " + where(ep, t) + ": expected " +
                         std::to_string(set.action_dim) + ", found " + std::to_string(s.action.size()));
      }
      if (!all_finite(s.state) || !all_finite(s.action)) throw InputError("non-finite value at " + where(ep, t));
    }
  }
}

TrajectorySet make_trajectory_set(std::vector<Episode> episodes, std::map<std::string, std::string> meta) {
  TrajectorySet set;
  if (!episodes.empty() && !episodes.front().steps.empty()) {
    set.state_dim = episodes.front().steps.front().state.size();
    set.action_dim = episodes.front().steps.front().action.size();
  }
  set.episodes = std::move(episodes);
  set.meta = std::move(meta);
  validate(set);
  return set;
}

namespace {

[[noreturn]] void fail_at(std::size_t line, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ": " + msg);
}

std::vector<double> read_vector(const json& rec, const char* key, std::size_t line) {
  auto it = rec.find(key);
  if (it == rec.end() || !it->is_array()) fail_at(line, std::string("missing array field '") + key + "'");
  std::vector<double> out;
  out.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_number()) fail_at(line, std::string("non-numeric entry in '") + key + "'");
    double x = v.get<double>();
    if (!std::isfinite(x)) fail_at(line, std::string("non-finite value in '") + key + "'");
    out.push_back(x);
  }
  return out;
}

long long read_int(const json& rec, const char* key, std::size_t line) {
  auto it = rec.find(key);
  if (it == rec.end() || !it->is_number_integer()) fail_at(line, std::string("missing integer field '") + key + "'");
  return it->get<long long>();
}

}  // namespace

TrajectorySet parse_trajectories(std::istream& in) {
  TrajectorySet set;
  std::set<int> seen;
  bool have_dims = false;
  bool any_record = false;
  std::string text;
  std::size_t line = 0;

  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;

    json rec;
    try {
      rec = json::parse(text);
    } catch (const json::parse_error& e) {
      fail_at(line, std::string("malformed record: ") + e.what());
    }
    if (!rec.is_object()) fail_at(line, "record is not an object");

    if (auto m = rec.find("meta"); m != rec.end()) {
      if (any_record) fail_at(line, "meta record must precede step records");
      if (!m->is_object()) fail_at(line, "meta must be an object");
      for (const auto& [k, v] : m->items()) {
        if (!v.is_string()) fail_at(line, "meta value for '" + k + "' is not a string");
        set.meta[k] = v.get<std::string>();
      }
      continue;
    }
    any_record = true;

    const long long ep_id = read_int(rec, "episode", line);
    const long long t = read_int(rec, "t", line);
    if (ep_id < 0 || ep_id > std::numeric_limits<int>::max()) fail_at(line, "episode id out of range");
    Step step{read_vector(rec, "state", line), read_vector(rec, "action", line)};

    if (!have_dims) {
      if (step.state.empty()) fail_at(line, "empty state vector");
      if (step.action.empty()) fail_at(line, "empty action vector");
      set.state_dim = step.state.size();
      set.action_dim = step.action.size();
      have_dims = true;
    }
    if (step.state.size() != set.state_dim) {
      fail_at(line, "state dimension mismatch: expected " + std::to_string(set.state_dim) + ", found " +
                        std::to_string(step.state.size()));
    }
    if (step.action.size() != set.action_dim) {
      fail_at(line, "action dimension mismatch: expected " + std::to_string(set.action_dim) + ", found " +
                        std::to_string(step.action.size()));
    }

    const int id = static_cast<int>(ep_id);
    if (set.episodes.empty() || set.episodes.back().id != id) {
      if (!seen.insert(id).second) fail_at(line, "episode " + std::to_string(id) + " records are not contiguous");
      set.episodes.push_back(Episode{id, {}});
    }
    auto& ep = set.episodes.back();
    if (t != static_cast<long long>(ep.steps.size())) {
      fail_at(line, "episode " + std::to_string(id) + ": expected t=" + std::to_string(ep.steps.size()) +
                        ", found t=" + std::to_string(t));
    }
    ep.steps.push_back(std::move(step));
  }

  validate(set);
  return set;
}

TrajectorySet load_trajectories(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open trajectory file '" + path.string() + "'");
  return parse_trajectories(in);
}

void write_trajectories(const TrajectorySet& set, std::ostream& out) {
  validate(set);
  if (!set.meta.empty()) {
    json meta = json::object();
    for (const auto& [k, v] : set.meta) meta[k] = v;
    out << json{{"meta", meta}}.dump() << '\n';
  }
  for (const auto& ep : set.episodes) {
    for (std::size_t t = 0; t < ep.steps.size(); ++t) {
      nlohmann::ordered_json rec;
      rec["episode"] = ep.id;
      rec["t"] = t;
      rec["state"] = ep.steps[t].state;
      rec["action"] = ep.steps[t].action;
      out << rec.dump() << '\n';
    }
  }
}

void save_trajectories(const TrajectorySet& set, const std::filesystem::path& path) {
  std::ostringstream buf;
  write_trajectories(set, buf);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write trajectory file '" + path.string() + "'");
  out << buf.str();
  if (!out) throw InputError("write failed for '" + path.string() + "'");
}

}  // namespace phaseid
