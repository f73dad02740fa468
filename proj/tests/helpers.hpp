#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "phaseid/embedding.hpp"
#include "phaseid/trajectory.hpp"

namespace testutil {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("phaseid-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

/// Embedding with explicit points and successor links; centroid is the mean.
inline phaseid::Embedding2D embedding(const phaseid::Points2& pts, phaseid::SuccessorMap succ) {
  phaseid::Embedding2D e;
  e.points = pts;
  e.successor = std::move(succ);
  e.step_index.resize(static_cast<std::size_t>(pts.rows()));
  for (std::size_t i = 0; i < e.step_index.size(); ++i) e.step_index[i] = {0, i};
  e.centroid = pts.colwise().mean().transpose();
  return e;
}

/// Closed chain 0 -> 1 -> ... -> n-1 -> 0.
inline phaseid::SuccessorMap cyclic(std::size_t n) {
  phaseid::SuccessorMap s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = (i + 1) % n;
  return s;
}

/// Open chain 0 -> 1 -> ... -> n-1.
inline phaseid::SuccessorMap chain(std::size_t n) {
  phaseid::SuccessorMap s(n);
  for (std::size_t i = 0; i + 1 < n; ++i) s[i] = i + 1;
  return s;
}

inline phaseid::Points2 polygon(int K, double radius = 1.0, double phase = 0.0) {
  phaseid::Points2 p(K, 2);
  for (int k = 0; k < K; ++k) {
    const double th = phase + 2.0 * std::numbers::pi * k / K;
    p(k, 0) = radius * std::cos(th);
    p(k, 1) = radius * std::sin(th);
  }
  return p;
}

inline phaseid::Points2 random_points(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  phaseid::Points2 p(static_cast<Eigen::Index>(n), 2);
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    p(i, 0) = g(rng);
    p(i, 1) = g(rng);
  }
  return p;
}

}  // namespace testutil
