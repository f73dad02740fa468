#include "phaseid/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "phaseid/error.hpp"

namespace phaseid {

namespace {

void zscore_column(Eigen::MatrixXd& m, Eigen::Index c) {
  const Eigen::Index n = m.rows();
  auto col = m.col(c);
  if (n < 2) {
    col.setZero();
    return;
  }
  double mean = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) mean += col(r);
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) {
    const double dev = col(r) - mean;
    ss += dev * dev;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  // A column of identical values can still pick up rounding noise in the
  // mean, so constancy is judged relative to the column's magnitude.
  const double scale = col.cwiseAbs().maxCoeff();
  if (!(sd > 1e-12 * scale)) {
    col.setZero();
    return;
  }
  for (Eigen::Index r = 0; r < n; ++r) col(r) = (col(r) - mean) / sd;
}

struct Block {
  const char* prefix;
  std::size_t width;
};

}  // namespace

void zscore_columns(Eigen::MatrixXd& m, Backend backend) {
  const Eigen::Index cols = m.cols();
  if (backend == Backend::Serial) {
    for (Eigen::Index c = 0; c < cols; ++c) zscore_column(m, c);
    return;
  }
  PHASEID_OMP(parallel for schedule(static))
  for (Eigen::Index c = 0; c < cols; ++c) zscore_column(m, c);
}

FeatureMatrix compose_features(const TrajectorySet& set, const FeatureConfig& cfg, Backend backend) {
  validate(set);
  const std::size_t sd = set.state_dim;
  const std::size_t ad = set.action_dim;

  std::vector<Block> blocks;
  if (cfg.composition == Composition::StateOnly) {
    blocks = {{"s", sd}};
  } else {
    blocks = {{"s", sd}, {"a", ad}, {"sn", sd}, {"an", ad}};
  }
  std::size_t d = 0;
  for (const auto& b : blocks) d += b.width;

  std::size_t n = 0;
  for (const auto& ep : set.episodes) {
    if (cfg.composition == Composition::Augmented && ep.steps.size() < 2) {
      throw InputError("episode " + std::to_string(ep.id) + " is too short to form a transition tuple");
    }
    n += cfg.composition == Composition::Augmented ? ep.steps.size() - 1 : ep.steps.size();
  }

  FeatureMatrix fm;
  fm.rows.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  fm.step_index.reserve(n);
  fm.successor.reserve(n);
  for (const auto& b : blocks) {
    for (std::size_t k = 0; k < b.width; ++k) fm.column_names.push_back(b.prefix + std::to_string(k));
  }

  Eigen::Index row = 0;
  for (const auto& ep : set.episodes) {
    const std::size_t rows_here = cfg.composition == Composition::Augmented ? ep.steps.size() - 1 : ep.steps.size();
    for (std::size_t t = 0; t < rows_here; ++t) {
      Eigen::Index col = 0;
      auto put = [&](const std::vector<double>& v) {
        for (double x : v) fm.rows(row, col++) = x;
      };
      put(ep.steps[t].state);
      if (cfg.composition == Composition::Augmented) {
        put(ep.steps[t].action);
        put(ep.steps[t + 1].state);
        put(ep.steps[t + 1].action);
      }
      fm.step_index.push_back({ep.id, t});
      if (t + 1 < rows_here) {
        fm.successor.emplace_back(static_cast<std::size_t>(row) + 1);
      } else {
        fm.successor.emplace_back(std::nullopt);
      }
      ++row;
    }
  }

  if (cfg.zscore) zscore_columns(fm.rows, backend);

  switch (cfg.scaling) {
    case Scaling::None:
      break;
    case Scaling::InvSqrtTotalDim:
      fm.rows *= 1.0 / std::sqrt(static_cast<double>(d));
      break;
    case Scaling::InvSqrtBlockDim: {
      Eigen::Index start = 0;
      for (const auto& b : blocks) {
        const auto w = static_cast<Eigen::Index>(b.width);
        fm.rows.middleCols(start, w) *= 1.0 / std::sqrt(static_cast<double>(b.width));
        start += w;
      }
      break;
    }
  }
  return fm;
}

void write_feature_dump(const FeatureMatrix& fm, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write feature dump '" + path.string() + "'");
  out << "# " << fm.size() << " rows x " << fm.dim()
      << " features; embedding files must list one \"x y\" line per row in this order\n";
  out << "episode,t";
  for (const auto& name : fm.column_names) out << ',' << name;
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < fm.size(); ++i) {
    out << fm.step_index[i].episode << ',' << fm.step_index[i].t;
    for (Eigen::Index c = 0; c < fm.rows.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", fm.rows(static_cast<Eigen::Index>(i), c));
      out << ',' << buf;
    }
    out << '\n';
  }
}

std::string to_string(Composition c) { return c == Composition::StateOnly ? "state" : "augmented"; }

std::string to_string(Scaling s) {
  switch (s) {
    case Scaling::None: return "none";
    case Scaling::InvSqrtTotalDim: return "total";
    case Scaling::InvSqrtBlockDim: return "block";
  }
  return "none";
}

Composition parse_composition(const std::string& s) {
  if (s == "state") return Composition::StateOnly;
  if (s == "augmented" || s == "all") return Composition::Augmented;
  throw InputError("unknown feature composition '" + s + "' (expected state|augmented)");
}

Scaling parse_scaling(const std::string& s) {
  if (s == "none") return Scaling::None;
  if (s == "total") return Scaling::InvSqrtTotalDim;
  if (s == "block") return Scaling::InvSqrtBlockDim;
  throw InputError("unknown scaling '" + s + "' (expected none|total|block)");
}

}  // namespace phaseid
