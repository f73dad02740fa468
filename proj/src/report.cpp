#include "phaseid/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "phaseid/error.hpp"

namespace phaseid {

using nlohmann::ordered_json;

namespace {

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json matrix_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json counts_json(const TransitionCounts& tc) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < tc.K(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < tc.K(); ++j) row.push_back(tc.counts(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ordered_json make_report(const PipelineResult& r, const PipelineConfig& cfg, const ReportContext& ctx) {
  ordered_json j;
  j["input"] = ctx.input;
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : ctx.meta) meta[k] = v;
  j["meta"] = std::move(meta);

  j["config"] = {
      {"method", to_string(ctx.method)},
      {"composition", to_string(cfg.features.composition)},
      {"scaling", to_string(cfg.features.scaling)},
      {"zscore", cfg.features.zscore},
      {"embedder", cfg.embedding_file ? "import" : "pca"},
      {"embedding_file", cfg.embedding_file ? ordered_json(cfg.embedding_file->string()) : ordered_json(nullptr)},
      {"rule", to_string(cfg.rule)},
      {"k_min", cfg.K_min},
      {"k_max", cfg.K_max},
      {"label_seed", to_string(cfg.label_seed)},
      {"silhouette_space", cfg.silhouette_space == SilhouetteSpace::Features ? "features" : "embedding"},
  };
  j["data"] = {
      {"episodes", ctx.episodes},
      {"steps", ctx.steps},
      {"rows", r.features.size()},
      {"feature_dim", r.features.dim()},
  };

  ordered_json curve = ordered_json::array();
  for (std::size_t i = 0; i < r.curve.K_values.size(); ++i) {
    curve.push_back({{"K", r.curve.K_values[i]},
                     {"H_c", r.curve.H_c[i]},
                     {"C_ext", r.curve.C_ext[i]},
                     {"C_ext_norm", r.curve.C_ext_norm[i]},
                     {"K_norm", r.curve.K_norm[i]},
                     {"objective", r.curve.objective[i]}});
  }
  j["selection"] = {
      {"K_star", r.K_star},
      {"K_star_argmin_hc", r.curve.K_star_baseline},
      {"K_star_elbow_cext", r.curve.K_star_proposed},
      {"curve", std::move(curve)},
  };

  const auto& m = r.metrics;
  j["metrics"] = {
      {"K", m.K},
      {"silhouette", m.silhouette},
      {"R", optional_number(m.R)},
      {"C_ext", m.C_ext},
      {"H_c", m.H_c},
      {"n_transitions_external", m.n_transitions_external},
      {"n_transitions_self", m.n_transitions_self},
      {"R_skipped_zero_norm", m.R_skipped_zero_norm},
  };
  if (ctx.ground_truth_ari) j["metrics"]["ground_truth_ari"] = *ctx.ground_truth_ari;

  const auto& tm = r.transitions;
  ordered_json centroids = ordered_json::array();
  for (int k = 0; k < r.assignment.K; ++k) {
    centroids.push_back({r.assignment.cluster_centroids(k, 0), r.assignment.cluster_centroids(k, 1)});
  }
  j["phases"] = {
      {"sizes", r.assignment.cluster_sizes},
      {"centroids", std::move(centroids)},
  };
  j["transitions"] = {
      {"relabeling", tm.relabeling},
      {"counts", counts_json(tm.counts)},
      {"probabilities", matrix_json(tm.probabilities)},
      {"dominant_cycle",
       {{"path", tm.cycle.path},
        {"length", tm.cycle.path.size()},
        {"closed", tm.cycle.closed},
        {"repeat_at", tm.cycle.repeat_at ? ordered_json(*tm.cycle.repeat_at) : ordered_json(nullptr)}}},
  };
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw InputError("write failed for '" + path.string() + "'");
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

std::string format_pm(const Summary& s, int decimals) {
  if (s.count == 0) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f ± %.*f", decimals, s.mean, decimals, s.std);
  return buf;
}

void RunStats::add(const PipelineResult& r, std::optional<double> ari_value) {
  K.push_back(r.K_star);
  silhouette.push_back(r.metrics.silhouette);
  if (r.metrics.R) R.push_back(*r.metrics.R);
  C_ext.push_back(r.metrics.C_ext);
  if (ari_value) ari.push_back(*ari_value);
}

}  // namespace phaseid
