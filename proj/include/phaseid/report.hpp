#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phaseid/pipeline.hpp"

namespace phaseid {

struct ReportContext {
  std::string input;
  Method method = Method::Proposed;
  std::map<std::string, std::string> meta;
  std::size_t episodes = 0;
  std::size_t steps = 0;
  std::optional<double> ground_truth_ari;
};

/// Run report with stable key order. Doubles print with round-trip precision.
nlohmann::ordered_json make_report(const PipelineResult& result, const PipelineConfig& cfg, const ReportContext& ctx);

void write_text(const std::filesystem::path& path, const std::string& content);

struct Summary {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single value
  std::size_t count = 0;
};

Summary summarize(const std::vector<double>& values);
std::string format_pm(const Summary& s, int decimals = 3);

/// Per-run numbers gathered across seeds.
struct RunStats {
  std::vector<double> K;
  std::vector<double> silhouette;
  std::vector<double> R;  // runs with an absent R are left out
  std::vector<double> C_ext;
  std::vector<double> ari;

  void add(const PipelineResult& r, std::optional<double> ari_value = std::nullopt);
};

}  // namespace phaseid
