#include "phaseid/transitions.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "phaseid/error.hpp"
#include "phaseid/svg.hpp"

namespace phaseid {

std::string to_string(LabelSeed s) { return s == LabelSeed::FirstStep ? "first-step" : "highest-weight"; }

LabelSeed parse_label_seed(const std::string& s) {
  if (s == "first-step") return LabelSeed::FirstStep;
  if (s == "highest-weight") return LabelSeed::HighestWeight;
  throw InputError("unknown label seed '" + s + "' (expected first-step|highest-weight)");
}

namespace {

int heaviest_unlabeled(const TransitionCounts& tc, const Relabeling& perm) {
  int best = -1;
  for (int i = 0; i < tc.K(); ++i) {
    if (perm[static_cast<std::size_t>(i)] >= 0) continue;
    if (best < 0 || tc.weights[static_cast<std::size_t>(i)] > tc.weights[static_cast<std::size_t>(best)]) best = i;
  }
  return best;
}

}  // namespace

std::optional<int> dominant_destination(const TransitionCounts& tc, int i) {
  std::optional<int> best;
  long long best_count = 0;
  for (int j = 0; j < tc.K(); ++j) {
    if (j == i) continue;
    if (tc.counts(i, j) > best_count) {
      best_count = tc.counts(i, j);
      best = j;
    }
  }
  return best;
}

int seed_cluster(LabelSeed seed, const TransitionCounts& tc, int first_row_label) {
  if (seed == LabelSeed::FirstStep) return first_row_label;
  int best = 0;
  for (int i = 1; i < tc.K(); ++i) {
    if (tc.weights[static_cast<std::size_t>(i)] > tc.weights[static_cast<std::size_t>(best)]) best = i;
  }
  return best;
}

Relabeling relabel_sequential(const TransitionCounts& tc, int seed) {
  const int K = tc.K();
  if (K < 1) throw std::invalid_argument("relabel: empty count matrix");
  if (seed < 0 || seed >= K) throw std::invalid_argument("relabel: seed cluster out of range");
  Relabeling perm(static_cast<std::size_t>(K), -1);
  int next = 0;
  int cur = seed;
  perm[static_cast<std::size_t>(cur)] = next++;
  while (next < K) {
    const auto dest = dominant_destination(tc, cur);
    if (dest && perm[static_cast<std::size_t>(*dest)] < 0) {
      cur = *dest;
    } else {
      cur = heaviest_unlabeled(tc, perm);
    }
    perm[static_cast<std::size_t>(cur)] = next++;
  }
  return perm;
}

TransitionCounts permute(const TransitionCounts& tc, const Relabeling& perm) {
  const int K = tc.K();
  if (static_cast<int>(perm.size()) != K) throw std::invalid_argument("permutation size mismatch");
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> out(K, K);
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) out(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) = tc.counts(i, j);
  }
  return from_counts(std::move(out));
}

std::vector<int> apply_relabeling(const std::vector<int>& labels, const Relabeling& perm) {
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = perm.at(static_cast<std::size_t>(labels[i]));
  return out;
}

DominantCycle dominant_cycle(const TransitionCounts& tc) {
  DominantCycle cyc;
  if (tc.K() < 1 || !dominant_destination(tc, 0)) return cyc;
  std::vector<bool> seen(static_cast<std::size_t>(tc.K()), false);
  int cur = 0;
  cyc.path.push_back(0);
  seen[0] = true;
  while (true) {
    const auto dest = dominant_destination(tc, cur);
    if (!dest) break;
    if (*dest == 0) {
      cyc.closed = true;
      break;
    }
    if (seen[static_cast<std::size_t>(*dest)]) {
      cyc.repeat_at = *dest;
      break;
    }
    seen[static_cast<std::size_t>(*dest)] = true;
    cyc.path.push_back(*dest);
    cur = *dest;
  }
  return cyc;
}

TransitionModel build_transition_model(const TransitionCounts& tc, int seed) {
  TransitionModel m;
  m.relabeling = relabel_sequential(tc, seed);
  m.counts = permute(tc, m.relabeling);
  const int K = m.counts.K();
  m.probabilities = Eigen::MatrixXd::Zero(K, K);
  for (int i = 0; i < K; ++i) {
    const auto ni = m.counts.row_totals[static_cast<std::size_t>(i)];
    if (ni == 0) continue;
    for (int j = 0; j < K; ++j) {
      m.probabilities(i, j) = static_cast<double>(m.counts.counts(i, j)) / static_cast<double>(ni);
    }
  }
  m.cycle = dominant_cycle(m.counts);
  return m;
}

std::vector<std::pair<int, int>> cycle_cells(const DominantCycle& cycle) {
  std::vector<std::pair<int, int>> cells;
  for (std::size_t k = 0; k + 1 < cycle.path.size(); ++k) cells.emplace_back(cycle.path[k], cycle.path[k + 1]);
  if (cycle.closed && !cycle.path.empty()) cells.emplace_back(cycle.path.back(), 0);
  return cells;
}

std::string render_transition_matrix(const TransitionModel& model) {
  const int K = model.counts.K();
  constexpr double cell = 64.0;
  constexpr double margin = 48.0;
  const double side = margin + cell * K + 16.0;
  svg::Document doc(side, side + 8.0);
  doc.text(margin + cell * K / 2.0, 16.0, "destination phase", 12.0);
  doc.text(14.0, margin + cell * K / 2.0, "source phase", 12.0, "middle", "#000000",
           "transform=\"rotate(-90 14.00 " + svg::num(margin + cell * K / 2.0) + ")\"");
  for (int k = 0; k < K; ++k) {
    doc.text(margin + cell * (k + 0.5), margin - 8.0, std::to_string(k), 11.0);
    doc.text(margin - 8.0, margin + cell * (k + 0.5) + 4.0, std::to_string(k), 11.0, "end");
  }
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      const double p = model.probabilities(i, j);
      const double x = margin + cell * j;
      const double y = margin + cell * i;
      doc.rect(x, y, cell, cell, svg::heat(p), "#ffffff", 1.0,
               "class=\"cell\" data-row=\"" + std::to_string(i) + "\" data-col=\"" + std::to_string(j) + "\"");
      char label[64];
      std::snprintf(label, sizeof label, "%.2f (%lld)", p, model.counts.counts(i, j));
      doc.text(x + cell / 2.0, y + cell / 2.0 + 4.0, label, 10.0, "middle", p > 0.6 ? "#ffffff" : "#000000");
    }
  }
  for (const auto& [i, j] : cycle_cells(model.cycle)) {
    doc.rect(margin + cell * j + 1.5, margin + cell * i + 1.5, cell - 3.0, cell - 3.0, "none", "#d62728", 3.0,
             "class=\"cycle\"");
  }
  return doc.str();
}

void write_transition_table(const TransitionModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write transition table '" + path.string() + "'");
  out << "source,destination,count,probability\n";
  char buf[48];
  for (int i = 0; i < model.counts.K(); ++i) {
    for (int j = 0; j < model.counts.K(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", model.probabilities(i, j));
      out << i << ',' << j << ',' << model.counts.counts(i, j) << ',' << buf << '\n';
    }
  }
}

}  // namespace phaseid
