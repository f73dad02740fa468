#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "phaseid/clustering.hpp"
#include "phaseid/embedding.hpp"
#include "phaseid/features.hpp"

namespace phaseid {

/// Phase-to-phase transition counts over successor links.
struct TransitionCounts {
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> counts;  // K x K, N_ij
  std::vector<long long> row_totals;                                // N_i (outgoing)
  std::vector<double> weights;                                      // w_i = N_i / sum N_i

  int K() const { return static_cast<int>(counts.rows()); }
  long long total() const;
};

/// Counts label(t) -> label(successor(t)). Throws DegenerateError when the
/// successor map holds no link at all.
TransitionCounts count_transitions(const std::vector<int>& labels, int K, const SuccessorMap& successor);

/// Rebuilds row totals and weights from a count matrix.
TransitionCounts from_counts(Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> counts);

/// H_c in nats: -sum_i (N_i/N) sum_j (N_ij/N_i) ln(N_ij/N_i).
double conditional_entropy(const TransitionCounts& tc);

/// C_ext = sum_i w_i (1 - P_ii) max_{j != i} P_ij. Rows without outgoing
/// transitions contribute 0; K = 1 gives 0.
double external_concentration(const TransitionCounts& tc);

enum class SelectionRule { ArgminHc, ElbowCext };

std::string to_string(SelectionRule r);
SelectionRule parse_rule(const std::string& s);

struct SelectionCurve {
  std::vector<int> K_values;
  std::vector<double> H_c;
  std::vector<double> C_ext;
  std::vector<double> C_ext_norm;  // MinMax over the scanned range
  std::vector<double> K_norm;
  std::vector<double> objective;   // C_ext_norm - K_norm
  int K_star_baseline = 0;
  int K_star_proposed = 0;

  int K_star(SelectionRule rule) const { return rule == SelectionRule::ArgminHc ? K_star_baseline : K_star_proposed; }
};

/// MinMax normalisation to [0, 1]; a constant input maps to all zeros.
std::vector<double> minmax_normalize(const std::vector<double>& v);

/// Elbow objective from a per-K C_ext series. Returns the index of the
/// winning K; ties go to the smaller K.
std::size_t elbow_argmax(const std::vector<int>& K_values, const std::vector<double>& C_ext,
                         std::vector<double>* C_norm = nullptr, std::vector<double>* K_norm = nullptr,
                         std::vector<double>* objective = nullptr);

/// Scans K in [K_min, min(K_max, N)], cutting one dendrogram per K, and
/// evaluates both selection rules. Throws std::invalid_argument when the
/// truncated range holds fewer than one K or K_min < 2.
SelectionCurve select_K(const Dendrogram& dendrogram, const SuccessorMap& successor, int K_min = 2, int K_max = 20);

}  // namespace phaseid
