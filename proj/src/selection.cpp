#include "phaseid/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "phaseid/error.hpp"
#include "phaseid/parallel.hpp"

namespace phaseid {

long long TransitionCounts::total() const {
  return std::accumulate(row_totals.begin(), row_totals.end(), 0LL);
}

TransitionCounts from_counts(Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> counts) {
  if (counts.rows() != counts.cols()) throw std::invalid_argument("transition counts must be square");
  TransitionCounts tc;
  const auto K = counts.rows();
  tc.row_totals.assign(static_cast<std::size_t>(K), 0);
  for (Eigen::Index i = 0; i < K; ++i) {
    for (Eigen::Index j = 0; j < K; ++j) {
      if (counts(i, j) < 0) throw std::invalid_argument("negative transition count");
      tc.row_totals[static_cast<std::size_t>(i)] += counts(i, j);
    }
  }
  const long long total = std::accumulate(tc.row_totals.begin(), tc.row_totals.end(), 0LL);
  tc.weights.assign(static_cast<std::size_t>(K), 0.0);
  if (total > 0) {
    for (std::size_t i = 0; i < tc.weights.size(); ++i) {
      tc.weights[i] = static_cast<double>(tc.row_totals[i]) / static_cast<double>(total);
    }
  }
  tc.counts = std::move(counts);
  return tc;
}

TransitionCounts count_transitions(const std::vector<int>& labels, int K, const SuccessorMap& successor) {
  if (labels.size() != successor.size()) throw std::invalid_argument("labels and successor map differ in length");
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> counts =
      Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>::Zero(K, K);
  bool any = false;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    if (!successor[t]) continue;
    any = true;
    ++counts(labels[t], labels[*successor[t]]);
  }
  if (!any) throw DegenerateError("no successor links: transitions cannot be counted");
  return from_counts(std::move(counts));
}

double conditional_entropy(const TransitionCounts& tc) {
  const double total = static_cast<double>(tc.total());
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (int i = 0; i < tc.K(); ++i) {
    const double ni = static_cast<double>(tc.row_totals[static_cast<std::size_t>(i)]);
    if (ni <= 0.0) continue;
    double row = 0.0;
    for (int j = 0; j < tc.K(); ++j) {
      const auto nij = tc.counts(i, j);
      if (nij == 0) continue;
      const double p = static_cast<double>(nij) / ni;
      row -= p * std::log(p);
    }
    h += (ni / total) * row;
  }
  return h;
}

double external_concentration(const TransitionCounts& tc) {
  double c = 0.0;
  for (int i = 0; i < tc.K(); ++i) {
    const double ni = static_cast<double>(tc.row_totals[static_cast<std::size_t>(i)]);
    if (ni <= 0.0) continue;
    long long best = 0;
    for (int j = 0; j < tc.K(); ++j) {
      if (j != i) best = std::max(best, tc.counts(i, j));
    }
    const double p_self = static_cast<double>(tc.counts(i, i)) / ni;
    c += tc.weights[static_cast<std::size_t>(i)] * (1.0 - p_self) * (static_cast<double>(best) / ni);
  }
  return c;
}

std::string to_string(SelectionRule r) { return r == SelectionRule::ArgminHc ? "argmin-hc" : "elbow-cext"; }

SelectionRule parse_rule(const std::string& s) {
  if (s == "argmin-hc" || s == "hc") return SelectionRule::ArgminHc;
  if (s == "elbow-cext" || s == "cext") return SelectionRule::ElbowCext;
  throw InputError("unknown selection rule '" + s + "' (expected argmin-hc|elbow-cext)");
}

std::vector<double> minmax_normalize(const std::vector<double>& v) {
  std::vector<double> out(v.size(), 0.0);
  if (v.empty()) return out;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - *lo) / range;
  return out;
}

std::size_t elbow_argmax(const std::vector<int>& K_values, const std::vector<double>& C_ext,
                         std::vector<double>* C_norm, std::vector<double>* K_norm, std::vector<double>* objective) {
  if (K_values.empty() || K_values.size() != C_ext.size()) throw std::invalid_argument("elbow: empty or mismatched series");
  const std::vector<double> cn = minmax_normalize(C_ext);
  std::vector<double> kd(K_values.begin(), K_values.end());
  const std::vector<double> kn = minmax_normalize(kd);
  std::vector<double> obj(cn.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < cn.size(); ++i) {
    obj[i] = cn[i] - kn[i];
    if (obj[i] > obj[best]) best = i;
  }
  if (C_norm) *C_norm = cn;
  if (K_norm) *K_norm = kn;
  if (objective) *objective = obj;
  return best;
}

SelectionCurve select_K(const Dendrogram& dendrogram, const SuccessorMap& successor, int K_min, int K_max) {
  if (K_min < 2) throw std::invalid_argument("select_K: K_min must be at least 2");
  if (K_max < 2) throw std::invalid_argument("select_K: K_max must be at least 2");
  if (successor.size() != dendrogram.leaf_count) throw std::invalid_argument("select_K: successor map does not match dendrogram");
  const int hi = std::min<long long>(K_max, static_cast<long long>(dendrogram.leaf_count));
  if (hi < K_min) {
    throw std::invalid_argument("select_K: empty K range " + std::to_string(K_min) + ".." + std::to_string(hi));
  }

  if (std::none_of(successor.begin(), successor.end(), [](const auto& s) { return s.has_value(); })) {
    throw DegenerateError("no successor links: transitions cannot be counted");
  }

  SelectionCurve sc;
  const int count = hi - K_min + 1;
  sc.K_values.resize(static_cast<std::size_t>(count));
  sc.H_c.resize(static_cast<std::size_t>(count));
  sc.C_ext.resize(static_cast<std::size_t>(count));
  std::iota(sc.K_values.begin(), sc.K_values.end(), K_min);

  // Per-K cuts share only the read-only dendrogram.
  PHASEID_OMP(parallel for schedule(dynamic, 1))
  for (int idx = 0; idx < count; ++idx) {
    const int K = K_min + idx;
    const auto tc = count_transitions(cut_labels(dendrogram, K), K, successor);
    sc.H_c[static_cast<std::size_t>(idx)] = conditional_entropy(tc);
    sc.C_ext[static_cast<std::size_t>(idx)] = external_concentration(tc);
  }

  std::size_t argmin = 0;
  for (std::size_t i = 1; i < sc.H_c.size(); ++i) {
    if (sc.H_c[i] < sc.H_c[argmin]) argmin = i;
  }
  sc.K_star_baseline = sc.K_values[argmin];
  const std::size_t elbow = elbow_argmax(sc.K_values, sc.C_ext, &sc.C_ext_norm, &sc.K_norm, &sc.objective);
  sc.K_star_proposed = sc.K_values[elbow];
  return sc;
}

}  // namespace phaseid
