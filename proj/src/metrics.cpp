#include "phaseid/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace phaseid {

namespace {

double sample_score(const RowMatrix& x, const std::vector<int>& labels, const std::vector<std::size_t>& sizes,
                    std::vector<double>& sums, std::size_t i) {
  std::fill(sums.begin(), sums.end(), 0.0);
  const auto n = static_cast<std::size_t>(x.rows());
  const auto d = x.cols();
  const auto ri = static_cast<Eigen::Index>(i);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const auto rj = static_cast<Eigen::Index>(j);
    double ss = 0.0;
    for (Eigen::Index c = 0; c < d; ++c) {
      const double diff = x(ri, c) - x(rj, c);
      ss += diff * diff;
    }
    sums[static_cast<std::size_t>(labels[j])] += std::sqrt(ss);
  }
  const auto own = static_cast<std::size_t>(labels[i]);
  if (sizes[own] <= 1) return 0.0;
  const double a = sums[own] / static_cast<double>(sizes[own] - 1);
  double b = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < sums.size(); ++c) {
    if (c == own || sizes[c] == 0) continue;
    b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
  }
  const double denom = std::max(a, b);
  return denom > 0.0 ? (b - a) / denom : 0.0;
}

}  // namespace

std::vector<double> silhouette_samples(const RowMatrix& points, const std::vector<int>& labels, int K, Backend backend) {
  if (K < 2) throw std::invalid_argument("silhouette needs K >= 2");
  if (labels.size() != static_cast<std::size_t>(points.rows())) {
    throw std::invalid_argument("silhouette: label count does not match point count");
  }
  std::vector<std::size_t> sizes(static_cast<std::size_t>(K), 0);
  for (int l : labels) {
    if (l < 0 || l >= K) throw std::invalid_argument("silhouette: label out of range");
    ++sizes[static_cast<std::size_t>(l)];
  }
  if (std::count_if(sizes.begin(), sizes.end(), [](std::size_t s) { return s > 0; }) < 2) {
    throw std::invalid_argument("silhouette needs at least two non-empty clusters");
  }

  const auto n = static_cast<std::ptrdiff_t>(labels.size());
  std::vector<double> scores(labels.size(), 0.0);
  if (backend == Backend::Serial) {
    std::vector<double> sums(static_cast<std::size_t>(K));
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      scores[static_cast<std::size_t>(i)] = sample_score(points, labels, sizes, sums, static_cast<std::size_t>(i));
    }
    return scores;
  }
  PHASEID_OMP(parallel)
  {
    std::vector<double> sums(static_cast<std::size_t>(K));
    PHASEID_OMP(for schedule(static))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      scores[static_cast<std::size_t>(i)] = sample_score(points, labels, sizes, sums, static_cast<std::size_t>(i));
    }
  }
  return scores;
}

double silhouette(const RowMatrix& points, const std::vector<int>& labels, int K, Backend backend) {
  const auto scores = silhouette_samples(points, labels, K, backend);
  double acc = 0.0;
  for (double s : scores) acc += s;
  return acc / static_cast<double>(scores.size());
}

double silhouette(const Embedding2D& emb, const PhaseAssignment& assign, Backend backend) {
  const RowMatrix pts = emb.points;
  return silhouette(pts, assign.labels, assign.K, backend);
}

RotationalRegularity rotational_regularity(const Embedding2D& emb, const std::vector<int>& labels) {
  if (labels.size() != emb.size()) throw std::invalid_argument("rotational regularity: label count mismatch");
  RotationalRegularity out;
  double acc = 0.0;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    if (!emb.successor[t]) continue;
    const std::size_t u = *emb.successor[t];
    if (labels[t] == labels[u]) continue;
    ++out.external_transitions;
    const auto ti = static_cast<Eigen::Index>(t);
    const auto ui = static_cast<Eigen::Index>(u);
    const double rx = emb.points(ti, 0) - emb.centroid(0);
    const double ry = emb.points(ti, 1) - emb.centroid(1);
    const double vx = emb.points(ui, 0) - emb.points(ti, 0);
    const double vy = emb.points(ui, 1) - emb.points(ti, 1);
    const double rn = std::hypot(rx, ry);
    const double vn = std::hypot(vx, vy);
    if (rn == 0.0 || vn == 0.0) {
      ++out.skipped_zero_norm;
      continue;
    }
    acc += (rx * vy - ry * vx) / (rn * vn);
    ++out.used;
  }
  if (out.used > 0) {
    out.signed_mean = acc / static_cast<double>(out.used);
    out.value = std::abs(out.signed_mean);
  }
  return out;
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("ARI: labelings differ in length");
  const double n = static_cast<double>(a.size());
  std::map<std::pair<int, int>, long long> joint;
  std::map<int, long long> ca, cb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++joint[{a[i], b[i]}];
    ++ca[a[i]];
    ++cb[b[i]];
  }
  auto pairs = [](long long k) { return static_cast<double>(k) * static_cast<double>(k - 1) / 2.0; };
  double index = 0.0, sa = 0.0, sb = 0.0;
  for (const auto& [key, v] : joint) index += pairs(v);
  for (const auto& [key, v] : ca) sa += pairs(v);
  for (const auto& [key, v] : cb) sb += pairs(v);
  const double total = n * (n - 1.0) / 2.0;
  if (total <= 0.0) return 1.0;
  const double expected = sa * sb / total;
  const double max_index = 0.5 * (sa + sb);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

MetricsReport full_report(const Embedding2D& emb, const PhaseAssignment& assign, const TransitionCounts& tc,
                          const RowMatrix* silhouette_space) {
  if (assign.K < 2) throw std::invalid_argument("metrics need K >= 2");
  if (assign.labels.size() != emb.size() || tc.K() != assign.K) {
    throw std::invalid_argument("metrics: embedding, assignment and counts disagree");
  }
  MetricsReport r;
  r.K = assign.K;
  if (silhouette_space) {
    r.silhouette = silhouette(*silhouette_space, assign.labels, assign.K);
  } else {
    r.silhouette = silhouette(emb, assign);
  }
  const auto rr = rotational_regularity(emb, assign);
  r.R = rr.value;
  r.R_skipped_zero_norm = rr.skipped_zero_norm;
  r.C_ext = external_concentration(tc);
  r.H_c = conditional_entropy(tc);
  for (int i = 0; i < tc.K(); ++i) {
    for (int j = 0; j < tc.K(); ++j) {
      (i == j ? r.n_transitions_self : r.n_transitions_external) += tc.counts(i, j);
    }
  }
  return r;
}

}  // namespace phaseid
