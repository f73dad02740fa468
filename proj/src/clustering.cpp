#include "phaseid/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "phaseid/error.hpp"

namespace phaseid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Condensed upper-triangular table of squared Ward distances between slots.
class DistanceTable {
 public:
  explicit DistanceTable(std::size_t n) : n_(n), d_(n * (n - 1) / 2) {}

  double& at(std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return d_[a * n_ - a * (a + 1) / 2 + (b - a - 1)];
  }
  double at(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    return d_[a * n_ - a * (a + 1) / 2 + (b - a - 1)];
  }

 private:
  std::size_t n_;
  std::vector<double> d_;
};

/// Shared state of the agglomeration: slot -> cluster id / size / liveness.
/// The merged cluster takes the lower of its parents' slots.
struct Agglomeration {
  std::size_t n;
  DistanceTable dist;
  std::vector<std::size_t> id;
  std::vector<std::size_t> size;
  std::vector<std::size_t> active;  // live slots, ascending
  Dendrogram out;

  Agglomeration(const Points2& pts, Backend backend)
      : n(static_cast<std::size_t>(pts.rows())), dist(n), id(n), size(n, 1), active(n) {
    for (std::size_t i = 0; i < n; ++i) id[i] = active[i] = i;
    out.leaf_count = n;
    out.merges.reserve(n > 0 ? n - 1 : 0);
    auto fill_row = [&](std::size_t a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const double dx = pts(static_cast<Eigen::Index>(a), 0) - pts(static_cast<Eigen::Index>(b), 0);
        const double dy = pts(static_cast<Eigen::Index>(a), 1) - pts(static_cast<Eigen::Index>(b), 1);
        dist.at(a, b) = dx * dx + dy * dy;
      }
    };
    const auto rows = static_cast<std::ptrdiff_t>(n);
    if (backend == Backend::Serial) {
      for (std::ptrdiff_t a = 0; a < rows; ++a) fill_row(static_cast<std::size_t>(a));
    } else {
      PHASEID_OMP(parallel for schedule(dynamic, 16))
      for (std::ptrdiff_t a = 0; a < rows; ++a) fill_row(static_cast<std::size_t>(a));
    }
  }

  /// Lance-Williams for Ward on squared distances. `i` holds the lower id, so
  /// every backend evaluates the expression with identical operand order.
  double updated(std::size_t k, std::size_t i, std::size_t j, double dij) const {
    const double nk = static_cast<double>(size[k]);
    const double ni = static_cast<double>(size[i]);
    const double nj = static_cast<double>(size[j]);
    const double v = ((ni + nk) * dist.at(k, i) + (nj + nk) * dist.at(k, j) - nk * dij) / (ni + nj + nk);
    return v > 0.0 ? v : 0.0;
  }

  /// Merges slots a and b; returns the slot now holding the merged cluster.
  template <typename ForEachSlot>
  std::size_t merge(std::size_t a, std::size_t b, double dab, ForEachSlot&& for_each_other) {
    std::size_t i = a, j = b;  // i: lower id
    if (id[i] > id[j]) std::swap(i, j);
    out.merges.push_back({id[i], id[j], std::sqrt(dab), size[i] + size[j]});

    const std::size_t keep = std::min(a, b);
    const std::size_t drop = std::max(a, b);
    active.erase(std::find(active.begin(), active.end(), drop));

    // Rows are written into `keep`, which is also one of the parents, so the
    // new values are staged before any of them is stored.
    std::vector<double> fresh(n, 0.0);
    for_each_other([&](std::size_t k) { fresh[k] = updated(k, i, j, dab); }, keep);
    for (std::size_t k : active) {
      if (k != keep) dist.at(k, keep) = fresh[k];
    }
    size[keep] = size[i] + size[j];
    id[keep] = n + out.merges.size() - 1;
    return keep;
  }
};

Dendrogram ward_serial(const Points2& pts) {
  Agglomeration ag(pts, Backend::Serial);
  while (ag.active.size() > 1) {
    double best = kInf;
    std::size_t ba = 0, bb = 0, blo = 0, bhi = 0;
    bool found = false;
    for (std::size_t x = 0; x < ag.active.size(); ++x) {
      for (std::size_t y = x + 1; y < ag.active.size(); ++y) {
        const std::size_t a = ag.active[x], b = ag.active[y];
        const double d = ag.dist.at(a, b);
        const std::size_t lo = std::min(ag.id[a], ag.id[b]);
        const std::size_t hi = std::max(ag.id[a], ag.id[b]);
        if (!found || d < best || (d == best && (lo < blo || (lo == blo && hi < bhi)))) {
          found = true;
          best = d;
          ba = a;
          bb = b;
          blo = lo;
          bhi = hi;
        }
      }
    }
    ag.merge(ba, bb, best, [&](auto&& fn, std::size_t keep) {
      for (std::size_t k : ag.active) {
        if (k != keep) fn(k);
      }
    });
  }
  return std::move(ag.out);
}

Dendrogram ward_parallel(const Points2& pts) {
  Agglomeration ag(pts, Backend::Parallel);
  const std::size_t n = ag.n;
  // nn[a]: slot of the nearest live cluster whose id exceeds id[a] (smallest
  // such id on ties); n when there is none.
  std::vector<std::size_t> nn(n, n);
  std::vector<double> nnd(n, kInf);

  auto rescan = [&](std::size_t a) {
    std::size_t best = n;
    double bd = kInf;
    for (std::size_t b : ag.active) {
      if (ag.id[b] <= ag.id[a]) continue;
      const double d = ag.dist.at(a, b);
      if (best == n || d < bd || (d == bd && ag.id[b] < ag.id[best])) {
        best = b;
        bd = d;
      }
    }
    nn[a] = best;
    nnd[a] = bd;
  };

  {
    const auto count = static_cast<std::ptrdiff_t>(n);
    PHASEID_OMP(parallel for schedule(dynamic, 16))
    for (std::ptrdiff_t a = 0; a < count; ++a) rescan(static_cast<std::size_t>(a));
  }

  std::vector<std::size_t> live;
  while (ag.active.size() > 1) {
    std::size_t a = n;
    for (std::size_t s : ag.active) {
      if (nn[s] == n) continue;
      if (a == n || nnd[s] < nnd[a] || (nnd[s] == nnd[a] && ag.id[s] < ag.id[a])) a = s;
    }
    const std::size_t b = nn[a];
    const double dab = nnd[a];

    const std::size_t keep = ag.merge(a, b, dab, [&](auto&& fn, std::size_t keep_slot) {
      live.assign(ag.active.begin(), ag.active.end());
      const auto m = static_cast<std::ptrdiff_t>(live.size());
      PHASEID_OMP(parallel for schedule(static))
      for (std::ptrdiff_t x = 0; x < m; ++x) {
        const std::size_t k = live[static_cast<std::size_t>(x)];
        if (k != keep_slot) fn(k);
      }
    });
    const std::size_t drop = (keep == a) ? b : a;
    nn[drop] = n;
    nnd[drop] = kInf;
    // The merged cluster has the largest id, so it has no higher neighbour.
    nn[keep] = n;
    nnd[keep] = kInf;

    live.assign(ag.active.begin(), ag.active.end());
    const auto m = static_cast<std::ptrdiff_t>(live.size());
    PHASEID_OMP(parallel for schedule(dynamic, 8))
    for (std::ptrdiff_t x = 0; x < m; ++x) {
      const std::size_t k = live[static_cast<std::size_t>(x)];
      if (k == keep) continue;
      if (nn[k] == a || nn[k] == b) {
        rescan(k);
      } else {
        // The new id is larger than any cached neighbour's, so it only wins
        // on a strictly smaller distance.
        const double d = ag.dist.at(k, keep);
        if (d < nnd[k]) {
          nn[k] = keep;
          nnd[k] = d;
        }
      }
    }
  }
  return std::move(ag.out);
}

}  // namespace

Dendrogram build_dendrogram(const Points2& points, Backend backend) {
  if (points.rows() < 2) throw std::invalid_argument("Ward clustering needs at least 2 points");
  return backend == Backend::Serial ? ward_serial(points) : ward_parallel(points);
}

std::vector<int> renumber_by_first_occurrence(const std::vector<int>& labels) {
  std::vector<int> map;
  std::vector<int> out(labels.size());
  int next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int l = labels[i];
    if (l < 0) throw std::invalid_argument("negative cluster label");
    if (static_cast<std::size_t>(l) >= map.size()) map.resize(static_cast<std::size_t>(l) + 1, -1);
    int& m = map[static_cast<std::size_t>(l)];
    if (m < 0) m = next++;
    out[i] = m;
  }
  return out;
}

std::vector<int> cut_labels(const Dendrogram& dendrogram, int K) {
  const std::size_t n = dendrogram.leaf_count;
  if (K < 1 || static_cast<std::size_t>(K) > n) {
    throw std::invalid_argument("cut: K=" + std::to_string(K) + " outside 1.." + std::to_string(n));
  }
  const std::size_t applied = n - static_cast<std::size_t>(K);
  std::vector<std::size_t> parent(2 * n - 1);
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  for (std::size_t m = 0; m < applied; ++m) {
    parent[dendrogram.merges[m].left] = n + m;
    parent[dendrogram.merges[m].right] = n + m;
  }
  std::vector<int> root(n);
  std::vector<int> slot(2 * n - 1, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = i;
    while (parent[r] != r) r = parent[r];
    if (slot[r] < 0) slot[r] = next++;
    root[i] = slot[r];
  }
  return root;
}

PhaseAssignment make_assignment(std::vector<int> labels, int K, const Points2& points) {
  if (K < 1) throw std::invalid_argument("assignment needs K >= 1");
  if (labels.size() != static_cast<std::size_t>(points.rows())) {
    throw std::invalid_argument("label count does not match point count");
  }
  PhaseAssignment pa;
  pa.K = K;
  pa.cluster_sizes.assign(static_cast<std::size_t>(K), 0);
  pa.cluster_centroids = Centroids::Zero(K, 2);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int l = labels[i];
    if (l < 0 || l >= K) throw std::invalid_argument("label " + std::to_string(l) + " outside 0.." + std::to_string(K - 1));
    ++pa.cluster_sizes[static_cast<std::size_t>(l)];
    pa.cluster_centroids.row(l) += points.row(static_cast<Eigen::Index>(i));
  }
  for (int c = 0; c < K; ++c) {
    const auto sz = pa.cluster_sizes[static_cast<std::size_t>(c)];
    if (sz == 0) throw std::invalid_argument("cluster " + std::to_string(c) + " is empty");
    pa.cluster_centroids.row(c) /= static_cast<double>(sz);
  }
  pa.labels = std::move(labels);
  return pa;
}

PhaseAssignment cut(const Dendrogram& dendrogram, int K, const Embedding2D& emb) {
  if (K < 2) throw std::invalid_argument("cut: K must be at least 2");
  if (emb.size() != dendrogram.leaf_count) throw std::invalid_argument("cut: embedding does not match dendrogram");
  return make_assignment(cut_labels(dendrogram, K), K, emb.points);
}

void write_dendrogram(const Dendrogram& dendrogram, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write dendrogram '" + path.string() + "'");
  out << "left,right,distance,size\n";
  char buf[48];
  for (const auto& m : dendrogram.merges) {
    std::snprintf(buf, sizeof buf, "%.17g", m.distance);
    out << m.left << ',' << m.right << ',' << buf << ',' << m.size << '\n';
  }
}

}  // namespace phaseid
