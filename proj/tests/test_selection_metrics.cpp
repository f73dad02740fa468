#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "phaseid/error.hpp"
#include "phaseid/metrics.hpp"
#include "phaseid/selection.hpp"
#include "phaseid/synthetic.hpp"

using namespace phaseid;

namespace {

using Counts = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

Counts counts(std::initializer_list<std::initializer_list<long long>> rows) {
  const auto k = static_cast<Eigen::Index>(rows.size());
  Counts c(k, k);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (long long v : r) c(i, j++) = v;
    ++i;
  }
  return c;
}

std::vector<std::vector<long long>> nested(const Counts& c) {
  std::vector<std::vector<long long>> out(static_cast<std::size_t>(c.rows()));
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(c(i, j));
  }
  return out;
}

}  // namespace

TEST_SUITE("transition counting") {
  TEST_CASE("single episode [0,1,2,0,1,2,0]") {
    const auto tc = count_transitions({0, 1, 2, 0, 1, 2, 0}, 3, testutil::chain(7));
    CHECK(tc.counts == counts({{0, 2, 0}, {0, 0, 2}, {2, 0, 0}}));
    CHECK(tc.total() == 6);
    CHECK(tc.row_totals == std::vector<long long>{2, 2, 2});
  }

  TEST_CASE("no count across the episode boundary") {
    SuccessorMap succ = {1, std::nullopt, 3, std::nullopt};
    const auto tc = count_transitions({0, 1, 1, 0}, 2, succ);
    CHECK(tc.counts == counts({{0, 1}, {1, 0}}));
  }

  TEST_CASE("one cluster: N_00 = N - episodes") {
    SuccessorMap succ = {1, 2, std::nullopt, 4, std::nullopt};
    const auto tc = count_transitions({0, 0, 0, 0, 0}, 1, succ);
    CHECK(tc.counts(0, 0) == 3);
    CHECK(external_concentration(tc) == 0.0);
  }

  TEST_CASE("no successor links is degenerate") {
    CHECK_THROWS_AS(count_transitions({0, 1}, 2, SuccessorMap(2)), DegenerateError);
  }
}

TEST_SUITE("conditional entropy") {
  TEST_CASE("deterministic cycle has zero entropy") {
    const auto tc = from_counts(counts({{0, 5, 0}, {0, 0, 5}, {5, 0, 0}}));
    CHECK(conditional_entropy(tc) == 0.0);
  }

  TEST_CASE("uniform K=4 gives ln 4") {
    const auto tc = from_counts(Counts::Constant(4, 4, 7));
    CHECK(std::abs(conditional_entropy(tc) - std::log(4.0)) < 1e-12);
  }

  TEST_CASE("[[2,2],[1,3]] hand value and oracle") {
    const auto c = counts({{2, 2}, {1, 3}});
    const double hand = 0.5 * std::log(2.0) + 0.5 * (-0.25 * std::log(0.25) - 0.75 * std::log(0.75));
    const double h = conditional_entropy(from_counts(c));
    CHECK(std::abs(h - hand) < 1e-12);
    CHECK(std::abs(h - oracle::conditional_entropy(nested(c))) < 1e-12);
    CHECK(std::abs(h - 0.628) < 1e-3);  // hand formula evaluates to 0.62774
  }

  TEST_CASE("random count matrices agree with the oracle") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long long> u(0, 9);
    for (int trial = 0; trial < 50; ++trial) {
      const int k = 2 + trial % 6;
      Counts c(k, k);
      for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = u(rng);
      c(0, 1) += 1;  // at least one link
      CHECK(std::abs(conditional_entropy(from_counts(c)) - oracle::conditional_entropy(nested(c))) < 1e-12);
    }
  }
}

TEST_SUITE("external concentration") {
  TEST_CASE("deterministic ring without self loops gives 1") {
    CHECK(external_concentration(from_counts(counts({{0, 3, 0}, {0, 0, 3}, {3, 0, 0}}))) == 1.0);
  }

  TEST_CASE("all self transitions give 0") {
    CHECK(external_concentration(from_counts(counts({{4, 0}, {0, 6}}))) == 0.0);
  }

  TEST_CASE("two-cluster hand example gives 0.15625") {
    const auto tc = from_counts(counts({{2, 2}, {1, 3}}));
    CHECK(std::abs(external_concentration(tc) - 0.15625) < 1e-15);
  }

  TEST_CASE("rows without outgoing mass contribute 0") {
    const auto tc = from_counts(counts({{0, 4, 0}, {2, 0, 2}, {0, 0, 0}}));
    // w = (0.5, 0.5, 0); row 1 max external prob 0.5
    CHECK(external_concentration(tc) == doctest::Approx(0.5 * 1.0 + 0.5 * 0.5));
  }
}

TEST_SUITE("K selection") {
  TEST_CASE("MinMax of a constant series is all zero") {
    CHECK(minmax_normalize({3.0, 3.0, 3.0}) == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(minmax_normalize({1.0, 3.0, 2.0}) == std::vector<double>{0.0, 1.0, 0.5});
  }

  TEST_CASE("constant C_ext selects the smallest K") {
    std::vector<int> ks;
    for (int k = 2; k <= 20; ++k) ks.push_back(k);
    std::vector<double> cn, kn, obj;
    const auto i = elbow_argmax(ks, std::vector<double>(ks.size(), 0.7), &cn, &kn, &obj);
    CHECK(ks[i] == 2);
    CHECK(obj.front() == 0.0);
    CHECK(obj.back() == -1.0);
  }

  TEST_CASE("ties in the objective go to the smaller K") {
    // C = (0, 0.5, 1) over K = (2, 3, 4): objective is 0 everywhere
    CHECK(elbow_argmax({2, 3, 4}, {0.0, 0.5, 1.0}) == 0);
  }

  TEST_CASE("noiseless 8-phase ring: K window, H_c = 0 and C_ext = 1 at K = 8") {
    RingSpec spec;
    spec.K_true = 8;
    spec.episode_len = 96;
    const auto ring = generate_ring(spec);
    const auto fm = compose_features(ring.trajectories, FeatureConfig::proposed());
    const auto emb = embed_pca(fm);
    const auto d = build_dendrogram(emb);
    const auto curve = select_K(d, emb.successor);
    CHECK(curve.K_values.size() == 19);
    CHECK(curve.K_star_proposed == 8);
    const auto it = std::find(curve.K_values.begin(), curve.K_values.end(), 8);
    REQUIRE(it != curve.K_values.end());
    const auto idx = static_cast<std::size_t>(it - curve.K_values.begin());
    CHECK(curve.H_c[idx] == 0.0);
    CHECK(std::abs(curve.C_ext[idx] - 1.0) < 1e-12);
  }

  TEST_CASE("curve has 19 rows for K in 2..20 on a large input") {
    RingSpec spec;
    spec.noise_sigma = 0.05;
    spec.episode_len = 200;
    const auto ring = generate_ring(spec);
    const auto fm = compose_features(ring.trajectories, FeatureConfig::proposed());
    const auto emb = embed_pca(fm);
    const auto curve = select_K(build_dendrogram(emb), emb.successor);
    CHECK(curve.K_values.size() == 19);
    CHECK(curve.K_values.front() == 2);
    CHECK(curve.K_values.back() == 20);
    CHECK(curve.K_star(SelectionRule::ElbowCext) == 8);
    const auto best = std::max_element(curve.objective.begin(), curve.objective.end()) - curve.objective.begin();
    CHECK(curve.K_values[static_cast<std::size_t>(best)] == 8);
  }

  TEST_CASE("K window is truncated to N and validated") {
    Points2 p(5, 2);
    p << 0, 0, 1, 0, 2, 1, 0, 3, 5, 5;
    const auto emb = testutil::embedding(p, testutil::chain(5));
    const auto d = build_dendrogram(emb);
    CHECK(select_K(d, emb.successor).K_values == std::vector<int>{2, 3, 4, 5});
    CHECK_THROWS_AS(select_K(d, emb.successor, 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(select_K(d, emb.successor, 6, 8), std::invalid_argument);
    CHECK_THROWS_AS(select_K(d, SuccessorMap(5)), DegenerateError);
  }

  TEST_CASE("rule parsing") {
    CHECK(parse_rule("hc") == SelectionRule::ArgminHc);
    CHECK(parse_rule("elbow-cext") == SelectionRule::ElbowCext);
    CHECK(to_string(SelectionRule::ElbowCext) == "elbow-cext");
  }
}

TEST_SUITE("silhouette") {
  TEST_CASE("two far point masses score 1") {
    RowMatrix x(6, 2);
    x << 0, 0, 0, 0, 0, 0, 9, 9, 9, 9, 9, 9;
    CHECK(std::abs(silhouette(x, {0, 0, 0, 1, 1, 1}, 2) - 1.0) < 1e-12);
  }

  TEST_CASE("four-point example equals the brute-force value bit for bit") {
    RowMatrix x(4, 2);
    x << 0, 0, 0, 1, 10, 0, 10, 1;
    const std::vector<int> labels{0, 0, 1, 1};
    const double b = (10.0 + std::sqrt(101.0)) / 2.0;
    CHECK(silhouette(x, labels, 2) == doctest::Approx((b - 1.0) / b).epsilon(1e-15));
    CHECK(silhouette(x, labels, 2) == oracle::silhouette(x, labels, 2));
  }

  TEST_CASE("matches the brute-force oracle exactly on random inputs") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 10 + 10 * static_cast<std::size_t>(trial % 10);
      const int k = 2 + trial % 5;
      const int dim = 2 + trial % 3;
      RowMatrix x(static_cast<Eigen::Index>(n), dim);
      std::normal_distribution<double> g;
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = g(rng);
      std::vector<int> labels(n);
      for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>((i * 7 + rng() % 2) % static_cast<std::size_t>(k));
      for (auto backend : {Backend::Serial, Backend::Parallel}) {
        CHECK(silhouette(x, labels, k, backend) == oracle::silhouette(x, labels, k));
      }
    }
  }

  TEST_CASE("random labels on one blob average near zero") {
    std::mt19937_64 rng(3);
    double acc = 0.0;
    for (int seed = 0; seed < 10; ++seed) {
      RowMatrix x(500, 2);
      std::normal_distribution<double> g;
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = g(rng);
      std::vector<int> labels(500);
      for (auto& l : labels) l = static_cast<int>(rng() % 4);
      acc += silhouette(x, labels, 4);
    }
    CHECK(std::abs(acc / 10.0) < 0.05);
  }

  TEST_CASE("singleton clusters score 0 and single-cluster input is rejected") {
    RowMatrix x(3, 2);
    x << 0, 0, 0, 1, 5, 5;
    const auto s = silhouette_samples(x, {0, 0, 1}, 2);
    CHECK(s[2] == 0.0);
    CHECK_THROWS_AS(silhouette(x, {0, 0, 0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(silhouette(x, {0, 0, 0}, 1), std::invalid_argument);
  }
}

TEST_SUITE("rotational regularity") {
  TEST_CASE("regular K-gon traversal gives cos(pi/K)") {
    for (int k : {3, 4, 6, 8, 12}) {
      std::vector<int> labels(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) labels[static_cast<std::size_t>(i)] = i;
      const auto ccw = testutil::embedding(testutil::polygon(k, 2.0, 0.3), testutil::cyclic(static_cast<std::size_t>(k)));
      const auto r = rotational_regularity(ccw, labels);
      REQUIRE(r.value);
      CHECK(std::abs(*r.value - std::cos(std::numbers::pi / k)) < 1e-9);
      CHECK(r.signed_mean > 0.0);

      // clockwise: reverse successor direction
      SuccessorMap back(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) back[static_cast<std::size_t>(i)] = static_cast<std::size_t>((i + k - 1) % k);
      const auto cw = testutil::embedding(testutil::polygon(k, 2.0, 0.3), back);
      const auto rc = rotational_regularity(cw, labels);
      CHECK(std::abs(*rc.value - *r.value) < 1e-12);
      CHECK(rc.signed_mean < 0.0);
    }
  }

  TEST_CASE("6-gon value is about 0.8660") {
    std::vector<int> labels{0, 1, 2, 3, 4, 5};
    const auto e = testutil::embedding(testutil::polygon(6), testutil::cyclic(6));
    CHECK(*rotational_regularity(e, labels).value == doctest::Approx(0.8660).epsilon(1e-4));
  }

  TEST_CASE("alternating directions cancel") {
    const auto sq = testutil::polygon(4);
    // v0 -> v1 (ccw), v1 -> v0 (cw), v0 -> v3 (cw), v3 -> v0 (ccw)
    Points2 q(5, 2);
    q << sq.row(0), sq.row(1), sq.row(0), sq.row(3), sq.row(0);
    const auto e = testutil::embedding(q, {1, 2, 3, 4, std::nullopt});
    Embedding2D centered = e;
    centered.centroid = Eigen::Vector2d::Zero();
    const auto r = rotational_regularity(centered, {0, 1, 0, 3, 0});
    REQUIRE(r.value);
    CHECK(std::abs(*r.value) < 1e-12);
    CHECK(r.used == 4);
  }

  TEST_CASE("only self transitions: absent") {
    const auto e = testutil::embedding(testutil::polygon(4), testutil::chain(4));
    const auto r = rotational_regularity(e, {0, 0, 0, 0});
    CHECK_FALSE(r.value);
    CHECK(r.external_transitions == 0);
  }

  TEST_CASE("zero-norm terms are skipped and counted") {
    Points2 p(3, 2);
    p << 0, 0, 0, 0, 3, 0;  // centroid (1, 0)
    const auto e = testutil::embedding(p, testutil::chain(3));
    const auto r = rotational_regularity(e, {0, 1, 2});
    CHECK(r.skipped_zero_norm == 1);  // 0 -> 1 has zero displacement
    CHECK(r.used == 1);
  }
}

TEST_SUITE("adjusted rand index") {
  TEST_CASE("identical partitions under renaming score 1") {
    CHECK(adjusted_rand_index({0, 0, 1, 1, 2}, {5, 5, 3, 3, 9}) == doctest::Approx(1.0));
  }
  TEST_CASE("known value") {
    // sklearn: adjusted_rand_score([0,0,1,1],[0,0,1,2]) = 0.5714285714...
    CHECK(adjusted_rand_index({0, 0, 1, 1}, {0, 0, 1, 2}) == doctest::Approx(4.0 / 7.0));
  }
  TEST_CASE("degenerate cases") {
    CHECK(adjusted_rand_index({0, 0, 0}, {1, 1, 1}) == 1.0);
    CHECK_THROWS_AS(adjusted_rand_index({0}, {0, 1}), std::invalid_argument);
  }
}
