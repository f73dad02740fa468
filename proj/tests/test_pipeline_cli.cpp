#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "helpers.hpp"
#include "phaseid/cli.hpp"
#include "phaseid/pipeline.hpp"
#include "phaseid/synthetic.hpp"

using namespace phaseid;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

SyntheticRing ring(int k, std::uint64_t seed = 1, Aliasing aliasing = Aliasing::None) {
  RingSpec spec;
  spec.K_true = k;
  spec.noise_sigma = 0.05;
  spec.episodes = 3;
  spec.episode_len = 200;
  spec.seed = seed;
  spec.aliasing = aliasing;
  return generate_ring(spec);
}

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("proposed pipeline recovers a 6-phase ring with a closed cycle") {
    const auto r = ring(6);
    const auto res = run_pipeline(r.trajectories, PipelineConfig::for_method(Method::Proposed));
    CHECK(res.K_star == 6);
    CHECK(res.metrics.C_ext == doctest::Approx(1.0));
    CHECK(res.transitions.cycle.closed);
    CHECK(res.transitions.cycle.path.size() == 6);
    CHECK(adjusted_rand_index(res.assignment.labels, row_labels(r, Composition::Augmented)) == doctest::Approx(1.0));
    // phase 0 holds the first row
    CHECK(res.assignment.labels.front() == 0);
  }

  TEST_CASE("stage errors carry the stage name") {
    Episode ep{0, {Step{{1.0, 1.0}, {0.0}}, Step{{1.0, 1.0}, {0.0}}, Step{{1.0, 1.0}, {0.0}}}};
    const auto set = make_trajectory_set({ep});
    try {
      run_pipeline(set, PipelineConfig::for_method(Method::Proposed));
      FAIL("expected an error");
    } catch (const StageError& e) {
      CHECK(e.stage() == "embedding");
    }
  }

  TEST_CASE("prepare + finalize equals a full run") {
    const auto r = ring(5, 3);
    auto cfg = PipelineConfig::for_method(Method::Proposed);
    const auto full = run_pipeline(r.trajectories, cfg);
    const auto split = finalize_pipeline(prepare_pipeline(r.trajectories, cfg), cfg);
    CHECK(full.assignment.labels == split.assignment.labels);
    CHECK(full.metrics.silhouette == split.metrics.silhouette);
  }

  TEST_CASE("6-phase ring with 5 steps per phase: true labels give P_ii = 4/5 and C_ext = (1/5)(1/5)") {
    RingSpec spec;
    spec.K_true = 6;
    spec.steps_per_phase = 5;
    spec.episode_len = 3000;
    const auto r = generate_ring(spec);
    const auto fm = compose_features(r.trajectories, FeatureConfig::proposed());
    const auto tc = count_transitions(row_labels(r, Composition::Augmented), 6, fm.successor);
    for (int i = 0; i < 6; ++i) {
      const double stay = static_cast<double>(tc.counts(i, i)) / static_cast<double>(tc.row_totals[static_cast<std::size_t>(i)]);
      CHECK(stay == doctest::Approx(0.8).epsilon(0.01));
    }
    // the external share (1 - P_ii) is 1/5 and all of it goes to the next phase, so max_j P_ij is also 1/5
    CHECK(external_concentration(tc) == doctest::Approx(0.04).epsilon(0.01));
  }
}

TEST_SUITE("cli") {
  TEST_CASE("missing input exits 2 and names the path") {
    const auto res = invoke({"analyze", "--input", "/nonexistent/file.jsonl"});
    CHECK(res.code == cli::kUsage);
    CHECK(res.err.find("/nonexistent/file.jsonl") != std::string::npos);
  }

  TEST_CASE("bad arguments exit 2") {
    CHECK(invoke({}).code == cli::kUsage);
    CHECK(invoke({"frobnicate"}).code == cli::kUsage);
    CHECK(invoke({"analyze"}).code == cli::kUsage);
  }

  TEST_CASE("analyze, compare, curve, ablate, export-features end to end") {
    testutil::TempDir dir("cli");
    const auto data = (dir / "ring.jsonl").string();
    REQUIRE(invoke({"synth", "--k", "6", "--episodes", "3", "--episode-len", "200", "--seed", "2", "-o", data}).code == 0);

    SUBCASE("analyze proposed writes report and figures; K* matches the generator") {
      const auto out = dir / "a";
      const auto res = invoke({"analyze", "-i", data, "--labels", data + ".labels", "-o", out.string()});
      REQUIRE(res.code == cli::kOk);
      const auto report = nlohmann::json::parse(testutil::slurp(out / "report.json"));
      CHECK(report["selection"]["K_star"] == 6);
      CHECK(report["meta"]["K_true"] == "6");
      CHECK(report["metrics"]["ground_truth_ari"].get<double>() == doctest::Approx(1.0));
      CHECK(report["transitions"]["dominant_cycle"]["closed"] == true);
      CHECK(std::filesystem::exists(out / "embedding.svg"));
      CHECK(std::filesystem::exists(out / "transitions.svg"));
      CHECK(std::filesystem::exists(out / "transitions.csv"));
    }

    SUBCASE("compare writes both reports and a table with the four metric rows") {
      const auto out = dir / "cmp";
      const auto res = invoke({"analyze", "-i", data, "--method", "compare", "-o", out.string()});
      REQUIRE(res.code == cli::kOk);
      CHECK(std::filesystem::exists(out / "baseline" / "report.json"));
      CHECK(std::filesystem::exists(out / "proposed" / "report.json"));
      const auto table = testutil::slurp(out / "comparison.md");
      for (const char* row : {"| K |", "| Silhouette |", "| R |", "| C_ext |", "Existing", "Proposed"}) {
        CHECK(table.find(row) != std::string::npos);
      }
    }

    SUBCASE("custom needs composition and rule; fixed methods reject them") {
      CHECK(invoke({"analyze", "-i", data, "--method", "custom", "--rule", "hc", "-o", (dir / "x").string()}).code ==
            cli::kUsage);
      CHECK(invoke({"analyze", "-i", data, "--method", "baseline", "--rule", "hc", "-o", (dir / "x").string()}).code ==
            cli::kUsage);
      CHECK(invoke({"analyze", "-i", data, "--method", "custom", "--composition", "state", "--rule", "cext", "-o",
                 (dir / "x").string()})
                .code == cli::kOk);
    }

    SUBCASE("curve writes 19 rows for K = 2..20") {
      const auto out = dir / "curve";
      REQUIRE(invoke({"curve", "-i", data, "-o", out.string()}).code == 0);
      const auto csv = testutil::slurp(out / "curve.csv");
      CHECK(std::count(csv.begin(), csv.end(), '\n') == 20);
      CHECK(testutil::slurp(out / "curve.svg").find("k-star") != std::string::npos);
    }

    SUBCASE("ablate on a file with one seed: 4 rows, zero std") {
      const auto out = dir / "abl";
      const auto res = invoke({"ablate", "-i", data, "--labels", data + ".labels", "-o", out.string()});
      REQUIRE(res.code == 0);
      const auto csv = testutil::slurp(out / "ablation.csv");
      CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
      CHECK(res.out.find("± 0.000") != std::string::npos);
    }

    SUBCASE("export-features then import the PCA embedding") {
      const auto feats = (dir / "f.csv").string();
      const auto emb = (dir / "e.txt").string();
      REQUIRE(invoke({"export-features", "-i", data, "-o", feats, "--embedding-out", emb}).code == 0);
      const auto out = dir / "imp";
      const auto res = invoke({"analyze", "-i", data, "--embedding", emb, "-o", out.string()});
      CHECK(res.code == 0);
      const auto pca = invoke({"analyze", "-i", data, "-o", (dir / "pca").string()});
      const auto a = nlohmann::json::parse(testutil::slurp(out / "report.json"));
      const auto b = nlohmann::json::parse(testutil::slurp(dir / "pca" / "report.json"));
      CHECK(a["metrics"] == b["metrics"]);
    }

    SUBCASE("embedding with the wrong row count is an input error") {
      testutil::spit(dir / "short.txt", "0 0\n1 1\n");
      const auto res = invoke({"analyze", "-i", data, "--embedding", (dir / "short.txt").string(), "-o",
                            (dir / "y").string()});
      CHECK(res.code == cli::kUsage);
      CHECK(res.err.find("[embedding]") != std::string::npos);
    }
  }

  TEST_CASE("no external transitions: exit 1 with R absent") {
    // two clusters visited in separate episodes only: every link is a self transition
    std::vector<Episode> eps;
    for (int e = 0; e < 2; ++e) {
      Episode ep{e, {}};
      for (int t = 0; t < 20; ++t) {
        const double base = e == 0 ? 0.0 : 50.0;
        ep.steps.push_back(Step{{base + 0.01 * t, base + 0.02 * ((t * 7) % 5)}, {0.0}});
      }
      eps.push_back(std::move(ep));
    }
    testutil::TempDir dir("selfonly");
    save_trajectories(make_trajectory_set(std::move(eps)), dir / "s.jsonl");
    const auto res = invoke({"analyze", "-i", (dir / "s.jsonl").string(), "--method", "baseline", "--k-max", "2", "-o",
                          (dir / "o").string()});
    CHECK(res.code == cli::kDegenerate);
    const auto report = nlohmann::json::parse(testutil::slurp(dir / "o" / "report.json"));
    CHECK(report["metrics"]["R"].is_null());
  }

  TEST_CASE("output directory falls back to the environment variable") {
    testutil::TempDir dir("env");
    const auto data = (dir / "r.jsonl").string();
    REQUIRE(invoke({"synth", "--k", "4", "--episode-len", "60", "--episodes", "1", "-o", data}).code == 0);
    ::setenv(cli::kOutputDirEnv, (dir / "envout").string().c_str(), 1);
    const auto res = invoke({"analyze", "-i", data});
    ::unsetenv(cli::kOutputDirEnv);
    CHECK(res.code == 0);
    CHECK(std::filesystem::exists(dir / "envout" / "report.json"));
  }
}
