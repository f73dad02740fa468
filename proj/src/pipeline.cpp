#include "phaseid/pipeline.hpp"

#include "phaseid/error.hpp"

namespace phaseid {

std::string to_string(Method m) {
  switch (m) {
    case Method::Baseline: return "baseline";
    case Method::Proposed: return "proposed";
    case Method::Custom: return "custom";
  }
  return "custom";
}

Method parse_method(const std::string& s) {
  if (s == "baseline") return Method::Baseline;
  if (s == "proposed") return Method::Proposed;
  if (s == "custom") return Method::Custom;
  throw InputError("unknown method '" + s + "' (expected baseline|proposed|custom)");
}

PipelineConfig PipelineConfig::for_method(Method m) {
  PipelineConfig cfg;
  if (m == Method::Baseline) {
    cfg.features = FeatureConfig::baseline();
    cfg.rule = SelectionRule::ArgminHc;
  } else {
    cfg.features = FeatureConfig::proposed();
    cfg.rule = SelectionRule::ElbowCext;
  }
  return cfg;
}

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const InputError& e) {
    throw StageError(name, e.what(), true);
  } catch (const std::invalid_argument& e) {
    throw StageError(name, e.what(), true);
  } catch (const std::exception& e) {
    throw StageError(name, e.what(), false);
  }
}

}  // namespace

PipelineResult prepare_pipeline(const TrajectorySet& set, const PipelineConfig& cfg) {
  PipelineResult r;
  r.features = stage("features", [&] { return compose_features(set, cfg.features, cfg.backend); });
  r.embedding = stage("embedding", [&] {
    return cfg.embedding_file ? import_embedding(r.features, *cfg.embedding_file) : embed_pca(r.features, cfg.backend);
  });
  r.dendrogram = stage("clustering", [&] { return build_dendrogram(r.embedding, cfg.backend); });
  r.curve = stage("selection", [&] { return select_K(r.dendrogram, r.embedding.successor, cfg.K_min, cfg.K_max); });
  return r;
}

PipelineResult finalize_pipeline(PipelineResult r, const PipelineConfig& cfg) {
  r.K_star = r.curve.K_star(cfg.rule);

  stage("transitions", [&] {
    const auto raw = cut_labels(r.dendrogram, r.K_star);
    const auto tc = count_transitions(raw, r.K_star, r.embedding.successor);
    const int seed = seed_cluster(cfg.label_seed, tc, raw.front());
    r.transitions = build_transition_model(tc, seed);
    r.assignment = make_assignment(apply_relabeling(raw, r.transitions.relabeling), r.K_star, r.embedding.points);
    return 0;
  });
  r.metrics = stage("metrics", [&] {
    if (cfg.silhouette_space == SilhouetteSpace::Features) {
      const RowMatrix space = r.features.rows;
      return full_report(r.embedding, r.assignment, r.transitions.counts, &space);
    }
    return full_report(r.embedding, r.assignment, r.transitions.counts);
  });
  return r;
}

PipelineResult run_pipeline(const TrajectorySet& set, const PipelineConfig& cfg) {
  return finalize_pipeline(prepare_pipeline(set, cfg), cfg);
}

}  // namespace phaseid
