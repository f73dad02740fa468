#include "phaseid/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "phaseid/error.hpp"
#include "phaseid/pipeline.hpp"
#include "phaseid/render.hpp"
#include "phaseid/report.hpp"
#include "phaseid/svg.hpp"
#include "phaseid/synthetic.hpp"

namespace phaseid::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MethodOpts {
  std::string method = "proposed";
  std::string composition;
  std::string scaling;
  std::string rule;
  std::string zscore;
  std::string embedding;
  std::string embedding_template;
  std::vector<std::uint64_t> seeds;
  int k_min = 2;
  int k_max = 20;
  std::string label_seed = "first-step";
  std::string silhouette_space = "embedding";
  std::string labels;
};

struct SynthOpts {
  int k = 8;
  int steps_per_phase = 1;
  double sigma = 0.05;
  int episodes = 5;
  int episode_len = 1000;
  std::uint64_t seed = 0;
  int state_dim = 4;
  int action_dim = 2;
  bool aliased = false;

  RingSpec spec(std::uint64_t s) const {
    RingSpec r;
    r.K_true = k;
    r.steps_per_phase = steps_per_phase;
    r.noise_sigma = sigma;
    r.episodes = episodes;
    r.episode_len = episode_len;
    r.seed = s;
    r.state_dim = state_dim;
    r.action_dim = action_dim;
    r.aliasing = aliased ? Aliasing::StateAliased : Aliasing::None;
    return r;
  }
};

void add_feature_opts(CLI::App* sub, MethodOpts& o) {
  sub->add_option("--method", o.method, "baseline | proposed | custom")->capture_default_str();
  sub->add_option("--composition", o.composition, "state | augmented (custom method only)");
  sub->add_option("--scaling", o.scaling, "none | total | block");
  sub->add_option("--zscore", o.zscore, "on | off: per-column z-score override")
      ->check(CLI::IsMember({"on", "off"}));
}

void add_method_opts(CLI::App* sub, MethodOpts& o) {
  add_feature_opts(sub, o);
  sub->add_option("--rule", o.rule, "argmin-hc | elbow-cext (custom method only)");
  sub->add_option("--embedding", o.embedding, "import 2D coordinates instead of the built-in PCA");
  sub->add_option("--k-min", o.k_min, "smallest K scanned")->capture_default_str();
  sub->add_option("--k-max", o.k_max, "largest K scanned")->capture_default_str();
  sub->add_option("--label-seed", o.label_seed, "first-step | highest-weight")->capture_default_str();
  sub->add_option("--silhouette-space", o.silhouette_space, "embedding | features")
      ->check(CLI::IsMember({"embedding", "features"}))
      ->capture_default_str();
  sub->add_option("--labels", o.labels, "ground-truth label file (one label per step) for ARI");
}

void add_seed_opts(CLI::App* sub, MethodOpts& o) {
  sub->add_option("--seeds", o.seeds, "seeds to aggregate over")->delimiter(',');
  sub->add_option("--embedding-template", o.embedding_template,
                  "per-seed embedding files; {seed} and {feat} (state|all) are substituted");
}

void add_synth_opts(CLI::App* sub, SynthOpts& s) {
  sub->add_option("--k", s.k, "number of true phases")->capture_default_str();
  sub->add_option("--steps-per-phase", s.steps_per_phase, "steps spent in each phase")->capture_default_str();
  sub->add_option("--sigma", s.sigma, "state noise standard deviation")->capture_default_str();
  sub->add_option("--episodes", s.episodes)->capture_default_str();
  sub->add_option("--episode-len", s.episode_len)->capture_default_str();
  sub->add_option("--state-dim", s.state_dim)->capture_default_str();
  sub->add_option("--action-dim", s.action_dim)->capture_default_str();
  sub->add_flag("--aliased", s.aliased, "phase floor(K/2) shares phase 0's state archetype");
}

FeatureConfig resolve_features(const MethodOpts& o, Method m) {
  FeatureConfig f;
  if (m == Method::Custom) {
    if (o.composition.empty()) throw UsageError("--method custom requires --composition");
    f.composition = parse_composition(o.composition);
    f = f.composition == Composition::StateOnly ? FeatureConfig::baseline() : FeatureConfig::proposed();
  } else {
    if (!o.composition.empty()) throw UsageError("--composition only applies to --method custom");
    f = PipelineConfig::for_method(m).features;
  }
  if (!o.scaling.empty()) f.scaling = parse_scaling(o.scaling);
  if (!o.zscore.empty()) f.zscore = o.zscore == "on";
  return f;
}

PipelineConfig resolve(const MethodOpts& o, Method m) {
  PipelineConfig cfg = PipelineConfig::for_method(m == Method::Custom ? Method::Proposed : m);
  cfg.features = resolve_features(o, m);
  if (m == Method::Custom) {
    if (o.rule.empty()) throw UsageError("--method custom requires --rule");
    cfg.rule = parse_rule(o.rule);
  } else if (!o.rule.empty()) {
    throw UsageError("--rule only applies to --method custom");
  }
  if (!o.embedding.empty()) cfg.embedding_file = fs::path(o.embedding);
  cfg.K_min = o.k_min;
  cfg.K_max = o.k_max;
  if (cfg.K_min < 2 || cfg.K_max < cfg.K_min) throw UsageError("K range must satisfy 2 <= k-min <= k-max");
  cfg.label_seed = parse_label_seed(o.label_seed);
  cfg.silhouette_space = o.silhouette_space == "features" ? SilhouetteSpace::Features : SilhouetteSpace::Embedding;
  return cfg;
}

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return "phaseid-out";
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

TrajectorySet load_input(const std::string& path) {
  if (!fs::exists(path)) throw InputError("input file '" + path + "' does not exist");
  return load_trajectories(path);
}

std::string substitute(std::string tmpl, const std::string& key, const std::string& value) {
  for (auto pos = tmpl.find(key); pos != std::string::npos; pos = tmpl.find(key, pos + value.size())) {
    tmpl.replace(pos, key.size(), value);
  }
  return tmpl;
}

std::string feat_tag(Composition c) { return c == Composition::StateOnly ? "state" : "all"; }

/// Ground-truth step labels projected onto feature rows.
std::vector<int> labels_for_rows(const std::vector<int>& step_labels, const TrajectorySet& set, const FeatureMatrix& fm) {
  if (step_labels.size() != set.total_steps()) {
    throw InputError("label file has " + std::to_string(step_labels.size()) + " labels for " +
                     std::to_string(set.total_steps()) + " steps");
  }
  std::map<int, std::size_t> offset;
  std::size_t acc = 0;
  for (const auto& ep : set.episodes) {
    offset[ep.id] = acc;
    acc += ep.steps.size();
  }
  std::vector<int> rows;
  rows.reserve(fm.size());
  for (const auto& ref : fm.step_index) rows.push_back(step_labels[offset.at(ref.episode) + ref.t]);
  return rows;
}

struct SeededRun {
  std::uint64_t seed = 0;
  PipelineResult result;
  std::optional<double> ari;
};

/// Prepared (rule-independent) results for one feature configuration, one per
/// seed. Without an embedding template the PCA path is deterministic and a
/// single run stands for every seed.
std::vector<std::pair<std::uint64_t, PipelineResult>> prepare_runs(const TrajectorySet& set, const PipelineConfig& cfg,
                                                                   const MethodOpts& o) {
  std::vector<std::uint64_t> seeds = o.seeds.empty() ? std::vector<std::uint64_t>{0} : o.seeds;
  std::vector<std::pair<std::uint64_t, PipelineResult>> out;
  if (o.embedding_template.empty()) {
    out.emplace_back(seeds.front(), prepare_pipeline(set, cfg));
    return out;
  }
  for (auto s : seeds) {
    PipelineConfig c = cfg;
    c.embedding_file = substitute(substitute(o.embedding_template, "{seed}", std::to_string(s)), "{feat}",
                                  feat_tag(cfg.features.composition));
    out.emplace_back(s, prepare_pipeline(set, c));
  }
  return out;
}

void write_run(const fs::path& dir, const PipelineResult& r, const PipelineConfig& cfg, const ReportContext& ctx,
               const std::vector<SeededRun>& runs) {
  ensure_dir(dir);
  ordered_json report = make_report(r, cfg, ctx);
  if (runs.size() > 1) {
    RunStats stats;
    ordered_json seeds = ordered_json::array();
    for (const auto& run : runs) {
      stats.add(run.result, run.ari);
      seeds.push_back(run.seed);
    }
    auto block = [](const std::vector<double>& v) {
      const auto s = summarize(v);
      return ordered_json{{"mean", s.mean}, {"std", s.std}, {"count", s.count}};
    };
    report["seeds"] = {{"seeds", seeds},
                       {"K", block(stats.K)},
                       {"silhouette", block(stats.silhouette)},
                       {"R", block(stats.R)},
                       {"C_ext", block(stats.C_ext)}};
    if (!stats.ari.empty()) report["seeds"]["ground_truth_ari"] = block(stats.ari);
  }
  write_text(dir / "report.json", report.dump(2) + "\n");
  svg::write_file((dir / "embedding.svg").string(), render_embedding(r.embedding, r.assignment));
  svg::write_file((dir / "transitions.svg").string(), render_transition_matrix(r.transitions));
  write_transition_table(r.transitions, dir / "transitions.csv");
}

std::vector<SeededRun> run_method(const TrajectorySet& set, const PipelineConfig& cfg, const MethodOpts& o,
                                  const std::vector<int>* step_labels) {
  std::vector<SeededRun> runs;
  for (auto& [seed, prepared] : prepare_runs(set, cfg, o)) {
    SeededRun run{seed, finalize_pipeline(std::move(prepared), cfg), std::nullopt};
    if (step_labels) {
      run.ari = adjusted_rand_index(run.result.assignment.labels,
                                    labels_for_rows(*step_labels, set, run.result.features));
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

bool degenerate(const PipelineResult& r) { return r.metrics.n_transitions_external == 0 || !r.metrics.R; }

std::string comparison_table(const std::vector<std::pair<std::string, std::vector<SeededRun>>>& methods) {
  std::ostringstream md;
  md << "| Metric |";
  for (const auto& [name, runs] : methods) md << ' ' << name << " |";
  md << "\n|---|";
  for (std::size_t i = 0; i < methods.size(); ++i) md << "---|";
  md << '\n';
  std::vector<RunStats> stats(methods.size());
  for (std::size_t i = 0; i < methods.size(); ++i) {
    for (const auto& run : methods[i].second) stats[i].add(run.result, run.ari);
  }
  auto row = [&](const char* label, auto member, int decimals) {
    md << "| " << label << " |";
    for (const auto& s : stats) md << ' ' << format_pm(summarize(s.*member), decimals) << " |";
    md << '\n';
  };
  row("K", &RunStats::K, 1);
  row("Silhouette", &RunStats::silhouette, 3);
  row("R", &RunStats::R, 3);
  row("C_ext", &RunStats::C_ext, 3);
  if (!stats.empty() && !stats.front().ari.empty()) row("ARI", &RunStats::ari, 3);
  return md.str();
}

std::string comparison_csv(const std::vector<std::pair<std::string, std::vector<SeededRun>>>& methods) {
  std::ostringstream csv;
  csv << "method,metric,mean,std,count\n";
  char buf[160];
  for (const auto& [name, runs] : methods) {
    RunStats st;
    for (const auto& run : runs) st.add(run.result, run.ari);
    const std::pair<const char*, const std::vector<double>*> rows[] = {
        {"K", &st.K}, {"silhouette", &st.silhouette}, {"R", &st.R}, {"C_ext", &st.C_ext}, {"ARI", &st.ari}};
    for (const auto& [metric, values] : rows) {
      if (values->empty()) continue;
      const auto s = summarize(*values);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu", s.mean, s.std, s.count);
      csv << name << ',' << metric << ',' << buf << '\n';
    }
  }
  return csv.str();
}

int cmd_analyze(const std::string& input, const MethodOpts& o, const std::string& out_flag, std::ostream& out) {
  const auto set = load_input(input);
  std::vector<int> step_labels;
  if (!o.labels.empty()) step_labels = read_labels(o.labels);
  const auto* labels_ptr = o.labels.empty() ? nullptr : &step_labels;
  const fs::path dir = output_dir(out_flag);

  ReportContext ctx;
  ctx.input = input;
  ctx.meta = set.meta;
  ctx.episodes = set.episodes.size();
  ctx.steps = set.total_steps();

  std::vector<Method> methods;
  const bool compare = o.method == "compare";
  if (compare) {
    if (!o.composition.empty() || !o.rule.empty()) throw UsageError("--method compare takes no --composition/--rule");
    methods = {Method::Baseline, Method::Proposed};
  } else {
    methods = {parse_method(o.method)};
  }

  int code = kOk;
  std::vector<std::pair<std::string, std::vector<SeededRun>>> all;
  for (Method m : methods) {
    const PipelineConfig cfg = resolve(o, m);
    auto runs = run_method(set, cfg, o, labels_ptr);
    const auto& first = runs.front();
    ctx.method = m;
    ctx.ground_truth_ari = first.ari;
    const fs::path run_dir = compare ? dir / to_string(m) : dir;
    write_run(run_dir, first.result, cfg, ctx, runs);

    const auto& mt = first.result.metrics;
    out << to_string(m) << ": K*=" << first.result.K_star << " silhouette=" << svg::num(mt.silhouette, 3)
        << " R=" << (mt.R ? svg::num(*mt.R, 3) : std::string("n/a")) << " C_ext=" << svg::num(mt.C_ext, 3)
        << " H_c=" << svg::num(mt.H_c, 3) << " cycle=" << first.result.transitions.cycle.path.size()
        << (first.result.transitions.cycle.closed ? " (closed)" : " (open)") << " -> " << run_dir.string() << '\n';
    if (degenerate(first.result)) code = kDegenerate;
    all.emplace_back(m == Method::Baseline ? "Existing" : (m == Method::Proposed ? "Proposed" : "Custom"),
                     std::move(runs));
  }
  if (compare) {
    const std::string table = comparison_table(all);
    write_text(dir / "comparison.md", table);
    write_text(dir / "comparison.csv", comparison_csv(all));
    out << table;
  }
  return code;
}

struct AblationCell {
  Composition feat;
  SelectionRule rule;
  const char* cond;
};

int cmd_ablate(const std::string& input, bool synth, const SynthOpts& so, MethodOpts o, const std::string& out_flag,
               std::ostream& out) {
  if (input.empty() == !synth) throw UsageError("ablate needs exactly one of --input or --synth");
  if (o.seeds.empty()) o.seeds = {0};
  const fs::path dir = output_dir(out_flag);
  ensure_dir(dir);

  const AblationCell cells[] = {{Composition::StateOnly, SelectionRule::ArgminHc, "Existing"},
                                {Composition::StateOnly, SelectionRule::ElbowCext, "+ C_ext"},
                                {Composition::Augmented, SelectionRule::ArgminHc, "+ Feat."},
                                {Composition::Augmented, SelectionRule::ElbowCext, "Proposed"}};
  std::vector<RunStats> stats(std::size(cells));

  auto run_set = [&](const TrajectorySet& set, const std::vector<int>* step_labels, const MethodOpts& per_seed) {
    for (Composition feat : {Composition::StateOnly, Composition::Augmented}) {
      PipelineConfig base = resolve(per_seed, feat == Composition::StateOnly ? Method::Baseline : Method::Proposed);
      for (auto& [seed, prepared] : prepare_runs(set, base, per_seed)) {
        for (std::size_t c = 0; c < std::size(cells); ++c) {
          if (cells[c].feat != feat) continue;
          PipelineConfig cfg = base;
          cfg.rule = cells[c].rule;
          auto r = finalize_pipeline(prepared, cfg);
          std::optional<double> ari;
          if (step_labels) ari = adjusted_rand_index(r.assignment.labels, labels_for_rows(*step_labels, set, r.features));
          stats[c].add(r, ari);
        }
      }
    }
  };

  if (synth) {
    for (auto seed : o.seeds) {
      const auto ring = generate_ring(so.spec(seed));
      MethodOpts single = o;
      single.seeds = {seed};
      run_set(ring.trajectories, &ring.step_labels, single);
    }
  } else {
    const auto set = load_input(input);
    std::vector<int> step_labels;
    if (!o.labels.empty()) step_labels = read_labels(o.labels);
    run_set(set, o.labels.empty() ? nullptr : &step_labels, o);
  }

  const bool with_ari = !stats.front().ari.empty();
  std::ostringstream md, csv;
  md << "| Feat. | Obj. | K | R | C_ext |" << (with_ari ? " ARI |" : "") << " Cond. |\n";
  md << "|---|---|---|---|---|" << (with_ari ? "---|" : "") << "---|\n";
  csv << "feat,obj,K_mean,K_std,R_mean,R_std,C_ext_mean,C_ext_std," << (with_ari ? "ARI_mean,ARI_std," : "")
      << "cond\n";
  for (std::size_t c = 0; c < std::size(cells); ++c) {
    const auto feat = cells[c].feat == Composition::StateOnly ? "state" : "all";
    const auto obj = cells[c].rule == SelectionRule::ArgminHc ? "H_c" : "C_ext";
    const auto k = summarize(stats[c].K), rr = summarize(stats[c].R), ce = summarize(stats[c].C_ext);
    md << "| " << feat << " | " << obj << " | " << format_pm(k, 1) << " | " << format_pm(rr) << " | " << format_pm(ce)
       << " |";
    csv << feat << ',' << obj << ',' << svg::num(k.mean, 6) << ',' << svg::num(k.std, 6) << ',' << svg::num(rr.mean, 6)
        << ',' << svg::num(rr.std, 6) << ',' << svg::num(ce.mean, 6) << ',' << svg::num(ce.std, 6) << ',';
    if (with_ari) {
      const auto a = summarize(stats[c].ari);
      md << ' ' << format_pm(a) << " |";
      csv << svg::num(a.mean, 6) << ',' << svg::num(a.std, 6) << ',';
    }
    md << ' ' << cells[c].cond << " |\n";
    csv << cells[c].cond << '\n';
  }
  write_text(dir / "ablation.md", md.str());
  write_text(dir / "ablation.csv", csv.str());
  out << md.str();
  return kOk;
}

int cmd_curve(const std::string& input, const MethodOpts& o, const std::string& out_flag, std::ostream& out) {
  const auto set = load_input(input);
  const PipelineConfig cfg = resolve(o, parse_method(o.method));
  const auto prepared = prepare_pipeline(set, cfg);
  const auto& c = prepared.curve;
  const int k_star = c.K_star(cfg.rule);
  const fs::path dir = output_dir(out_flag);
  ensure_dir(dir);

  std::ostringstream csv;
  csv << "K,H_c,C_ext,C_ext_norm,K_norm,objective\n";
  char buf[256];
  for (std::size_t i = 0; i < c.K_values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", c.K_values[i], c.H_c[i], c.C_ext[i],
                  c.C_ext_norm[i], c.K_norm[i], c.objective[i]);
    csv << buf;
  }
  write_text(dir / "curve.csv", csv.str());
  svg::write_file((dir / "curve.svg").string(), render_selection_curve(c, k_star));
  out << "K*=" << k_star << " (" << to_string(cfg.rule) << "), argmin H_c=" << c.K_star_baseline
      << ", elbow C_ext=" << c.K_star_proposed << " -> " << (dir / "curve.csv").string() << '\n';
  return kOk;
}

int cmd_synth(const SynthOpts& so, const std::string& output, std::string labels, std::ostream& out) {
  const auto ring = generate_ring(so.spec(so.seed));
  save_trajectories(ring.trajectories, output);
  if (labels.empty()) labels = output + ".labels";
  write_labels(ring.step_labels, labels);
  out << "wrote " << ring.trajectories.total_steps() << " steps in " << ring.trajectories.episodes.size()
      << " episode(s) to " << output << " (labels: " << labels << ")\n";
  return kOk;
}

int cmd_export_features(const std::string& input, const MethodOpts& o, const std::string& output,
                        const std::string& embedding_out, std::ostream& out) {
  const auto set = load_input(input);
  const FeatureConfig f = resolve_features(o, parse_method(o.method));
  const auto fm = compose_features(set, f);
  write_feature_dump(fm, output);
  if (!embedding_out.empty()) write_embedding_file(embed_pca(fm), embedding_out);
  out << "wrote " << fm.size() << " x " << fm.dim() << " features to " << output << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Motion-phase discovery in state-action trajectories"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default)");

  std::string input, out_dir, output, labels_out, embedding_out;
  MethodOpts mo;
  SynthOpts so;
  bool synth = false;

  auto* analyze = app.add_subcommand("analyze", "discover phases and write report + figures");
  analyze->add_option("--input,-i", input, "trajectory file")->required();
  add_method_opts(analyze, mo);
  add_seed_opts(analyze, mo);
  analyze->add_option("--out,-o", out_dir, std::string("output directory (default: $") + kOutputDirEnv + ")");
  analyze->get_option("--method")->description("baseline | proposed | custom | compare");

  auto* ablate = app.add_subcommand("ablate", "feature x objective grid over seeds");
  ablate->add_option("--input,-i", input, "trajectory file");
  ablate->add_flag("--synth", synth, "generate synthetic rings per seed instead of reading --input");
  add_synth_opts(ablate, so);
  ablate->add_option("--labels", mo.labels, "ground-truth label file for ARI (file input)");
  ablate->add_option("--k-min", mo.k_min)->capture_default_str();
  ablate->add_option("--k-max", mo.k_max)->capture_default_str();
  add_seed_opts(ablate, mo);
  ablate->add_option("--out,-o", out_dir, "output directory");

  auto* curve = app.add_subcommand("curve", "per-K selection table and plot");
  curve->add_option("--input,-i", input, "trajectory file")->required();
  add_method_opts(curve, mo);
  curve->add_option("--out,-o", out_dir, "output directory");

  auto* synth_cmd = app.add_subcommand("synth", "write a synthetic phase-ring trajectory file");
  add_synth_opts(synth_cmd, so);
  synth_cmd->add_option("--seed", so.seed)->capture_default_str();
  synth_cmd->add_option("--output,-o", output, "trajectory file to write")->required();
  synth_cmd->add_option("--labels", labels_out, "label sidecar (default: <output>.labels)");

  auto* export_cmd = app.add_subcommand("export-features", "dump the clustering feature matrix");
  export_cmd->add_option("--input,-i", input, "trajectory file")->required();
  add_feature_opts(export_cmd, mo);
  export_cmd->add_option("--output,-o", output, "feature dump to write")->required();
  export_cmd->add_option("--embedding-out", embedding_out, "also write the PCA embedding");

  std::vector<std::string> argv_store{"phaseid"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  set_threads(threads);

  try {
    if (analyze->parsed()) return cmd_analyze(input, mo, out_dir, out);
    if (ablate->parsed()) return cmd_ablate(input, synth, so, mo, out_dir, out);
    if (curve->parsed()) return cmd_curve(input, mo, out_dir, out);
    if (synth_cmd->parsed()) return cmd_synth(so, output, labels_out, out);
    if (export_cmd->parsed()) return cmd_export_features(input, mo, output, embedding_out, out);
  } catch (const StageError& e) {
    err << "error [" << e.stage() << "]: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace phaseid::cli
