#include "cli_commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <vector>

#include "wisard/dataset.hpp"
#include "wisard/evaluation.hpp"
#include "wisard/model_io.hpp"
#include "wisard/text_io.hpp"

namespace wisard::cli {

TupleRange parse_range(const std::string& text) {
  const auto parts = text::split(text, ':');
  if (parts.size() == 1) {
    const auto n = text::parse_number<std::size_t>(parts[0]);
    if (!n) throw ConfigError("bad tuple size range '" + text + "'");
    return {*n, *n};
  }
  if (parts.size() != 2) throw ConfigError("tuple size range must be lo:hi, got '" + text + "'");
  const auto lo = text::parse_number<std::size_t>(parts[0]);
  const auto hi = text::parse_number<std::size_t>(parts[1]);
  if (!lo || !hi) throw ConfigError("bad tuple size range '" + text + "'");
  return {*lo, *hi};
}

void RunConfig::validate() const {
  wisard.validate();
  if (pos_group == 0 || neg_group == 0) throw ConfigError("group sizes must be at least 1");
  if (sweep) {
    if (sweep->min < 1 || sweep->min > sweep->max || sweep->max > kMaxTupleSize)
      throw ConfigError("tuple size range must satisfy 1 <= lo <= hi <= " +
                        std::to_string(kMaxTupleSize));
  }
  if (perceptron_baseline) perceptron.validate();
}

int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    const Dataset ds = load_feature_file(cfg.features);
    WisardModel model = WisardModel::create(cfg.wisard, ds.dimension());
    for (const auto& s : ds.samples()) model.train(s);
    save_model_file(model, cfg.model);
    out << "trained " << ds.size() << " samples, D=" << ds.dimension() << ", K=" << model.k()
        << '\n';
    for (const auto& [label, d] : model.discriminators())
      out << "class " << label << ": " << d.trained_count << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "train: " << e.what() << '\n';
    return 1;
  }
}

int cmd_predict(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const WisardModel model = load_model_file(cfg.model);
    const std::size_t d = feature_file_dimension(cfg.features);
    if (d != model.input_bits())
      throw ConfigError("feature dimension mismatch: model expects D=" +
                        std::to_string(model.input_bits()) + ", file has D=" + std::to_string(d));
    const Dataset ds = load_feature_file(cfg.features, {.require_labels = false, .allow_empty = true});
    std::ostringstream buf;
    buf << "id,predicted_label,fired,k_total\n";
    for (const auto& s : ds.samples()) {
      const Classification c = model.classify(s);
      buf << s.id << ',' << c.label << ',' << c.response.fired_for(c.label) << ','
          << c.response.k_total << '\n';
    }
    out << buf.str();
    return 0;
  } catch (const std::exception& e) {
    err << "predict: " << e.what() << '\n';
    return 1;
  }
}

std::string format_manifest(const RunConfig& cfg, std::size_t best_n) {
  std::ostringstream m;
  const TupleRange range = cfg.sweep.value_or(TupleRange{cfg.wisard.n, cfg.wisard.n});
  m << "features " << cfg.features.string() << '\n'
    << "raw_features " << cfg.raw_features.string() << '\n'
    << "n_range " << range.min << ':' << range.max << '\n'
    << "best_n " << best_n << '\n'
    << "seed " << cfg.wisard.seed << '\n'
    << "mapping_kind " << to_string(cfg.wisard.mapping_kind) << '\n'
    << "decision_mode " << to_string(cfg.wisard.decision_mode) << '\n'
    << "threshold_fraction " << text::format_double(cfg.wisard.threshold_fraction) << '\n'
    << "pos_group " << cfg.pos_group << '\n'
    << "neg_group " << cfg.neg_group << '\n'
    << "baseline " << (cfg.perceptron_baseline ? "perceptron" : "none") << '\n';
  if (cfg.perceptron_baseline)
    m << "perceptron_epochs " << cfg.perceptron.epochs << '\n'
      << "perceptron_lr " << text::format_double(cfg.perceptron.learning_rate) << '\n'
      << "perceptron_note same feature vectors as wisard_tl, full-width single layer\n";
  m << "model_out " << cfg.model_out.string() << '\n';
  return m.str();
}

int cmd_crossval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    const TupleRange range = cfg.sweep.value_or(TupleRange{cfg.wisard.n, cfg.wisard.n});
    const Dataset ds = load_feature_file(cfg.features);
    const FoldPlan plan = make_loo_plan(ds, cfg.pos_group, cfg.neg_group, cfg.wisard.seed);

    const SweepResult sweep = sweep_tuple_size(ds, plan, cfg.wisard, range.min, range.max);
    const SweepRow& best = sweep.best();
    std::vector<ComparisonRow> comparison{{kSystemWisardTl, best.accuracy}};

    if (!cfg.raw_features.empty()) {
      const Dataset raw = load_feature_file(cfg.raw_features);
      const FoldPlan raw_plan = make_loo_plan(raw, cfg.pos_group, cfg.neg_group, cfg.wisard.seed);
      const SweepResult raw_sweep =
          sweep_tuple_size(raw, raw_plan, cfg.wisard, range.min, range.max);
      comparison.push_back({kSystemWisardNoTl, raw_sweep.best().accuracy});
    }
    if (cfg.perceptron_baseline) {
      PerceptronHyper hyper = cfg.perceptron;
      hyper.seed = cfg.wisard.seed;
      const auto cv = run_perceptron_cross_validation(ds, plan, hyper);
      comparison.push_back({kSystemPerceptron, cv.accuracy()});
    }

    std::filesystem::create_directories(cfg.output);
    emit_report(sweep, comparison, cfg.output);
    text::write_file_atomic(cfg.output / "folds.csv", format_folds_csv(sweep));
    text::write_file_atomic(cfg.output / "fold_plan.txt", save_plan(plan));
    if (!cfg.model_out.empty()) {
      WisardConfig final_cfg = cfg.wisard;
      final_cfg.n = best.n;
      WisardModel model = WisardModel::create(final_cfg, ds.dimension());
      for (const auto& s : ds.samples()) model.train(s);
      save_model_file(model, cfg.model_out);
    }
    text::write_file_atomic(cfg.output / "run_manifest.txt", format_manifest(cfg, best.n));

    out << "folds " << plan.folds.size() << ", pooled predictions "
        << best.detail.prediction_count() << '\n';
    for (const SweepRow& r : sweep.rows)
      out << "n=" << r.n << " accuracy " << text::format_fixed(r.accuracy, 4) << '\n';
    for (const ComparisonRow& r : comparison)
      out << r.system << ' ' << text::format_fixed(r.accuracy, 4) << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "crossval: " << e.what() << '\n';
    return 1;
  }
}

namespace {

void add_wisard_flags(CLI::App* cmd, RunConfig& cfg, std::string& mapping, std::string& mode) {
  cmd->add_option("--n", cfg.wisard.n, "bits per RAM (tuple size)")
      ->check(CLI::Range(std::size_t{1}, kMaxTupleSize));
  cmd->add_option("--seed", cfg.wisard.seed, "seed for mapping, fold grouping and baseline");
  cmd->add_option("--mapping", mapping, "retina-to-RAM mapping")
      ->check(CLI::IsMember({"random", "linear"}));
  cmd->add_option("--decision-mode", mode, "decision rule")
      ->check(CLI::IsMember({"threshold", "argmax"}));
  cmd->add_option("--threshold-fraction", cfg.wisard.threshold_fraction,
                  "fraction of K the positive discriminator must exceed")
      ->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"WiSARD weightless neural network classifier"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string mapping = "random";
  std::string mode = "threshold";
  std::string sweep_text;
  std::string baseline;

  auto* train = app.add_subcommand("train", "train a model on every labeled row");
  train->add_option("--features", cfg.features, "feature file")->required();
  train->add_option("--out", cfg.model, "model file to write")->required();
  add_wisard_flags(train, cfg, mapping, mode);

  auto* predict = app.add_subcommand("predict", "classify rows of a feature file");
  predict->add_option("--model", cfg.model, "model file")->required();
  predict->add_option("--features", cfg.features, "feature file")->required();

  auto add_crossval = [&](CLI::App* cmd) {
    cmd->add_option("--features", cfg.features, "feature file")->required();
    cmd->add_option("--output-dir,--out", cfg.output, "directory for report files")->required();
    cmd->add_option("--raw-features", cfg.raw_features,
                    "feature file without transfer learning (adds wisard_no_tl)");
    cmd->add_option("--model-out", cfg.model_out, "also save a model trained on all rows");
    cmd->add_option("--pos-group", cfg.pos_group, "positives per test fold");
    cmd->add_option("--neg-group", cfg.neg_group, "negatives per test fold");
    cmd->add_option("--sweep", sweep_text, "tuple size range lo:hi");
    cmd->add_option("--baseline", baseline, "extra baseline system")
        ->check(CLI::IsMember({"perceptron"}));
    cmd->add_option("--epochs", cfg.perceptron.epochs, "perceptron epochs");
    cmd->add_option("--lr", cfg.perceptron.learning_rate, "perceptron learning rate");
    add_wisard_flags(cmd, cfg, mapping, mode);
  };
  auto* crossval = app.add_subcommand("crossval", "grouped leave-one-out evaluation");
  add_crossval(crossval);
  auto* sweep = app.add_subcommand("sweep", "crossval over a tuple size range (default 9:14)");
  add_crossval(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    cfg.wisard.mapping_kind = parse_mapping_kind(mapping);
    cfg.wisard.decision_mode = parse_decision_mode(mode);
    if (!sweep_text.empty())
      cfg.sweep = parse_range(sweep_text);
    else if (sweep->parsed())
      cfg.sweep = TupleRange{9, 14};
    cfg.perceptron_baseline = baseline == "perceptron";
    cfg.validate();
  } catch (const Error& e) {
    std::cerr << "usage error: " << e.what() << '\n' << app.help();
    return 2;
  }

  if (train->parsed()) return cmd_train(cfg, std::cout, std::cerr);
  if (predict->parsed()) return cmd_predict(cfg, std::cout, std::cerr);
  return cmd_crossval(cfg, std::cout, std::cerr);
}

}  // namespace wisard::cli
