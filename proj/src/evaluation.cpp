#include "wisard/evaluation.hpp"

#include <sstream>
#include <unordered_set>

#include "wisard/text_io.hpp"

namespace wisard {

void ConfusionMatrix::add(Label predicted, Label truth) {
  if (truth == kPositive)
    ++(predicted == kPositive ? tp : fn);
  else
    ++(predicted == kPositive ? fp : tn);
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  tp += other.tp;
  fp += other.fp;
  tn += other.tn;
  fn += other.fn;
  return *this;
}

AccuracyResult accuracy(std::span<const Label> predicted, std::span<const Label> truth) {
  if (predicted.size() != truth.size())
    throw EvaluationError("prediction and label sequences differ in length (" +
                          std::to_string(predicted.size()) + " vs " +
                          std::to_string(truth.size()) + ")");
  if (predicted.empty()) throw EvaluationError("no predictions to score");
  AccuracyResult r;
  for (std::size_t i = 0; i < predicted.size(); ++i) r.confusion.add(predicted[i], truth[i]);
  r.accuracy = r.confusion.accuracy();
  return r;
}

namespace {

struct FoldIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Resolves ids to row indices and asserts no test id leaks into training.
FoldIndices resolve_fold(const Dataset& ds, const Fold& fold, std::size_t f) {
  FoldIndices out;
  std::unordered_set<std::size_t> train_set;
  for (const auto& id : fold.train_ids) {
    out.train.push_back(ds.index_of(id));
    train_set.insert(out.train.back());
  }
  for (const auto& id : fold.test_ids) {
    out.test.push_back(ds.index_of(id));
    if (train_set.contains(out.test.back()))
      throw EvaluationError("fold " + std::to_string(f) + ": test id '" + id +
                            "' is also in the training set");
  }
  return out;
}

template <typename TrainAndPredict>
CrossValidationResult cross_validate(const Dataset& ds, const FoldPlan& plan,
                                     TrainAndPredict&& run_fold) {
  try {
    check_plan(plan, ds);
  } catch (const Error& e) {
    throw EvaluationError(std::string("fold plan does not match dataset: ") + e.what());
  }
  CrossValidationResult result;
  result.folds.reserve(plan.folds.size());
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    FoldResult fold;
    fold.fold = f;
    try {
      const FoldIndices idx = resolve_fold(ds, plan.folds[f], f);
      fold.predictions = run_fold(idx);
    } catch (const EvaluationError&) {
      throw;
    } catch (const Error& e) {
      throw EvaluationError("fold " + std::to_string(f) + ": " + e.what());
    }
    for (const Prediction& p : fold.predictions) fold.confusion.add(p.predicted, p.truth);
    result.pooled += fold.confusion;
    result.folds.push_back(std::move(fold));
  }
  return result;
}

CrossValidationResult run_wisard_cv(const Dataset& ds, const FoldPlan& plan,
                                    const WisardConfig& cfg,
                                    const std::vector<BitPattern>& binarized) {
  cfg.validate();
  return cross_validate(ds, plan, [&](const FoldIndices& idx) {
    WisardModel model = WisardModel::create(cfg, ds.dimension());
    for (std::size_t i : idx.train) model.train(pad_to_multiple(binarized[i], cfg.n), *ds[i].label);
    std::vector<Prediction> preds;
    for (std::size_t i : idx.test) {
      const Classification c = model.classify(pad_to_multiple(binarized[i], cfg.n));
      preds.push_back({ds[i].id, *ds[i].label, c.label, c.response.fired_for(c.label),
                       c.response.k_total});
    }
    return preds;
  });
}

std::vector<BitPattern> binarize_all(const Dataset& ds) {
  std::vector<BitPattern> out;
  out.reserve(ds.size());
  for (const auto& s : ds.samples()) out.push_back(binarize_mean_threshold(s));
  return out;
}

}  // namespace

CrossValidationResult run_cross_validation(const Dataset& ds, const FoldPlan& plan,
                                           const WisardConfig& cfg) {
  return run_wisard_cv(ds, plan, cfg, binarize_all(ds));
}

CrossValidationResult run_perceptron_cross_validation(const Dataset& ds, const FoldPlan& plan,
                                                      const PerceptronHyper& hyper) {
  hyper.validate();
  return cross_validate(ds, plan, [&](const FoldIndices& idx) {
    std::vector<Label> labels;
    for (std::size_t i : idx.train) labels.push_back(*ds[i].label);
    const auto model = train_perceptron<double>(feature_matrix(ds, idx.train), labels, hyper);
    std::vector<Prediction> preds;
    for (std::size_t i : idx.test)
      preds.push_back({ds[i].id, *ds[i].label, predict_perceptron(model, ds[i]), 0, 0});
    return preds;
  });
}

const SweepRow& SweepResult::best() const {
  if (rows.empty()) throw EvaluationError("empty sweep");
  const SweepRow* best = &rows.front();
  for (const SweepRow& r : rows)
    if (r.accuracy > best->accuracy) best = &r;
  return *best;
}

SweepResult sweep_tuple_size(const Dataset& ds, const FoldPlan& plan, const WisardConfig& base,
                             std::size_t n_min, std::size_t n_max) {
  if (n_min < 1 || n_min > n_max)
    throw ConfigError("invalid tuple size range " + std::to_string(n_min) + ".." +
                      std::to_string(n_max));
  const std::vector<BitPattern> binarized = binarize_all(ds);
  SweepResult sweep;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    WisardConfig cfg = base;
    cfg.n = n;
    CrossValidationResult cv = run_wisard_cv(ds, plan, cfg, binarized);
    sweep.rows.push_back({n, cv.accuracy(), cv.pooled, std::move(cv)});
  }
  return sweep;
}

namespace {

void write_confusion(std::ostringstream& out, const ConfusionMatrix& c) {
  out << text::format_fixed(c.accuracy(), 4) << ',' << c.tp << ',' << c.fp << ',' << c.tn << ','
      << c.fn << '\n';
}

}  // namespace

std::string format_sweep_csv(const SweepResult& sweep) {
  std::ostringstream out;
  out << "n,accuracy,tp,fp,tn,fn\n";
  for (const SweepRow& r : sweep.rows) {
    out << r.n << ',';
    write_confusion(out, r.confusion);
  }
  return out.str();
}

std::string format_comparison_csv(std::span<const ComparisonRow> rows) {
  std::ostringstream out;
  out << "system,accuracy\n";
  for (const ComparisonRow& r : rows) out << r.system << ',' << text::format_fixed(r.accuracy, 4) << '\n';
  return out.str();
}

std::string format_folds_csv(const SweepResult& sweep) {
  std::ostringstream out;
  out << "n,fold,accuracy,tp,fp,tn,fn\n";
  for (const SweepRow& r : sweep.rows)
    for (const FoldResult& f : r.detail.folds) {
      out << r.n << ',' << f.fold << ',';
      write_confusion(out, f.confusion);
    }
  return out.str();
}

void emit_report(const SweepResult& sweep, std::span<const ComparisonRow> comparison,
                 const std::filesystem::path& dir) {
  if (sweep.rows.empty()) throw EvaluationError("no sweep results to report");
  if (comparison.empty()) throw EvaluationError("no comparison rows to report");
  try {
    text::write_file_atomic(dir / "sweep.csv", format_sweep_csv(sweep));
    text::write_file_atomic(dir / "comparison.csv", format_comparison_csv(comparison));
  } catch (const std::runtime_error& e) {
    throw EvaluationError(std::string("cannot write report: ") + e.what());
  }
}

}  // namespace wisard
