#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "wisard/dataset.hpp"
#include "wisard/perceptron.hpp"
#include "wisard/wisard.hpp"

namespace wisard {

/// Binary confusion counts, positive = 1.
struct ConfusionMatrix {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  double accuracy() const noexcept {
    return total() ? static_cast<double>(tp + tn) / static_cast<double>(total()) : 0.0;
  }
  void add(Label predicted, Label truth);
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct AccuracyResult {
  double accuracy = 0.0;
  ConfusionMatrix confusion;
};

/// Throws EvaluationError on empty input or length mismatch.
AccuracyResult accuracy(std::span<const Label> predicted, std::span<const Label> truth);

struct Prediction {
  std::string id;
  Label truth = kNegative;
  Label predicted = kNegative;
  /// Fired RAMs of the decisive discriminator; 0 for non-WiSARD systems.
  std::size_t fired = 0;
  std::size_t k_total = 0;
};

struct FoldResult {
  std::size_t fold = 0;
  std::vector<Prediction> predictions;
  ConfusionMatrix confusion;
};

struct CrossValidationResult {
  std::vector<FoldResult> folds;
  /// Micro-averaged over every test prediction of every fold.
  ConfusionMatrix pooled;

  double accuracy() const noexcept { return pooled.accuracy(); }
  std::size_t prediction_count() const noexcept { return pooled.total(); }
};

/// Trains a fresh WiSARD per fold (binarize, pad, train) and classifies the
/// fold's test samples. Errors are rethrown as EvaluationError naming the fold.
CrossValidationResult run_cross_validation(const Dataset& ds, const FoldPlan& plan,
                                           const WisardConfig& cfg);

/// Same protocol with the perceptron baseline on the raw feature vectors.
CrossValidationResult run_perceptron_cross_validation(const Dataset& ds, const FoldPlan& plan,
                                                      const PerceptronHyper& hyper);

struct SweepRow {
  std::size_t n = 0;
  double accuracy = 0.0;
  ConfusionMatrix confusion;
  CrossValidationResult detail;
};

struct SweepResult {
  std::vector<SweepRow> rows;

  /// Highest accuracy; the smaller n wins ties. Throws on an empty sweep.
  const SweepRow& best() const;
};

/// One cross-validation per n in [n_min, n_max], ascending, on the same plan.
SweepResult sweep_tuple_size(const Dataset& ds, const FoldPlan& plan, const WisardConfig& base,
                             std::size_t n_min = 9, std::size_t n_max = 14);

struct ComparisonRow {
  std::string system;
  double accuracy = 0.0;
};

inline constexpr const char* kSystemWisardTl = "wisard_tl";
inline constexpr const char* kSystemWisardNoTl = "wisard_no_tl";
inline constexpr const char* kSystemPerceptron = "perceptron_baseline";

std::string format_sweep_csv(const SweepResult& sweep);
std::string format_comparison_csv(std::span<const ComparisonRow> rows);
/// Per-fold metrics for every n of a sweep: n,fold,accuracy,tp,fp,tn,fn.
std::string format_folds_csv(const SweepResult& sweep);

/// Writes sweep.csv and comparison.csv under `dir`. Nothing is written when
/// either input is empty; I/O failures raise EvaluationError.
void emit_report(const SweepResult& sweep, std::span<const ComparisonRow> comparison,
                 const std::filesystem::path& dir);

}  // namespace wisard
