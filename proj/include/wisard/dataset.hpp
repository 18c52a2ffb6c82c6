#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "wisard/encoding.hpp"

namespace wisard {

/// Labeled samples of uniform dimension with unique ids.
class Dataset {
public:
  Dataset() = default;
  /// Validates the invariants; throws DatasetError on violation.
  explicit Dataset(std::vector<FeatureVector> samples, bool require_labels = true);

  const std::vector<FeatureVector>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  std::size_t dimension() const noexcept { return dimension_; }
  const std::map<Label, std::size_t>& counts() const noexcept { return counts_; }
  std::size_t count(Label label) const;

  const FeatureVector& operator[](std::size_t i) const { return samples_[i]; }
  /// Throws DatasetError if `id` is unknown.
  std::size_t index_of(const std::string& id) const;

private:
  std::vector<FeatureVector> samples_;
  std::size_t dimension_ = 0;
  std::map<Label, std::size_t> counts_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct LoadOptions {
  /// When false, an empty label field yields an unlabeled sample.
  bool require_labels = true;
  /// When false, a header-only file is an error.
  bool allow_empty = false;
};

/// Parses the comma-separated feature format: header `id,label,f0,...,f{D-1}`
/// then one row per sample. Errors carry the 1-based line number.
Dataset parse_feature_csv(std::istream& in, const LoadOptions& options = {});
Dataset load_feature_file(const std::filesystem::path& path, const LoadOptions& options = {});

/// Dimension declared by a feature file's header, whether or not rows follow.
std::size_t feature_file_dimension(const std::filesystem::path& path);

/// Inverse of parse_feature_csv; values are written round-trippable.
std::string format_feature_csv(const Dataset& ds);

struct Fold {
  std::vector<std::string> test_ids;
  std::vector<std::string> train_ids;

  friend bool operator==(const Fold&, const Fold&) = default;
};

struct FoldPlan {
  std::vector<Fold> folds;
  std::uint64_t seed = 0;
  std::size_t pos_group = 3;
  std::size_t neg_group = 1;

  friend bool operator==(const FoldPlan&, const FoldPlan&) = default;
};

/// Grouped leave-one-out: floor(#neg / neg_group) folds, each testing one
/// seeded-shuffled group of positives and one group of negatives; every
/// other sample trains. Positives beyond the groups used are never tested.
FoldPlan make_loo_plan(const Dataset& ds, std::size_t pos_group = 3, std::size_t neg_group = 1,
                       std::uint64_t seed = 0);

/// Throws PlanError unless every fold partitions `ds` and no test id repeats.
void check_plan(const FoldPlan& plan, const Dataset& ds);

std::string save_plan(const FoldPlan& plan);
FoldPlan load_plan(const std::string& text);

}  // namespace wisard
