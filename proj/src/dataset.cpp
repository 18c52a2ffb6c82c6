#include "wisard/dataset.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "wisard/random.hpp"
#include "wisard/text_io.hpp"

namespace wisard {

using Kind = DatasetError::Kind;

Dataset::Dataset(std::vector<FeatureVector> samples, bool require_labels)
    : samples_(std::move(samples)) {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const FeatureVector& s = samples_[i];
    const auto d = static_cast<std::size_t>(s.values.size());
    if (d == 0) throw DatasetError(Kind::Dimension, 0, "sample '" + s.id + "' has no features");
    if (i == 0) dimension_ = d;
    if (d != dimension_)
      throw DatasetError(Kind::Dimension, 0,
                         "sample '" + s.id + "' has " + std::to_string(d) +
                             " features, expected " + std::to_string(dimension_));
    if (!s.values.allFinite())
      throw DatasetError(Kind::Number, 0, "sample '" + s.id + "' has non-finite features");
    if (s.label) {
      if (*s.label != kNegative && *s.label != kPositive)
        throw DatasetError(Kind::Label, 0, "sample '" + s.id + "' has a non-binary label");
      ++counts_[*s.label];
    } else if (require_labels) {
      throw DatasetError(Kind::Label, 0, "sample '" + s.id + "' is unlabeled");
    }
    if (!index_.emplace(s.id, i).second)
      throw DatasetError(Kind::DuplicateId, 0, "duplicate id '" + s.id + "'");
  }
}

std::size_t Dataset::count(Label label) const {
  const auto it = counts_.find(label);
  return it == counts_.end() ? 0 : it->second;
}

std::size_t Dataset::index_of(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw DatasetError(Kind::Io, 0, "unknown sample id '" + id + "'");
  return it->second;
}

namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::size_t parse_header(const std::string& line) {
  const auto cols = text::split(line, ',');
  if (cols.size() < 3 || cols[0] != "id" || cols[1] != "label")
    throw DatasetError(Kind::Header, 1, "header must be id,label,f0,...,f{D-1}");
  for (std::size_t j = 2; j < cols.size(); ++j)
    if (cols[j] != "f" + std::to_string(j - 2))
      throw DatasetError(Kind::Header, 1,
                         "header column " + std::to_string(j + 1) + " should be f" +
                             std::to_string(j - 2));
  return cols.size() - 2;
}

}  // namespace

Dataset parse_feature_csv(std::istream& in, const LoadOptions& options) {
  std::string line;
  if (!std::getline(in, line)) throw DatasetError(Kind::Empty, 0, "no samples (missing header)");
  strip_cr(line);
  const std::size_t d = parse_header(line);

  std::vector<FeatureVector> samples;
  std::unordered_set<std::string> ids;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto cols = text::split(line, ',');
    if (cols.size() != d + 2)
      throw DatasetError(Kind::Dimension, line_no,
                         "expected " + std::to_string(d) + " features, found " +
                             std::to_string(cols.size() < 2 ? 0 : cols.size() - 2));
    FeatureVector fv;
    fv.id = std::string(cols[0]);
    if (fv.id.empty()) throw DatasetError(Kind::Header, line_no, "empty id");
    if (!ids.insert(fv.id).second)
      throw DatasetError(Kind::DuplicateId, line_no, "duplicate id '" + fv.id + "'");
    if (cols[1] == "0" || cols[1] == "1") {
      fv.label = cols[1] == "1" ? kPositive : kNegative;
    } else if (!(cols[1].empty() && !options.require_labels)) {
      throw DatasetError(Kind::Label, line_no,
                         "label must be 0 or 1, got '" + std::string(cols[1]) + "'");
    }
    fv.values.resize(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) {
      const auto value = text::parse_number<double>(cols[j + 2]);
      if (!value || !std::isfinite(*value))
        throw DatasetError(Kind::Number, line_no,
                           "bad value '" + std::string(cols[j + 2]) + "' for f" +
                               std::to_string(j));
      fv.values[static_cast<Eigen::Index>(j)] = *value;
    }
    samples.push_back(std::move(fv));
  }
  if (samples.empty() && !options.allow_empty) throw DatasetError(Kind::Empty, 0, "no samples");
  return Dataset(std::move(samples), options.require_labels);
}

Dataset load_feature_file(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError(Kind::Io, 0, "cannot open feature file " + path.string());
  return parse_feature_csv(in, options);
}

std::size_t feature_file_dimension(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError(Kind::Io, 0, "cannot open feature file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw DatasetError(Kind::Empty, 0, "no samples (missing header)");
  strip_cr(line);
  return parse_header(line);
}

std::string format_feature_csv(const Dataset& ds) {
  std::ostringstream out;
  out << "id,label";
  for (std::size_t j = 0; j < ds.dimension(); ++j) out << ",f" << j;
  out << '\n';
  for (const FeatureVector& s : ds.samples()) {
    out << s.id << ',';
    if (s.label) out << *s.label;
    for (Eigen::Index j = 0; j < s.values.size(); ++j)
      out << ',' << text::format_double(s.values[j]);
    out << '\n';
  }
  return out.str();
}

FoldPlan make_loo_plan(const Dataset& ds, std::size_t pos_group, std::size_t neg_group,
                       std::uint64_t seed) {
  if (pos_group == 0 || neg_group == 0) throw PlanError("group sizes must be at least 1");
  std::vector<std::size_t> positives, negatives;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!ds[i].label) throw PlanError("sample '" + ds[i].id + "' is unlabeled");
    (*ds[i].label == kPositive ? positives : negatives).push_back(i);
  }
  if (negatives.size() < neg_group)
    throw PlanError("insufficient negatives: need " + std::to_string(neg_group) + ", have " +
                    std::to_string(negatives.size()));
  const std::size_t fold_count = negatives.size() / neg_group;
  if (positives.size() < pos_group * fold_count)
    throw PlanError("insufficient positives: " + std::to_string(fold_count) + " folds of " +
                    std::to_string(pos_group) + " need " +
                    std::to_string(pos_group * fold_count) + ", have " +
                    std::to_string(positives.size()));

  Rng(seed).shuffle(std::span<std::size_t>(positives));

  FoldPlan plan;
  plan.seed = seed;
  plan.pos_group = pos_group;
  plan.neg_group = neg_group;
  plan.folds.reserve(fold_count);
  for (std::size_t f = 0; f < fold_count; ++f) {
    std::vector<bool> in_test(ds.size(), false);
    Fold fold;
    for (std::size_t j = 0; j < pos_group; ++j) {
      const std::size_t idx = positives[f * pos_group + j];
      in_test[idx] = true;
      fold.test_ids.push_back(ds[idx].id);
    }
    for (std::size_t j = 0; j < neg_group; ++j) {
      const std::size_t idx = negatives[f * neg_group + j];
      in_test[idx] = true;
      fold.test_ids.push_back(ds[idx].id);
    }
    for (std::size_t i = 0; i < ds.size(); ++i)
      if (!in_test[i]) fold.train_ids.push_back(ds[i].id);
    if (fold.train_ids.empty())
      throw PlanError("empty training set in fold " + std::to_string(f));
    plan.folds.push_back(std::move(fold));
  }
  return plan;
}

void check_plan(const FoldPlan& plan, const Dataset& ds) {
  std::unordered_set<std::string> tested;
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    const Fold& fold = plan.folds[f];
    const std::string where = "fold " + std::to_string(f) + ": ";
    if (fold.train_ids.empty()) throw PlanError(where + "empty training set");
    std::vector<int> seen(ds.size(), 0);
    for (const auto& id : fold.test_ids) {
      ++seen[ds.index_of(id)];
      if (!tested.insert(id).second) throw PlanError(where + "test id '" + id + "' reused");
    }
    for (const auto& id : fold.train_ids) ++seen[ds.index_of(id)];
    for (std::size_t i = 0; i < ds.size(); ++i)
      if (seen[i] != 1)
        throw PlanError(where + "sample '" + ds[i].id +
                        (seen[i] ? "' is in both train and test" : "' is in neither set"));
  }
}

std::string save_plan(const FoldPlan& plan) {
  std::ostringstream out;
  auto join = [&out](const std::vector<std::string>& ids) {
    for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? "," : "") << ids[i];
  };
  out << "fold-plan 1\n"
      << "seed " << plan.seed << '\n'
      << "pos_group " << plan.pos_group << '\n'
      << "neg_group " << plan.neg_group << '\n'
      << "folds " << plan.folds.size() << '\n';
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    out << "fold " << f << "\ntest ";
    join(plan.folds[f].test_ids);
    out << "\ntrain ";
    join(plan.folds[f].train_ids);
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

FoldPlan load_plan(const std::string& text_in) {
  std::istringstream in(text_in);
  std::string line;
  auto next = [&]() -> std::string {
    if (!std::getline(in, line)) throw PlanError("fold plan ends early");
    return line;
  };
  auto value = [&](std::string_view key) -> std::string {
    const std::string l = next();
    if (l.rfind(std::string(key) + " ", 0) != 0)
      throw PlanError("fold plan: expected '" + std::string(key) + "'");
    return l.substr(key.size() + 1);
  };
  auto number = [&](std::string_view key) {
    const auto v = text::parse_number<std::uint64_t>(value(key));
    if (!v) throw PlanError("fold plan: bad number for '" + std::string(key) + "'");
    return *v;
  };
  auto ids = [](const std::string& s) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    for (auto tok : text::split(s, ',')) out.emplace_back(tok);
    return out;
  };

  if (next() != "fold-plan 1") throw PlanError("not a version 1 fold plan");
  FoldPlan plan;
  plan.seed = number("seed");
  plan.pos_group = number("pos_group");
  plan.neg_group = number("neg_group");
  const auto count = number("folds");
  for (std::uint64_t f = 0; f < count; ++f) {
    if (number("fold") != f) throw PlanError("fold plan: folds out of order");
    Fold fold;
    fold.test_ids = ids(value("test"));
    fold.train_ids = ids(value("train"));
    plan.folds.push_back(std::move(fold));
  }
  if (next() != "end") throw PlanError("fold plan: expected 'end'");
  return plan;
}

}  // namespace wisard
