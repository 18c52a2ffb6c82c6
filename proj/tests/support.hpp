#pragma once

// Test-only helpers: random generators, a dense reference WiSARD, and the
// synthetic separable dataset used throughout the integration tests.

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "wisard/dataset.hpp"
#include "wisard/wisard.hpp"

namespace wisard::testing {

inline BitPattern random_pattern(std::mt19937_64& rng, std::size_t length) {
  std::bernoulli_distribution coin(0.5);
  BitPattern p(length);
  for (std::size_t i = 0; i < length; ++i) p.set(i, coin(rng));
  return p;
}

inline BitPattern pattern_from_integer(std::uint64_t value, std::size_t length) {
  BitPattern p(length);
  for (std::size_t i = 0; i < length; ++i) p.set(i, (value >> i) & 1U);
  return p;
}

/// Dense reference: one explicit 2^n table of write counts per RAM, rebuilt
/// from the full training list. Deliberately shares nothing with the sparse
/// implementation except the mapping tuples.
class DenseReference {
public:
  DenseReference(std::vector<std::vector<std::size_t>> tuples, std::size_t n)
      : tuples_(std::move(tuples)), n_(n) {}

  void train(const BitPattern& p, Label label) { examples_.emplace_back(p, label); }

  std::map<Label, std::size_t> fired(const BitPattern& p) const {
    std::map<Label, std::vector<std::vector<unsigned>>> tables;
    for (const auto& [pattern, label] : examples_) {
      auto& t = tables[label];
      if (t.empty()) t.assign(tuples_.size(), std::vector<unsigned>(std::size_t{1} << n_, 0));
      for (std::size_t k = 0; k < tuples_.size(); ++k) ++t[k][address(pattern, k)];
    }
    std::map<Label, std::size_t> out;
    for (const auto& [label, t] : tables) {
      std::size_t count = 0;
      for (std::size_t k = 0; k < tuples_.size(); ++k)
        if (t[k][address(p, k)] > 0) ++count;
      out[label] = count;
    }
    return out;
  }

  Label classify_threshold(const BitPattern& p, double fraction) const {
    const auto f = fired(p);
    const auto it = f.find(kPositive);
    const std::size_t pos = it == f.end() ? 0 : it->second;
    // smallest integer c with c >= fraction * K, by counting up
    std::size_t cutoff = 0;
    while (static_cast<double>(cutoff) < fraction * static_cast<double>(tuples_.size())) ++cutoff;
    return pos > cutoff ? kPositive : kNegative;
  }

  Label classify_argmax(const BitPattern& p) const {
    Label best_label = -1;
    std::size_t best = 0;
    for (const auto& [label, count] : fired(p))
      if (best_label < 0 || count > best || (count == best && label < best_label)) {
        best = count;
        best_label = label;
      }
    return best_label;
  }

private:
  std::size_t address(const BitPattern& p, std::size_t k) const {
    std::size_t addr = 0;
    for (std::size_t j = 0; j < n_; ++j)
      if (p[tuples_[k][j]]) addr |= std::size_t{1} << (n_ - 1 - j);
    return addr;
  }

  std::vector<std::vector<std::size_t>> tuples_;
  std::size_t n_;
  std::vector<std::pair<BitPattern, Label>> examples_;
};

/// Positives near +u, negatives near -u, for a fixed random sign vector u.
inline Dataset make_separable_dataset(std::size_t positives, std::size_t negatives,
                                      std::size_t dim = 2048, double sigma = 0.1,
                                      std::uint64_t seed = 2024) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::normal_distribution<double> noise(0.0, sigma);
  Eigen::VectorXd u(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = coin(rng) ? 1.0 : -1.0;

  std::vector<FeatureVector> samples;
  auto add = [&](const std::string& prefix, std::size_t count, double sign, Label label) {
    for (std::size_t s = 0; s < count; ++s) {
      FeatureVector fv{prefix + std::to_string(s), label, sign * u};
      for (Eigen::Index i = 0; i < fv.values.size(); ++i) fv.values[i] += noise(rng);
      samples.push_back(std::move(fv));
    }
  };
  add("pos", positives, 1.0, kPositive);
  add("neg", negatives, -1.0, kNegative);
  return Dataset(std::move(samples));
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("wisard_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream(path, std::ios::binary) << content;
}

}  // namespace wisard::testing
