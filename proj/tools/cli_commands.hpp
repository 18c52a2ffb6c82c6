#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "wisard/perceptron.hpp"
#include "wisard/wisard.hpp"

namespace wisard::cli {

struct TupleRange {
  std::size_t min = 9;
  std::size_t max = 14;
};

/// Parses "lo:hi" (inclusive); throws ConfigError.
TupleRange parse_range(const std::string& text);

struct RunConfig {
  std::filesystem::path features;
  std::filesystem::path raw_features;
  std::filesystem::path model;
  std::filesystem::path output;
  std::filesystem::path model_out;
  WisardConfig wisard;
  std::size_t pos_group = 3;
  std::size_t neg_group = 1;
  std::optional<TupleRange> sweep;
  bool perceptron_baseline = false;
  PerceptronHyper perceptron;

  /// Throws ConfigError on invalid combinations.
  void validate() const;
};

/// Each command returns the process exit code; failures are reported on `err`.
int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_predict(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_crossval(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Effective configuration echoed beside crossval outputs.
std::string format_manifest(const RunConfig& cfg, std::size_t best_n);

/// Full command-line entry point.
int run(int argc, char** argv);

}  // namespace wisard::cli
