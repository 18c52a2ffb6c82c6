#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wisard/encoding.hpp"

namespace wisard {

enum class MappingKind { Random, Linear };
enum class DecisionMode { Threshold, Argmax };

std::string_view to_string(MappingKind kind);
std::string_view to_string(DecisionMode mode);
MappingKind parse_mapping_kind(std::string_view text);
DecisionMode parse_decision_mode(std::string_view text);

/// Addresses are held in 64 bits, which caps the tuple size.
inline constexpr std::size_t kMaxTupleSize = 63;

struct WisardConfig {
  std::size_t n = 12;
  std::uint64_t seed = 0;
  MappingKind mapping_kind = MappingKind::Random;
  DecisionMode decision_mode = DecisionMode::Threshold;
  /// Fraction of K that the positive discriminator must exceed (threshold mode).
  double threshold_fraction = 0.5;

  /// Throws ConfigError on n outside [1, kMaxTupleSize] or fraction outside [0, 1].
  void validate() const;

  friend bool operator==(const WisardConfig&, const WisardConfig&) = default;
};

/// Partition of retina bit indices into K tuples of n bits.
class TupleMapping {
public:
  TupleMapping() = default;
  /// Validates the permutation invariant; throws ConfigError on violation.
  TupleMapping(std::size_t length, std::size_t n, std::vector<std::vector<std::size_t>> tuples);

  std::size_t length() const noexcept { return length_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return tuples_.size(); }
  const std::vector<std::vector<std::size_t>>& tuples() const noexcept { return tuples_; }

  /// Address read by tuple `k`; the first listed index is the most significant bit.
  std::uint64_t address(const BitPattern& p, std::size_t k) const;

  friend bool operator==(const TupleMapping&, const TupleMapping&) = default;

private:
  std::size_t length_ = 0;
  std::size_t n_ = 0;
  std::vector<std::vector<std::size_t>> tuples_;
};

/// `n` must divide `length` (pad first). Random mappings chunk a seeded
/// Fisher-Yates shuffle of 0..length-1.
TupleMapping build_mapping(std::size_t length, std::size_t n, std::uint64_t seed, MappingKind kind);

/// Sparse RAM: address -> write count. Absent addresses have count 0.
class RamNeuron {
public:
  void write(std::uint64_t address) { ++contents_[address]; }
  std::uint32_t count(std::uint64_t address) const {
    const auto it = contents_.find(address);
    return it == contents_.end() ? 0 : it->second;
  }
  bool fires(std::uint64_t address, std::uint32_t bleach = 0) const {
    return count(address) > bleach;
  }

  /// Stored (address, count) pairs in ascending address order.
  const std::map<std::uint64_t, std::uint32_t>& contents() const noexcept { return contents_; }
  void set(std::uint64_t address, std::uint32_t count) { contents_[address] = count; }

  friend bool operator==(const RamNeuron&, const RamNeuron&) = default;

private:
  std::map<std::uint64_t, std::uint32_t> contents_;
};

struct Discriminator {
  Label class_label = kNegative;
  std::vector<RamNeuron> rams;
  std::size_t trained_count = 0;

  friend bool operator==(const Discriminator&, const Discriminator&) = default;
};

struct Response {
  std::map<Label, std::size_t> fired;
  std::size_t k_total = 0;

  /// Fired RAMs for `label`; 0 for a class the model never saw.
  std::size_t fired_for(Label label) const {
    const auto it = fired.find(label);
    return it == fired.end() ? 0 : it->second;
  }
};

struct Classification {
  Label label = kNegative;
  Response response;
};

class WisardModel {
public:
  /// `input_bits` is the unpadded retina length; the mapping covers the
  /// padded length.
  WisardModel(WisardConfig config, TupleMapping mapping, std::size_t input_bits);

  /// Pads `input_bits` to a multiple of config.n and builds the mapping from
  /// config.seed and config.mapping_kind.
  static WisardModel create(const WisardConfig& config, std::size_t input_bits);

  const WisardConfig& config() const noexcept { return config_; }
  const TupleMapping& mapping() const noexcept { return mapping_; }
  std::size_t input_bits() const noexcept { return input_bits_; }
  std::size_t retina_length() const noexcept { return mapping_.length(); }
  std::size_t k() const noexcept { return mapping_.k(); }

  const std::map<Label, Discriminator>& discriminators() const noexcept { return discriminators_; }
  std::size_t trained_count(Label label) const;

  /// `pattern` must already be padded to retina_length().
  void train(const BitPattern& pattern, Label label);

  Response response(const BitPattern& pattern, std::uint32_t bleach = 0) const;

  /// Threshold mode: positive iff fired[positive] > ceil(fraction * K).
  /// Argmax mode: class with most fired RAMs, ties to the smallest label.
  Classification classify(const BitPattern& pattern, std::uint32_t bleach = 0) const;

  /// Binarizes, pads and classifies a raw feature vector.
  Classification classify(const FeatureVector& v, std::uint32_t bleach = 0) const;
  void train(const FeatureVector& v);

  /// Direct access for deserialization.
  Discriminator& discriminator(Label label);

  friend bool operator==(const WisardModel&, const WisardModel&) = default;

private:
  void check_length(const BitPattern& pattern) const;

  WisardConfig config_;
  TupleMapping mapping_;
  std::size_t input_bits_ = 0;
  std::map<Label, Discriminator> discriminators_;
};

/// Integer cutoff used by threshold mode: ceil(fraction * k).
std::size_t threshold_cutoff(double fraction, std::size_t k);

/// binarize + pad: the retina the model consumes for `v`.
BitPattern encode_retina(const FeatureVector& v, std::size_t n);

}  // namespace wisard
