#include "wisard/wisard.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wisard/random.hpp"

namespace wisard {

std::string_view to_string(MappingKind kind) {
  return kind == MappingKind::Random ? "random" : "linear";
}

std::string_view to_string(DecisionMode mode) {
  return mode == DecisionMode::Threshold ? "threshold" : "argmax";
}

MappingKind parse_mapping_kind(std::string_view text) {
  if (text == "random") return MappingKind::Random;
  if (text == "linear") return MappingKind::Linear;
  throw ConfigError("unknown mapping kind '" + std::string(text) + "'");
}

DecisionMode parse_decision_mode(std::string_view text) {
  if (text == "threshold") return DecisionMode::Threshold;
  if (text == "argmax") return DecisionMode::Argmax;
  throw ConfigError("unknown decision mode '" + std::string(text) + "'");
}

void WisardConfig::validate() const {
  if (n < 1 || n > kMaxTupleSize)
    throw ConfigError("tuple size n must be in [1, " + std::to_string(kMaxTupleSize) +
                      "], got " + std::to_string(n));
  if (!(threshold_fraction >= 0.0 && threshold_fraction <= 1.0))
    throw ConfigError("threshold_fraction must be in [0, 1]");
}

TupleMapping::TupleMapping(std::size_t length, std::size_t n,
                           std::vector<std::vector<std::size_t>> tuples)
    : length_(length), n_(n), tuples_(std::move(tuples)) {
  if (n_ < 1 || n_ > kMaxTupleSize) throw ConfigError("invalid tuple size " + std::to_string(n_));
  if (length_ == 0 || length_ % n_ != 0)
    throw ConfigError("retina length " + std::to_string(length_) +
                      " is not a positive multiple of n = " + std::to_string(n_));
  if (tuples_.size() != length_ / n_)
    throw ConfigError("expected " + std::to_string(length_ / n_) + " tuples, got " +
                      std::to_string(tuples_.size()));
  std::vector<bool> seen(length_, false);
  for (std::size_t k = 0; k < tuples_.size(); ++k) {
    if (tuples_[k].size() != n_)
      throw ConfigError("tuple " + std::to_string(k) + " does not hold n indices");
    for (std::size_t idx : tuples_[k]) {
      if (idx >= length_)
        throw ConfigError("tuple " + std::to_string(k) + " index " + std::to_string(idx) +
                          " is out of range");
      if (seen[idx]) throw ConfigError("index " + std::to_string(idx) + " appears twice");
      seen[idx] = true;
    }
  }
}

std::uint64_t TupleMapping::address(const BitPattern& p, std::size_t k) const {
  std::uint64_t addr = 0;
  for (std::size_t idx : tuples_[k]) addr = (addr << 1) | static_cast<std::uint64_t>(p[idx]);
  return addr;
}

TupleMapping build_mapping(std::size_t length, std::size_t n, std::uint64_t seed,
                           MappingKind kind) {
  if (n == 0 || length % n != 0)
    throw ConfigError("n = " + std::to_string(n) + " does not divide retina length " +
                      std::to_string(length));
  std::vector<std::size_t> order(length);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (kind == MappingKind::Random) Rng(seed).shuffle(std::span<std::size_t>(order));

  std::vector<std::vector<std::size_t>> tuples;
  tuples.reserve(length / n);
  for (std::size_t start = 0; start < length; start += n)
    tuples.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                        order.begin() + static_cast<std::ptrdiff_t>(start + n));
  return TupleMapping(length, n, std::move(tuples));
}

std::size_t threshold_cutoff(double fraction, std::size_t k) {
  return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(k)));
}

BitPattern encode_retina(const FeatureVector& v, std::size_t n) {
  return pad_to_multiple(binarize_mean_threshold(v), n);
}

WisardModel::WisardModel(WisardConfig config, TupleMapping mapping, std::size_t input_bits)
    : config_(config), mapping_(std::move(mapping)), input_bits_(input_bits) {
  config_.validate();
  if (mapping_.n() != config_.n)
    throw ConfigError("mapping tuple size differs from configured n");
  if (input_bits_ == 0 || padded_length(input_bits_, config_.n) != mapping_.length())
    throw ConfigError("mapping length " + std::to_string(mapping_.length()) +
                      " does not match padded input of " + std::to_string(input_bits_) + " bits");
}

WisardModel WisardModel::create(const WisardConfig& config, std::size_t input_bits) {
  config.validate();
  const std::size_t length = padded_length(input_bits, config.n);
  return WisardModel(config, build_mapping(length, config.n, config.seed, config.mapping_kind),
                     input_bits);
}

std::size_t WisardModel::trained_count(Label label) const {
  const auto it = discriminators_.find(label);
  return it == discriminators_.end() ? 0 : it->second.trained_count;
}

Discriminator& WisardModel::discriminator(Label label) {
  auto [it, inserted] = discriminators_.try_emplace(label);
  if (inserted) {
    it->second.class_label = label;
    it->second.rams.resize(mapping_.k());
  }
  return it->second;
}

void WisardModel::check_length(const BitPattern& pattern) const {
  if (pattern.size() != mapping_.length())
    throw LengthMismatch(mapping_.length(), pattern.size());
}

void WisardModel::train(const BitPattern& pattern, Label label) {
  check_length(pattern);
  if (label < 0) throw ConfigError("class labels must be non-negative");
  Discriminator& d = discriminator(label);
  for (std::size_t k = 0; k < mapping_.k(); ++k) d.rams[k].write(mapping_.address(pattern, k));
  ++d.trained_count;
}

void WisardModel::train(const FeatureVector& v) {
  if (!v.label) throw ConfigError("sample '" + v.id + "' has no label");
  if (static_cast<std::size_t>(v.values.size()) != input_bits_)
    throw LengthMismatch(input_bits_, static_cast<std::size_t>(v.values.size()));
  train(encode_retina(v, config_.n), *v.label);
}

Response WisardModel::response(const BitPattern& pattern, std::uint32_t bleach) const {
  check_length(pattern);
  Response r;
  r.k_total = mapping_.k();
  std::vector<std::uint64_t> addresses(mapping_.k());
  for (std::size_t k = 0; k < mapping_.k(); ++k) addresses[k] = mapping_.address(pattern, k);
  for (const auto& [label, d] : discriminators_) {
    std::size_t fired = 0;
    for (std::size_t k = 0; k < addresses.size(); ++k)
      if (d.rams[k].fires(addresses[k], bleach)) ++fired;
    r.fired[label] = fired;
  }
  return r;
}

Classification WisardModel::classify(const BitPattern& pattern, std::uint32_t bleach) const {
  Classification out{kNegative, response(pattern, bleach)};
  if (config_.decision_mode == DecisionMode::Threshold) {
    if (!discriminators_.contains(kPositive))
      throw ConfigError("threshold mode needs a trained positive-class discriminator");
    const std::size_t cutoff = threshold_cutoff(config_.threshold_fraction, k());
    out.label = out.response.fired_for(kPositive) > cutoff ? kPositive : kNegative;
    return out;
  }
  if (discriminators_.empty()) throw ConfigError("argmax mode needs at least one trained class");
  // std::map iterates labels ascending, so strict > keeps the smallest label on ties.
  std::size_t best = 0;
  bool first = true;
  for (const auto& [label, fired] : out.response.fired) {
    if (first || fired > best) {
      best = fired;
      out.label = label;
      first = false;
    }
  }
  return out;
}

Classification WisardModel::classify(const FeatureVector& v, std::uint32_t bleach) const {
  if (static_cast<std::size_t>(v.values.size()) != input_bits_)
    throw LengthMismatch(input_bits_, static_cast<std::size_t>(v.values.size()));
  return classify(encode_retina(v, config_.n), bleach);
}

}  // namespace wisard
