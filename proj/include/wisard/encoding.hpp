#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wisard/error.hpp"

namespace wisard {

/// Class labels. The pipeline is binary; the core accepts any non-negative label.
using Label = int;
inline constexpr Label kNegative = 0;
inline constexpr Label kPositive = 1;

/// One sample: identifier, optional label, real-valued feature activations.
struct FeatureVector {
  std::string id;
  std::optional<Label> label;
  Eigen::VectorXd values;
};

/// Fixed-length binary retina pattern.
class BitPattern {
public:
  BitPattern() = default;
  explicit BitPattern(std::size_t length) : bits_(length, 0) {}
  explicit BitPattern(std::vector<std::uint8_t> bits);
  BitPattern(std::initializer_list<int> bits);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  void set(std::size_t i, bool value) { bits_.at(i) = value ? 1 : 0; }
  void flip(std::size_t i) { bits_.at(i) ^= 1; }

  std::size_t count() const noexcept;
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  /// Appends `extra` zero bits.
  void append_zeros(std::size_t extra) { bits_.resize(bits_.size() + extra, 0); }

  friend bool operator==(const BitPattern&, const BitPattern&) = default;

private:
  std::vector<std::uint8_t> bits_;
};

/// Mean-threshold binarization: bit i is set iff v[i] is strictly greater than
/// the arithmetic mean of v. Values equal to the mean map to 0.
///
/// The mean is accumulated in long double so that a constant vector compares
/// exactly equal to its own mean.
template <typename Derived>
BitPattern binarize_mean_threshold(const Eigen::DenseBase<Derived>& v) {
  const Eigen::Index size = v.size();
  if (size == 0) throw EncodingError("cannot binarize an empty feature vector");

  long double sum = 0.0L;
  for (Eigen::Index i = 0; i < size; ++i) {
    const auto x = static_cast<long double>(v(i));
    if (!std::isfinite(x))
      throw EncodingError("non-finite feature value at index " + std::to_string(i));
    sum += x;
  }
  const long double mean = sum / static_cast<long double>(size);

  BitPattern out(static_cast<std::size_t>(size));
  for (Eigen::Index i = 0; i < size; ++i)
    if (static_cast<long double>(v(i)) > mean) out.set(static_cast<std::size_t>(i), true);
  return out;
}

inline BitPattern binarize_mean_threshold(const FeatureVector& v) {
  try {
    return binarize_mean_threshold(v.values);
  } catch (const EncodingError& e) {
    throw EncodingError("sample '" + v.id + "': " + e.what());
  }
}

/// Appends the fewest trailing zeros that make the length a multiple of `n`.
BitPattern pad_to_multiple(BitPattern p, std::size_t n);

/// Length after pad_to_multiple.
std::size_t padded_length(std::size_t length, std::size_t n);

}  // namespace wisard
