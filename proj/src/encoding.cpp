#include "wisard/encoding.hpp"

#include <algorithm>

namespace wisard {

BitPattern::BitPattern(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] > 1)
      throw EncodingError("bit " + std::to_string(i) + " is not 0 or 1");
}

BitPattern::BitPattern(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw EncodingError("bit value must be 0 or 1");
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
}

std::size_t BitPattern::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::size_t padded_length(std::size_t length, std::size_t n) {
  if (n == 0) throw EncodingError("tuple size must be at least 1");
  const std::size_t rem = length % n;
  return rem == 0 ? length : length + (n - rem);
}

BitPattern pad_to_multiple(BitPattern p, std::size_t n) {
  const std::size_t target = padded_length(p.size(), n);
  p.append_zeros(target - p.size());
  return p;
}

}  // namespace wisard
