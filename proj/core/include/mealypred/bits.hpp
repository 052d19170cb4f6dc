#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mealypred {

using Bit = std::uint8_t;

/// Ordered sequence of bits, packed into 64-bit words.
class BitSequence {
 public:
  BitSequence() = default;
  explicit BitSequence(std::size_t length);

  /// Parses a string of '0'/'1' characters. Whitespace is skipped; any other
  /// character raises ParseError.
  static BitSequence from_string(std::string_view text);

  /// The low `length` bits of `value`, least significant bit first.
  static BitSequence from_integer(std::uint64_t value, std::size_t length);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  Bit operator[](std::size_t i) const noexcept {
    return static_cast<Bit>((words_[i / 64] >> (i % 64)) & 1U);
  }
  Bit at(std::size_t i) const;
  void set(std::size_t i, Bit value);
  void push_back(Bit value);

  BitSequence prefix(std::size_t length) const;
  std::string to_string() const;

  friend bool operator==(const BitSequence&, const BitSequence&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

}  // namespace mealypred
