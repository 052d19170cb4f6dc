#include "mealypred/bits.hpp"

#include <stdexcept>

#include "mealypred/errors.hpp"

namespace mealypred {

BitSequence::BitSequence(std::size_t length)
    : words_((length + 63) / 64, 0), size_(length) {}

BitSequence BitSequence::from_string(std::string_view text) {
  BitSequence bits;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<Bit>(c - '0'));
    } else if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
      throw ParseError(0, "invalid bit character '" + std::string(1, c) +
                              "' at offset " + std::to_string(i));
    }
  }
  return bits;
}

BitSequence BitSequence::from_integer(std::uint64_t value, std::size_t length) {
  if (length > 64) throw std::invalid_argument("from_integer: length > 64");
  BitSequence bits(length);
  if (length > 0) {
    bits.words_[0] = length == 64 ? value : value & ((std::uint64_t{1} << length) - 1);
  }
  return bits;
}

Bit BitSequence::at(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("BitSequence::at");
  return (*this)[i];
}

void BitSequence::set(std::size_t i, Bit value) {
  if (i >= size_) throw std::out_of_range("BitSequence::set");
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

void BitSequence::push_back(Bit value) {
  if (size_ % 64 == 0) words_.push_back(0);
  ++size_;
  set(size_ - 1, value);
}

BitSequence BitSequence::prefix(std::size_t length) const {
  if (length > size_) throw std::out_of_range("BitSequence::prefix");
  BitSequence out(length);
  for (std::size_t w = 0; w < out.words_.size(); ++w) out.words_[w] = words_[w];
  if (length % 64 != 0) {
    out.words_.back() &= (std::uint64_t{1} << (length % 64)) - 1;
  }
  return out;
}

std::string BitSequence::to_string() const {
  std::string text(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) text[i] = '1';
  }
  return text;
}

}  // namespace mealypred
