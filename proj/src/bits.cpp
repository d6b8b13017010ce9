#include "psitm/bits.hpp"

#include <stdexcept>

namespace psitm {

Bits Bits::from_string(std::string_view text) {
  Bits out;
  out.bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("Bits::from_string: symbol not in {0,1}");
    }
    out.bits_.push_back(c == '1' ? 1 : 0);
  }
  return out;
}

Bits Bits::from_bytes(const std::vector<std::uint8_t>& bytes,
                      std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) {
    throw std::invalid_argument("Bits::from_bytes: bit count exceeds data");
  }
  Bits out;
  out.bits_.reserve(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) {
    out.bits_.push_back((bytes[i / 8] >> (7 - i % 8)) & 1);
  }
  return out;
}

void Bits::append(const Bits& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

void Bits::append_uint(std::uint64_t value, unsigned width) {
  if (width > 64) {
    throw std::invalid_argument("Bits::append_uint: width > 64");
  }
  for (unsigned i = width; i > 0; --i) {
    bits_.push_back((value >> (i - 1)) & 1);
  }
}

std::uint64_t Bits::read_uint(std::size_t pos, unsigned width) const {
  if (width > 64) {
    throw std::invalid_argument("Bits::read_uint: width > 64");
  }
  if (pos + width > bits_.size()) {
    throw std::out_of_range("Bits::read_uint: field past end of data");
  }
  std::uint64_t value = 0;
  for (unsigned i = 0; i < width; ++i) {
    value = (value << 1) | bits_[pos + i];
  }
  return value;
}

bool Bits::at(std::size_t i) const {
  if (i >= bits_.size()) {
    throw std::out_of_range("Bits::at: index past end");
  }
  return bits_[i] != 0;
}

void Bits::set(std::size_t i, bool bit) {
  if (i >= bits_.size()) {
    throw std::out_of_range("Bits::set: index past end");
  }
  bits_[i] = bit ? 1 : 0;
}

std::string Bits::to_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (std::uint8_t b : bits_) {
    out.push_back(b ? '1' : '0');
  }
  return out;
}

std::vector<std::uint8_t> Bits::to_bytes() const {
  std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) {
      out[i / 8] |= static_cast<std::uint8_t>(1u << (7 - i % 8));
    }
  }
  return out;
}

std::string Bits::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::uint8_t byte : to_bytes()) {
    out.push_back(digits[byte >> 4]);
    out.push_back(digits[byte & 0xf]);
  }
  return out;
}

}  // namespace psitm
