#ifndef PSITM_BITS_HPP
#define PSITM_BITS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace psitm {

/// Dynamic bit string. Used for machine payloads, instance encodings and
/// binary words alike. Bits are addressed MSB-first: append_uint stores the
/// most significant bit of a field first, and to_bytes packs bit 0 of the
/// string into the top bit of byte 0.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t count, bool value = false)
      : bits_(count, value ? 1 : 0) {}

  /// Parses a string over {0,1}. Throws std::invalid_argument on any other
  /// character.
  static Bits from_string(std::string_view text);
  static Bits from_bytes(const std::vector<std::uint8_t>& bytes,
                         std::size_t bit_count);

  void push_back(bool bit) { bits_.push_back(bit ? 1 : 0); }
  void append(const Bits& other);

  /// Appends `width` bits of `value`, most significant first.
  void append_uint(std::uint64_t value, unsigned width);

  /// Reads `width` bits starting at `pos`, most significant first.
  /// Throws std::out_of_range when the field extends past the end.
  std::uint64_t read_uint(std::size_t pos, unsigned width) const;

  bool at(std::size_t i) const;
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool bit);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  std::string to_string() const;
  /// MSB-first byte packing, lowercase hex; trailing bits of the final byte
  /// are zero-padded. Empty string for zero bits.
  std::string to_hex() const;
  std::vector<std::uint8_t> to_bytes() const;

  friend bool operator==(const Bits&, const Bits&) = default;

 private:
  std::vector<std::uint8_t> bits_;  // one entry per bit, each 0 or 1
};

}  // namespace psitm

#endif
