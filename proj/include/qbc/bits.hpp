#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qbc {

/// A sequence of bits. Position 0 is the most significant position when two
/// sequences are compared lexicographically.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t length, bool value = false);

  /// Parses a string of '0' and '1' characters.
  static BitString from_string(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  bool at(std::size_t i) const;
  void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1; }
  void push_back(bool value) { bits_.push_back(value ? 1 : 0); }
  void append(const BitString& other);

  std::size_t count_ones() const noexcept;
  BitString slice(std::size_t offset, std::size_t length) const;
  std::string to_string() const;

  /// Bitwise XOR; both operands must have the same length.
  BitString operator^(const BitString& other) const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

// Wire format: 4-byte little-endian bit count, then ceil(n/8) bytes. Bit i
// sits in byte i/8 at mask 0x80 >> (i%8); unused trailing bits are zero.
std::vector<std::uint8_t> pack(const BitString& bits);
BitString unpack(std::span<const std::uint8_t> bytes);

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

}  // namespace qbc
