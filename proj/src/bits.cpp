#include "qbc/bits.hpp"

#include <stdexcept>

namespace qbc {

BitString::BitString(std::size_t length, bool value) : bits_(length, value ? 1 : 0) {}

BitString BitString::from_string(std::string_view text) {
  BitString out;
  out.bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
    out.bits_.push_back(c == '1' ? 1 : 0);
  }
  return out;
}

bool BitString::at(std::size_t i) const {
  if (i >= bits_.size()) throw std::out_of_range("bit index out of range");
  return bits_[i] != 0;
}

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::size_t BitString::count_ones() const noexcept {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

BitString BitString::slice(std::size_t offset, std::size_t length) const {
  if (offset > bits_.size() || length > bits_.size() - offset) {
    throw std::out_of_range("bit slice out of range");
  }
  BitString out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(offset),
                   bits_.begin() + static_cast<std::ptrdiff_t>(offset + length));
  return out;
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

BitString BitString::operator^(const BitString& other) const {
  if (other.size() != size()) throw std::invalid_argument("XOR of bit strings with different lengths");
  BitString out(size());
  for (std::size_t i = 0; i < size(); ++i) out.bits_[i] = bits_[i] ^ other.bits_[i];
  return out;
}

std::vector<std::uint8_t> pack(const BitString& bits) {
  const auto n = bits.size();
  if (n > 0xffffffffULL) throw std::length_error("bit string too long to serialize");
  std::vector<std::uint8_t> out(4 + (n + 7) / 8, 0);
  for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((n >> (8 * i)) & 0xff);
  for (std::size_t i = 0; i < n; ++i) {
    if (bits[i]) out[4 + i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return out;
}

BitString unpack(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw std::invalid_argument("packed bit string is missing its length prefix");
  std::size_t n = 0;
  for (int i = 0; i < 4; ++i) n |= static_cast<std::size_t>(bytes[static_cast<std::size_t>(i)]) << (8 * i);
  if (bytes.size() != 4 + (n + 7) / 8) throw std::invalid_argument("packed bit string has wrong byte count");
  BitString out(n);
  for (std::size_t i = 0; i < n; ++i) out.set(i, (bytes[4 + i / 8] & (0x80u >> (i % 8))) != 0);
  for (std::size_t i = n; i < 8 * ((n + 7) / 8); ++i) {
    if (bytes[4 + i / 8] & (0x80u >> (i % 8))) throw std::invalid_argument("packed bit string has nonzero padding");
  }
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(2 * bytes.size());
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xf]);
  }
  return s;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("hex string has odd length");
  auto nibble = [](char c) -> std::uint8_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
    throw std::invalid_argument("invalid hex digit");
  };
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
  }
  return out;
}

}  // namespace qbc
