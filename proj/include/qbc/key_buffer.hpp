#pragma once

#include <cstdint>
#include <vector>

#include "qbc/bits.hpp"

namespace qbc {

/// One contiguous range of pad bits handed out by a KeyBuffer.
struct KeySpend {
  std::uint64_t offset;
  std::uint64_t length;
  std::uint64_t tag;  ///< caller-supplied label, e.g. the frame id
};

/// FIFO pool of one-time-pad bits. Every bit index is handed out at most
/// once; consumption never rewinds.
class KeyBuffer {
 public:
  void append(const BitString& bits) { bits_.append(bits); }

  std::uint64_t total() const noexcept { return bits_.size(); }
  std::uint64_t consumed() const noexcept { return consumed_; }
  std::uint64_t available() const noexcept { return total() - consumed_; }

  /// Takes the next `length` unconsumed bits. Throws InsufficientKey and
  /// consumes nothing when fewer are available.
  KeySpend consume(std::uint64_t length, std::uint64_t tag = 0);

  /// Pad bits of an already consumed range; relays decrypt with this.
  BitString pad(std::uint64_t offset, std::uint64_t length) const;

  const std::vector<KeySpend>& spends() const noexcept { return spends_; }

 private:
  BitString bits_;
  std::uint64_t consumed_ = 0;
  std::vector<KeySpend> spends_;
};

struct OtpCiphertext {
  BitString ciphertext;
  std::uint64_t key_offset;
};

OtpCiphertext otp_encrypt(const BitString& plaintext, KeyBuffer& buffer, std::uint64_t tag = 0);
BitString otp_decrypt(const BitString& ciphertext, const KeyBuffer& buffer, std::uint64_t key_offset);

}  // namespace qbc
