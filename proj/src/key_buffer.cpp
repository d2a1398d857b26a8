#include "qbc/key_buffer.hpp"

#include <stdexcept>

#include "qbc/errors.hpp"

namespace qbc {

KeySpend KeyBuffer::consume(std::uint64_t length, std::uint64_t tag) {
  if (length > available()) throw InsufficientKey(length, available());
  KeySpend spend{consumed_, length, tag};
  consumed_ += length;
  spends_.push_back(spend);
  return spend;
}

BitString KeyBuffer::pad(std::uint64_t offset, std::uint64_t length) const {
  if (offset > consumed_ || length > consumed_ - offset) {
    throw std::out_of_range("pad range has not been consumed");
  }
  return bits_.slice(offset, length);
}

OtpCiphertext otp_encrypt(const BitString& plaintext, KeyBuffer& buffer, std::uint64_t tag) {
  const KeySpend spend = buffer.consume(plaintext.size(), tag);
  return {plaintext ^ buffer.pad(spend.offset, spend.length), spend.offset};
}

BitString otp_decrypt(const BitString& ciphertext, const KeyBuffer& buffer, std::uint64_t key_offset) {
  return ciphertext ^ buffer.pad(key_offset, ciphertext.size());
}

}  // namespace qbc
