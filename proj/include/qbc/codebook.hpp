#pragma once

#include <cstdint>
#include <vector>

#include "qbc/bits.hpp"
#include "qbc/math_core.hpp"

namespace qbc {

/// Exact binomial coefficients C(n, k) for n up to a fixed bound.
class BinomialTable {
 public:
  explicit BinomialTable(std::uint64_t max_n);

  const BigInt& operator()(std::uint64_t n, std::uint64_t k) const;
  std::uint64_t max_n() const noexcept { return rows_.size() - 1; }

 private:
  std::vector<std::vector<BigInt>> rows_;
};

/// C(2N, N): the number of balanced 2N-bit sequences.
BigInt codebook_capacity(std::uint64_t n_half);

/// Position of a balanced sequence in the lexicographic order of all
/// balanced sequences of its length. Throws std::invalid_argument otherwise.
BigInt rank(const BitString& seq);
BigInt rank(const BitString& seq, const BinomialTable& table);

/// Inverse of rank. Throws std::out_of_range when index >= C(2N, N).
BitString unrank(std::uint64_t n_half, const BigInt& index);
BitString unrank(std::uint64_t n_half, const BigInt& index, const BinomialTable& table);

/// The first x balanced 2N-bit sequences in lexicographic order.
class Codebook {
 public:
  Codebook(std::uint64_t n_half, BigInt x);

  std::uint64_t n_half() const noexcept { return n_half_; }
  const BigInt& size() const noexcept { return x_; }
  const BigInt& capacity() const noexcept { return capacity_; }
  const BinomialTable& table() const noexcept { return table_; }

  /// Throws std::invalid_argument when seq.size() != 2N.
  bool contains(const BitString& seq) const;

  /// Bits needed for a codeword index: ceil(log2 x), zero when x <= 1.
  std::uint64_t index_width() const noexcept { return index_width_; }

  BitString codeword(const BigInt& index) const;
  BigInt index_of(const BitString& seq) const { return rank(seq, table_); }

 private:
  std::uint64_t n_half_;
  BigInt x_;
  BigInt capacity_;
  BinomialTable table_;
  std::uint64_t index_width_;
};

inline bool is_codeword(const Codebook& cb, const BitString& seq) { return cb.contains(seq); }

/// Fixed-width big-endian encoding of a non-negative integer.
BitString encode_index(const BigInt& value, std::uint64_t width);
BigInt decode_index(const BitString& bits);

}  // namespace qbc
