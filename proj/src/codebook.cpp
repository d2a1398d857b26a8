#include "qbc/codebook.hpp"

#include <stdexcept>
#include <utility>

namespace qbc {

BinomialTable::BinomialTable(std::uint64_t max_n) : rows_(max_n + 1) {
  for (std::uint64_t n = 0; n <= max_n; ++n) {
    auto& row = rows_[n];
    row.resize(n + 1);
    row[0] = row[n] = 1;
    for (std::uint64_t k = 1; k < n; ++k) row[k] = rows_[n - 1][k - 1] + rows_[n - 1][k];
  }
}

const BigInt& BinomialTable::operator()(std::uint64_t n, std::uint64_t k) const {
  if (n >= rows_.size() || k > n) throw std::out_of_range("binomial table lookup out of range");
  return rows_[n][k];
}

BigInt codebook_capacity(std::uint64_t n_half) {
  if (n_half == 0) throw std::invalid_argument("codebook half-length must be >= 1");
  return math::exact_binom(2 * n_half, n_half);
}

BigInt rank(const BitString& seq) {
  return rank(seq, BinomialTable(seq.size()));
}

BigInt rank(const BitString& seq, const BinomialTable& table) {
  if (seq.empty() || seq.size() % 2 != 0) {
    throw std::invalid_argument("rank: sequence length must be even and positive");
  }
  if (seq.count_ones() * 2 != seq.size()) throw std::invalid_argument("rank: sequence is not balanced");
  std::uint64_t zeros = seq.size() / 2;
  std::uint64_t ones = zeros;
  BigInt result = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i]) {
      // Every balanced completion that puts a 0 here sorts before seq.
      if (zeros > 0) result += table(zeros - 1 + ones, ones);
      --ones;
    } else {
      --zeros;
    }
  }
  return result;
}

BitString unrank(std::uint64_t n_half, const BigInt& index) {
  return unrank(n_half, index, BinomialTable(2 * n_half));
}

BitString unrank(std::uint64_t n_half, const BigInt& index, const BinomialTable& table) {
  if (n_half == 0) throw std::invalid_argument("unrank: half-length must be >= 1");
  if (index < 0 || index >= table(2 * n_half, n_half)) throw std::out_of_range("unrank: index out of range");
  BitString out(2 * n_half);
  std::uint64_t zeros = n_half;
  std::uint64_t ones = n_half;
  BigInt rest = index;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (zeros == 0) {
      out.set(i, true);
      --ones;
      continue;
    }
    const BigInt& with_zero = table(zeros - 1 + ones, ones);
    if (rest < with_zero) {
      --zeros;
    } else {
      rest -= with_zero;
      out.set(i, true);
      --ones;
    }
  }
  return out;
}

namespace {

std::uint64_t ceil_log2(const BigInt& x) {
  if (x <= 1) return 0;
  const BigInt below = x - 1;
  return boost::multiprecision::msb(below) + 1;
}

}  // namespace

Codebook::Codebook(std::uint64_t n_half, BigInt x)
    : n_half_(n_half), x_(std::move(x)), capacity_(codebook_capacity(n_half)), table_(2 * n_half) {
  if (x_ < 0) throw std::invalid_argument("codebook size must be non-negative");
  if (x_ > capacity_) throw std::invalid_argument("codebook size exceeds C(2N, N)");
  index_width_ = ceil_log2(x_);
}

bool Codebook::contains(const BitString& seq) const {
  if (seq.size() != 2 * n_half_) throw std::invalid_argument("codeword length must be 2N");
  if (seq.count_ones() != n_half_) return false;
  return rank(seq, table_) < x_;
}

BitString Codebook::codeword(const BigInt& index) const {
  if (index < 0 || index >= x_) throw std::out_of_range("codeword index out of range");
  return unrank(n_half_, index, table_);
}

BitString encode_index(const BigInt& value, std::uint64_t width) {
  if (value < 0) throw std::invalid_argument("encode_index: negative value");
  if (value != 0 && boost::multiprecision::msb(value) >= width) {
    throw std::invalid_argument("encode_index: value does not fit in width");
  }
  BitString out(width);
  for (std::uint64_t i = 0; i < width; ++i) {
    out.set(width - 1 - i, boost::multiprecision::bit_test(value, static_cast<unsigned>(i)));
  }
  return out;
}

BigInt decode_index(const BitString& bits) {
  BigInt value = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    value <<= 1;
    if (bits[i]) value += 1;
  }
  return value;
}

}  // namespace qbc
