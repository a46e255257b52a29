#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xyz {

/// Dense bit vector over GF(2). Pad bits past `size()` are always zero.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t size);

  static BitVector from_string(std::string_view bits);
  static BitVector ones(std::size_t size);
  static BitVector unit(std::size_t size, std::size_t index);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool get(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool value = true) noexcept;
  void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }
  void clear() noexcept;

  std::size_t popcount() const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  /// Parity of the bitwise AND.
  bool dot(const BitVector& other) const;
  /// Indices of set bits, increasing.
  std::vector<std::size_t> support() const;

  BitVector& operator^=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  BitVector& operator|=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
  bool operator==(const BitVector& other) const = default;

  /// Concatenation: bits of *this followed by bits of `tail`.
  BitVector concat(const BitVector& tail) const;
  BitVector slice(std::size_t begin, std::size_t length) const;

  std::span<Word> words() noexcept { return words_; }
  std::span<const Word> words() const noexcept { return words_; }

  std::string to_string() const;

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

/// Dense row-major bit-packed matrix over GF(2). Each row occupies
/// `words_per_row()` machine words; bits past `cols()` are zero.
class BitMatrix {
 public:
  using Word = BitVector::Word;

  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  /// Rows given as strings of '0'/'1', all of equal length.
  static BitMatrix from_rows(const std::vector<std::string>& rows);
  static BitMatrix from_vectors(const std::vector<BitVector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return wpr_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (data_[r * wpr_ + c / 64] >> (c % 64)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value = true) noexcept;
  void flip(std::size_t r, std::size_t c) noexcept { data_[r * wpr_ + c / 64] ^= Word{1} << (c % 64); }

  std::span<Word> row_words(std::size_t r) noexcept { return {data_.data() + r * wpr_, wpr_}; }
  std::span<const Word> row_words(std::size_t r) const noexcept { return {data_.data() + r * wpr_, wpr_}; }

  BitVector row(std::size_t r) const;
  void set_row(std::size_t r, const BitVector& v);
  /// row(dst) ^= row(src)
  void xor_row(std::size_t dst, std::size_t src) noexcept;
  void swap_rows(std::size_t a, std::size_t b) noexcept;
  std::size_t row_weight(std::size_t r) const noexcept;
  std::vector<std::size_t> row_support(std::size_t r) const;
  bool any() const noexcept;

  /// M·v
  BitVector multiply(const BitVector& v) const;
  /// vᵀ·M (sum of the rows selected by v)
  BitVector left_multiply(const BitVector& v) const;

  bool operator==(const BitMatrix& other) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t wpr_ = 0;
  std::vector<Word> data_;
};

struct RowEchelon {
  BitMatrix reduced;                // reduced row-echelon form, zero rows removed
  std::vector<std::size_t> pivots;  // pivot column of row i, strictly increasing
};

BitMatrix transpose(const BitMatrix& m);
BitMatrix matmul(const BitMatrix& a, const BitMatrix& b);
BitMatrix kron(const BitMatrix& a, const BitMatrix& b);
BitMatrix hstack(const std::vector<BitMatrix>& blocks);
BitMatrix vstack(const std::vector<BitMatrix>& blocks);

std::size_t rank(const BitMatrix& m);
RowEchelon row_reduce(const BitMatrix& m);
/// Basis of the right null space {v : M·v = 0}.
std::vector<BitVector> kernel_basis(const BitMatrix& m);
std::size_t kernel_dim(const BitMatrix& m);
/// True if v lies in the row space of m.
bool in_row_space(const BitMatrix& m, const BitVector& v);
/// Some x with M·x = s, or nullopt when s is not in the column space.
std::optional<BitVector> solve(const BitMatrix& m, const BitVector& s);

/// Unit vectors spanning a complement of rowspace(subspace_gen) inside
/// GF(2)^ambient_dim, found from the pivots of [subspace_gen ; I].
std::vector<BitVector> complement_basis(const BitMatrix& subspace_gen, std::size_t ambient_dim);
/// Minimum weight of a vector outside rowspace(subspace_gen); throws
/// std::invalid_argument("no complement") if the row space is everything.
std::size_t complement_min_weight(const BitMatrix& subspace_gen, std::size_t ambient_dim);

/// Exact minimum nonzero weight of span(basis) by Gray-code enumeration.
/// Returns nullopt for an empty basis. Requires basis.size() <= 40.
std::optional<std::size_t> min_weight_of_span(const std::vector<BitVector>& basis);

/// Incremental row-space membership structure: a reduced echelon basis that
/// supports O(rank) reductions of query vectors.
class RowSpace {
 public:
  RowSpace() = default;
  explicit RowSpace(std::size_t cols) : cols_(cols) {}
  explicit RowSpace(const BitMatrix& generators);

  std::size_t dim() const noexcept { return basis_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  /// Reduce v against the basis in place; the result is zero iff v is in the space.
  void reduce(BitVector& v) const;
  bool contains(BitVector v) const;
  /// Adds v if independent; returns true when the dimension grew.
  bool insert(BitVector v);

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> basis_;       // each with a distinct leading bit
  std::vector<std::size_t> leading_;   // leading (pivot) bit of basis_[i]
};

}  // namespace xyz
