#include "xyz/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace xyz {

namespace {

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

constexpr BitVector::Word tail_mask(std::size_t bits) {
  const std::size_t r = bits % 64;
  return r == 0 ? ~BitVector::Word{0} : ((BitVector::Word{1} << r) - 1);
}

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

// ---------------------------------------------------------------- BitVector

BitVector::BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit string must contain only '0' and '1'");
    }
  }
  return v;
}

BitVector BitVector::ones(std::size_t size) {
  BitVector v(size);
  std::fill(v.words_.begin(), v.words_.end(), ~Word{0});
  if (!v.words_.empty()) v.words_.back() &= tail_mask(size);
  return v;
}

BitVector BitVector::unit(std::size_t size, std::size_t index) {
  BitVector v(size);
  v.set(index);
  return v;
}

void BitVector::set(std::size_t i, bool value) noexcept {
  const Word bit = Word{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= bit;
  } else {
    words_[i / kWordBits] &= ~bit;
  }
}

void BitVector::clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

std::size_t BitVector::popcount() const noexcept {
  std::size_t n = 0;
  for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool BitVector::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
}

bool BitVector::dot(const BitVector& other) const {
  require(size_ == other.size_, "BitVector::dot: length mismatch");
  Word acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return std::popcount(acc) & 1;
}

std::vector<std::size_t> BitVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    Word x = words_[w];
    while (x) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  require(size_ == other.size_, "BitVector: length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  require(size_ == other.size_, "BitVector: length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) {
  require(size_ == other.size_, "BitVector: length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BitVector BitVector::concat(const BitVector& tail) const {
  BitVector out(size_ + tail.size_);
  std::copy(words_.begin(), words_.end(), out.words_.begin());
  if (size_ % kWordBits == 0) {
    std::copy(tail.words_.begin(), tail.words_.end(), out.words_.begin() + static_cast<long>(words_.size()));
  } else {
    for (std::size_t i : tail.support()) out.set(size_ + i);
  }
  return out;
}

BitVector BitVector::slice(std::size_t begin, std::size_t length) const {
  require(begin + length <= size_, "BitVector::slice out of range");
  BitVector out(length);
  const std::size_t shift = begin % kWordBits;
  const std::size_t first = begin / kWordBits;
  for (std::size_t w = 0; w < out.words_.size(); ++w) {
    Word lo = words_[first + w] >> shift;
    Word hi = 0;
    if (shift != 0 && first + w + 1 < words_.size()) hi = words_[first + w + 1] << (kWordBits - shift);
    out.words_[w] = lo | hi;
  }
  if (!out.words_.empty()) out.words_.back() &= tail_mask(length);
  return out;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_(words_for(cols)), data_(rows * words_for(cols), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == cols, "BitMatrix::from_rows: ragged rows");
    m.set_row(r, BitVector::from_string(rows[r]));
  }
  return m;
}

BitMatrix BitMatrix::from_vectors(const std::vector<BitVector>& rows, std::size_t cols) {
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) noexcept {
  const Word bit = Word{1} << (c % 64);
  Word& w = data_[r * wpr_ + c / 64];
  w = value ? (w | bit) : (w & ~bit);
}

BitVector BitMatrix::row(std::size_t r) const {
  BitVector v(cols_);
  auto src = row_words(r);
  std::copy(src.begin(), src.end(), v.words().begin());
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
  require(v.size() == cols_, "BitMatrix::set_row: length mismatch");
  auto src = v.words();
  std::copy(src.begin(), src.end(), row_words(r).begin());
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) noexcept {
  Word* d = data_.data() + dst * wpr_;
  const Word* s = data_.data() + src * wpr_;
  for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) noexcept {
  if (a == b) return;
  std::swap_ranges(data_.begin() + static_cast<long>(a * wpr_), data_.begin() + static_cast<long>((a + 1) * wpr_),
                   data_.begin() + static_cast<long>(b * wpr_));
}

std::size_t BitMatrix::row_weight(std::size_t r) const noexcept {
  std::size_t n = 0;
  for (Word w : row_words(r)) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::size_t> BitMatrix::row_support(std::size_t r) const {
  std::vector<std::size_t> out;
  auto words = row_words(r);
  for (std::size_t w = 0; w < words.size(); ++w) {
    Word x = words[w];
    while (x) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

bool BitMatrix::any() const noexcept {
  return std::any_of(data_.begin(), data_.end(), [](Word w) { return w != 0; });
}

BitVector BitMatrix::multiply(const BitVector& v) const {
  require(v.size() == cols_, "BitMatrix::multiply: shape mismatch");
  BitVector out(rows_);
  auto vw = v.words();
  for (std::size_t r = 0; r < rows_; ++r) {
    const Word* row = data_.data() + r * wpr_;
    Word acc = 0;
    for (std::size_t w = 0; w < wpr_; ++w) acc ^= row[w] & vw[w];
    if (std::popcount(acc) & 1) out.set(r);
  }
  return out;
}

BitVector BitMatrix::left_multiply(const BitVector& v) const {
  require(v.size() == rows_, "BitMatrix::left_multiply: shape mismatch");
  BitVector out(cols_);
  auto ow = out.words();
  for (std::size_t r : v.support()) {
    const Word* row = data_.data() + r * wpr_;
    for (std::size_t w = 0; w < wpr_; ++w) ow[w] ^= row[w];
  }
  return out;
}

std::string BitMatrix::to_string() const {
  std::string s;
  s.reserve(rows_ * (cols_ + 1));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) s.push_back(get(r, c) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

// ---------------------------------------------------------------- free functions

BitMatrix transpose(const BitMatrix& m) {
  BitMatrix t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c : m.row_support(r)) t.set(c, r);
  return t;
}

BitMatrix matmul(const BitMatrix& a, const BitMatrix& b) {
  require(a.cols() == b.rows(), "matmul: shape mismatch");
  BitMatrix out(a.rows(), b.cols());
  // Row r of the product is the XOR of rows of b selected by row r of a.
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto dst = out.row_words(r);
    for (std::size_t k : a.row_support(r)) {
      auto src = b.row_words(k);
      for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
    }
  }
  return out;
}

BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j : a.row_support(i)) {
      for (std::size_t k = 0; k < b.rows(); ++k) {
        const std::size_t r = i * b.rows() + k;
        for (std::size_t l : b.row_support(k)) out.set(r, j * b.cols() + l);
      }
    }
  }
  return out;
}

BitMatrix hstack(const std::vector<BitMatrix>& blocks) {
  if (blocks.empty()) return {};
  const std::size_t rows = blocks.front().rows();
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    require(b.rows() == rows, "hstack: row count mismatch");
    cols += b.cols();
  }
  BitMatrix out(rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c : b.row_support(r)) out.set(r, offset + c);
    offset += b.cols();
  }
  return out;
}

BitMatrix vstack(const std::vector<BitMatrix>& blocks) {
  if (blocks.empty()) return {};
  const std::size_t cols = blocks.front().cols();
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    require(b.cols() == cols, "vstack: column count mismatch");
    rows += b.rows();
  }
  BitMatrix out(rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r) {
      auto src = b.row_words(r);
      std::copy(src.begin(), src.end(), out.row_words(offset + r).begin());
    }
    offset += b.rows();
  }
  return out;
}

namespace {

// In-place Gauss-Jordan; returns pivot columns. Rows [0, pivots.size()) are
// the nonzero rows of the reduced form.
std::vector<std::size_t> gauss_jordan(BitMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    const std::size_t word = c / 64;
    const BitMatrix::Word bit = BitMatrix::Word{1} << (c % 64);
    std::size_t p = r;
    while (p < m.rows() && !(m.row_words(p)[word] & bit)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && (m.row_words(i)[word] & bit)) m.xor_row(i, r);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const BitMatrix& m) {
  BitMatrix work = m;
  // Forward elimination only.
  std::size_t r = 0;
  for (std::size_t c = 0; c < work.cols() && r < work.rows(); ++c) {
    const std::size_t word = c / 64;
    const BitMatrix::Word bit = BitMatrix::Word{1} << (c % 64);
    std::size_t p = r;
    while (p < work.rows() && !(work.row_words(p)[word] & bit)) ++p;
    if (p == work.rows()) continue;
    work.swap_rows(r, p);
    for (std::size_t i = r + 1; i < work.rows(); ++i)
      if (work.row_words(i)[word] & bit) work.xor_row(i, r);
    ++r;
  }
  return r;
}

RowEchelon row_reduce(const BitMatrix& m) {
  BitMatrix work = m;
  auto pivots = gauss_jordan(work);
  BitMatrix reduced(pivots.size(), m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    auto src = work.row_words(r);
    std::copy(src.begin(), src.end(), reduced.row_words(r).begin());
  }
  return {std::move(reduced), std::move(pivots)};
}

std::vector<BitVector> kernel_basis(const BitMatrix& m) {
  const auto ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : ech.pivots) is_pivot[p] = true;
  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector v(m.cols());
    v.set(f);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
      if (ech.reduced.get(r, f)) v.set(ech.pivots[r]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t kernel_dim(const BitMatrix& m) { return m.cols() - rank(m); }

bool in_row_space(const BitMatrix& m, const BitVector& v) {
  require(v.size() == m.cols(), "in_row_space: length mismatch");
  return RowSpace(m).contains(v);
}

std::optional<BitVector> solve(const BitMatrix& m, const BitVector& s) {
  require(s.size() == m.rows(), "solve: length mismatch");
  // Eliminate on [M | s] and read the particular solution off the pivots.
  BitMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c : m.row_support(r)) aug.set(r, c);
    if (s.get(r)) aug.set(r, m.cols());
  }
  auto pivots = gauss_jordan(aug);
  BitVector x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == m.cols()) return std::nullopt;
    if (aug.get(r, m.cols())) x.set(pivots[r]);
  }
  return x;
}

std::vector<BitVector> complement_basis(const BitMatrix& subspace_gen, std::size_t ambient_dim) {
  require(subspace_gen.rows() == 0 || subspace_gen.cols() == ambient_dim,
          "complement_basis: generator length differs from ambient dimension");
  // Columns of [G^T | I]: pivots landing in the identity part index unit
  // vectors that extend rowspace(G) to the whole space.
  RowSpace space(ambient_dim);
  for (std::size_t r = 0; r < subspace_gen.rows(); ++r) space.insert(subspace_gen.row(r));
  std::vector<BitVector> out;
  for (std::size_t i = 0; i < ambient_dim && space.dim() < ambient_dim; ++i) {
    auto e = BitVector::unit(ambient_dim, i);
    if (space.insert(e)) out.push_back(std::move(e));
  }
  return out;
}

std::size_t complement_min_weight(const BitMatrix& subspace_gen, std::size_t ambient_dim) {
  auto comp = complement_basis(subspace_gen, ambient_dim);
  if (comp.empty()) throw std::invalid_argument("no complement");
  return comp.front().popcount();
}

std::optional<std::size_t> min_weight_of_span(const std::vector<BitVector>& basis) {
  if (basis.empty()) return std::nullopt;
  require(basis.size() <= 40, "min_weight_of_span: basis too large for exhaustive search");
  const std::size_t k = basis.size();
  BitVector cur(basis.front().size());
  std::size_t best = SIZE_MAX;
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t i = 1; i < total; ++i) {
    cur ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
    best = std::min(best, cur.popcount());
  }
  return best;
}

// ---------------------------------------------------------------- RowSpace

RowSpace::RowSpace(const BitMatrix& generators) : cols_(generators.cols()) {
  for (std::size_t r = 0; r < generators.rows(); ++r) insert(generators.row(r));
}

void RowSpace::reduce(BitVector& v) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (v.get(leading_[i])) v ^= basis_[i];
}

bool RowSpace::contains(BitVector v) const {
  reduce(v);
  return v.none();
}

bool RowSpace::insert(BitVector v) {
  require(v.size() == cols_, "RowSpace::insert: length mismatch");
  reduce(v);
  if (v.none()) return false;
  const auto words = v.words();
  std::size_t lead = 0;
  for (std::size_t w = 0; w < words.size(); ++w) {
    if (words[w]) {
      lead = w * 64 + static_cast<std::size_t>(std::countr_zero(words[w]));
      break;
    }
  }
  basis_.push_back(std::move(v));
  leading_.push_back(lead);
  return true;
}

}  // namespace xyz
