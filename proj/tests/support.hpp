#pragma once

// Random generators and naive reference implementations shared by the tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "xyz/css.hpp"
#include "xyz/gf2.hpp"
#include "xyz/stabilizer.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline xyz::BitVector random_vector(Rng& rng, std::size_t n, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  xyz::BitVector v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, bit(rng));
  return v;
}

inline xyz::BitMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double density = 0.5) {
  xyz::BitMatrix m(rows, cols);
  std::bernoulli_distribution bit(density);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, bit(rng));
  return m;
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Random CSS code: random Hx, Hz rows drawn from ker(Hx) so Hx Hz^T = 0.
inline xyz::CssCode random_css(Rng& rng, std::size_t n, std::size_t mx, std::size_t mz, double density = 0.4) {
  xyz::CssCode code;
  code.hx = random_matrix(rng, mx, n, density);
  const auto ker = xyz::kernel_basis(code.hx);
  code.hz = xyz::BitMatrix(mz, n);
  for (std::size_t r = 0; r < mz && !ker.empty(); ++r) {
    xyz::BitVector row(n);
    for (const auto& v : ker)
      if (rng() & 1U) row ^= v;
    code.hz.set_row(r, row);
  }
  return code;
}

inline xyz::CssCode random_small_css(Rng& rng) {
  const std::size_t n = uniform(rng, 2, 6);
  return random_css(rng, n, uniform(rng, 0, 3), uniform(rng, 0, 3));
}

inline xyz::PauliError random_pauli(Rng& rng, std::size_t n) {
  return {random_vector(rng, n), random_vector(rng, n)};
}

// Plain Gaussian elimination on a vector-of-vectors copy.
inline std::size_t naive_rank(const xyz::BitMatrix& m) {
  std::vector<std::vector<int>> a(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m.get(r, c);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && !a[p][c]) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r)
      if (r != rank && a[r][c])
        for (std::size_t k = 0; k < m.cols(); ++k) a[r][k] ^= a[rank][k];
    ++rank;
  }
  return rank;
}

inline xyz::BitMatrix naive_matmul(const xyz::BitMatrix& a, const xyz::BitMatrix& b) {
  xyz::BitMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      int s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s ^= a.get(i, k) & b.get(k, j);
      out.set(i, j, s);
    }
  return out;
}

// Sum over row pairs of C(shared columns, 2) from the integer Gram matrix.
inline std::uint64_t naive_4cycles(const xyz::BitMatrix& h) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = i + 1; j < h.rows(); ++j) {
      std::uint64_t shared = 0;
      for (std::size_t c = 0; c < h.cols(); ++c) shared += h.get(i, c) && h.get(j, c);
      total += shared * (shared - 1) / 2;
    }
  return total;
}

// Minimum weight logical by enumerating every Pauli of weight <= w_max.
inline std::size_t brute_force_distance(const xyz::StabilizerCode& code, std::size_t w_max) {
  const std::size_t n = code.n();
  std::vector<std::size_t> idx;
  for (std::size_t w = 1; w <= std::min(w_max, n); ++w) {
    idx.assign(w, 0);
    for (std::size_t i = 0; i < w; ++i) idx[i] = i;
    while (true) {
      std::size_t patterns = 1;
      for (std::size_t i = 0; i < w; ++i) patterns *= 3;
      for (std::size_t pat = 0; pat < patterns; ++pat) {
        xyz::PauliError e(n);
        std::size_t t = pat;
        for (std::size_t i = 0; i < w; ++i, t /= 3) e.set(idx[i], static_cast<xyz::Pauli>(1 + t % 3));
        if (xyz::is_logical(code, e)) return w;
      }
      std::size_t i = w;
      while (i > 0 && idx[i - 1] == n - w + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < w; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return 0;
}

}  // namespace testing
