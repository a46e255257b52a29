#pragma once

#include <cstddef>

#include "xyz/gf2.hpp"

namespace xyz {

/// CSS code given by X-type checks hx (m_x x n) and Z-type checks hz (m_z x n)
/// with hx * hz^T = 0.
struct CssCode {
  BitMatrix hx;
  BitMatrix hz;

  std::size_t n() const noexcept { return hx.cols(); }
  /// n - rank(hx) - rank(hz)
  std::size_t dimension() const;
};

/// Seed pair for the 4D products: css1 = (Hx1: m1 x nA, Hz1: m2 x nA),
/// css2 = (Hx2: m3 x nB, Hz2: m4 x nB).
struct Product4Spec {
  CssCode css1;
  CssCode css2;
};

/// Throws std::invalid_argument if column counts differ or hx * hz^T != 0.
void validate_css(const CssCode& code);
bool css_commutes(const BitMatrix& hx, const BitMatrix& hz);

/// Hx = [I_n1 (x) H2 | H1^T (x) I_m2],  Hz = [H1 (x) I_n2 | I_m1 (x) H2^T].
/// Qubits: n1*n2 "left" qubits then m1*m2 "right" qubits, each row-major.
CssCode hypergraph_product(const BitMatrix& h1, const BitMatrix& h2);

/// Repetition code of length n1 (outer) concatenated with repetition code of
/// length n2 (inner). Both lengths odd and >= 3.
CssCode concatenated_rep(std::size_t n1, std::size_t n2);

/// Hypergraph product of periodic length-j and length-k repetition checks.
CssCode toric_2d(std::size_t j, std::size_t k);

/// dim ker [hx ; hz]: the number of independent Y-type operators that no
/// check detects.
std::size_t y_undetectable_dim(const CssCode& code);

}  // namespace xyz
