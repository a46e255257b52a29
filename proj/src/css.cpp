#include "xyz/css.hpp"

#include <stdexcept>
#include <string>

#include "xyz/classical.hpp"

namespace xyz {

std::size_t CssCode::dimension() const { return n() - rank(hx) - rank(hz); }

bool css_commutes(const BitMatrix& hx, const BitMatrix& hz) {
  if (hx.cols() != hz.cols()) return false;
  return !matmul(hx, transpose(hz)).any();
}

void validate_css(const CssCode& code) {
  if (code.hx.cols() != code.hz.cols())
    throw std::invalid_argument("CSS code: Hx and Hz have different column counts");
  if (!css_commutes(code.hx, code.hz)) throw std::invalid_argument("CSS code: Hx * Hz^T != 0");
}

CssCode hypergraph_product(const BitMatrix& h1, const BitMatrix& h2) {
  const std::size_t m1 = h1.rows(), n1 = h1.cols();
  const std::size_t m2 = h2.rows(), n2 = h2.cols();
  CssCode code{
      hstack({kron(BitMatrix::identity(n1), h2), kron(transpose(h1), BitMatrix::identity(m2))}),
      hstack({kron(h1, BitMatrix::identity(n2)), kron(BitMatrix::identity(m1), transpose(h2))}),
  };
  validate_css(code);
  return code;
}

CssCode concatenated_rep(std::size_t n1, std::size_t n2) {
  for (std::size_t len : {n1, n2}) {
    if (len < 3 || len % 2 == 0)
      throw std::invalid_argument("concatenated repetition code needs odd lengths >= 3, got " + std::to_string(len));
  }
  const std::size_t n = n1 * n2;
  // Outer checks compare neighbouring blocks of n2 qubits.
  BitMatrix hx(n1 - 1, n);
  for (std::size_t i = 0; i + 1 < n1; ++i)
    for (std::size_t q = i * n2; q < (i + 2) * n2; ++q) hx.set(i, q);
  // Inner checks: one open repetition check per block.
  BitMatrix hz = kron(BitMatrix::identity(n1), repetition_check(n2, Boundary::Open).matrix);
  CssCode code{std::move(hx), std::move(hz)};
  validate_css(code);
  return code;
}

CssCode toric_2d(std::size_t j, std::size_t k) {
  return hypergraph_product(repetition_check(j, Boundary::Periodic).matrix,
                            repetition_check(k, Boundary::Periodic).matrix);
}

std::size_t y_undetectable_dim(const CssCode& code) { return kernel_dim(vstack({code.hx, code.hz})); }

}  // namespace xyz
