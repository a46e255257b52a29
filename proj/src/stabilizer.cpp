#include "xyz/stabilizer.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace xyz {

PauliError::PauliError(BitVector xbits, BitVector zbits) : x(std::move(xbits)), z(std::move(zbits)) {
  if (x.size() != z.size()) throw std::invalid_argument("PauliError: x and z lengths differ");
}

PauliError PauliError::from_string(std::string_view paulis) {
  PauliError e(paulis.size());
  for (std::size_t q = 0; q < paulis.size(); ++q) {
    switch (paulis[q]) {
      case 'I': case '_': case '.': break;
      case 'X': e.x.set(q); break;
      case 'Y': e.x.set(q); e.z.set(q); break;
      case 'Z': e.z.set(q); break;
      default: throw std::invalid_argument(std::string("bad Pauli character '") + paulis[q] + "'");
    }
  }
  return e;
}

PauliError PauliError::from_symplectic(const BitVector& xz) {
  if (xz.size() % 2 != 0) throw std::invalid_argument("symplectic vector has odd length");
  const std::size_t n = xz.size() / 2;
  return {xz.slice(0, n), xz.slice(n, n)};
}

std::size_t PauliError::weight() const { return (x | z).popcount(); }

Pauli PauliError::at(std::size_t q) const noexcept {
  const bool xb = x.get(q), zb = z.get(q);
  if (xb && zb) return Pauli::Y;
  if (xb) return Pauli::X;
  if (zb) return Pauli::Z;
  return Pauli::I;
}

void PauliError::set(std::size_t q, Pauli p) noexcept {
  x.set(q, p == Pauli::X || p == Pauli::Y);
  z.set(q, p == Pauli::Z || p == Pauli::Y);
}

PauliError& PauliError::operator*=(const PauliError& other) {
  if (other.n() != n()) throw std::invalid_argument("PauliError product: length mismatch");
  x ^= other.x;
  z ^= other.z;
  return *this;
}

std::string PauliError::to_string() const {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  std::string s(n(), 'I');
  for (std::size_t q = 0; q < n(); ++q) s[q] = kChars[static_cast<int>(at(q))];
  return s;
}

bool anticommute(const PauliError& a, const PauliError& b) { return a.x.dot(b.z) != a.z.dot(b.x); }

StabilizerCode StabilizerCode::from_css(const CssCode& css, std::string family_tag) {
  validate_css(css);
  const std::size_t n = css.n();
  StabilizerCode code;
  code.hx = vstack({css.hx, BitMatrix(css.hz.rows(), n)});
  code.hz = vstack({BitMatrix(css.hx.rows(), n), css.hz});
  code.qubit_blocks = {{"Q", n}};
  code.check_blocks = {{"X", css.hx.rows()}, {"Z", css.hz.rows()}};
  code.family_tag = std::move(family_tag);
  return code;
}

void validate_layout(const StabilizerCode& code) {
  if (code.hx.rows() != code.hz.rows() || code.hx.cols() != code.hz.cols())
    throw std::invalid_argument("stabilizer code: Hx is " + std::to_string(code.hx.rows()) + "x" +
                                std::to_string(code.hx.cols()) + " but Hz is " + std::to_string(code.hz.rows()) +
                                "x" + std::to_string(code.hz.cols()));
  auto total = [](const std::vector<Block>& blocks) {
    return std::accumulate(blocks.begin(), blocks.end(), std::size_t{0},
                           [](std::size_t acc, const Block& b) { return acc + b.size; });
  };
  if (!code.qubit_blocks.empty() && total(code.qubit_blocks) != code.n())
    throw std::invalid_argument("qubit block sizes sum to " + std::to_string(total(code.qubit_blocks)) +
                                ", expected n = " + std::to_string(code.n()));
  if (!code.check_blocks.empty() && total(code.check_blocks) != code.num_checks())
    throw std::invalid_argument("check block sizes sum to " + std::to_string(total(code.check_blocks)) +
                                ", expected " + std::to_string(code.num_checks()) + " checks");
}

namespace {

// Hx·Hzᵀ + Hz·Hxᵀ
BitMatrix commutator_matrix(const StabilizerCode& code) {
  BitMatrix a = matmul(code.hx, transpose(code.hz));
  const BitMatrix b = matmul(code.hz, transpose(code.hx));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto dst = a.row_words(r);
    auto src = b.row_words(r);
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
  }
  return a;
}

void require_same_length(const StabilizerCode& code, const PauliError& e) {
  if (e.n() != code.n())
    throw std::invalid_argument("Pauli of length " + std::to_string(e.n()) + " applied to code with n = " +
                                std::to_string(code.n()));
}

}  // namespace

bool verify_commutation(const StabilizerCode& code) {
  if (code.hx.rows() != code.hz.rows() || code.hx.cols() != code.hz.cols()) return false;
  return !commutator_matrix(code).any();
}

std::optional<std::pair<std::size_t, std::size_t>> first_anticommuting_pair(const StabilizerCode& code) {
  const BitMatrix c = commutator_matrix(code);
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = i + 1; j < c.cols(); ++j)
      if (c.get(i, j)) return std::pair{i, j};
  return std::nullopt;
}

std::size_t code_dimension(const StabilizerCode& code) {
  if (!verify_commutation(code)) throw std::invalid_argument("stabilizer checks do not commute");
  return code.n() - rank(code.symplectic_matrix());
}

BitVector syndrome(const StabilizerCode& code, const PauliError& e) {
  require_same_length(code, e);
  return code.hx.multiply(e.z) ^ code.hz.multiply(e.x);
}

bool is_stabilizer(const StabilizerCode& code, const PauliError& e) {
  require_same_length(code, e);
  if (e.is_identity()) return false;
  return in_row_space(code.symplectic_matrix(), e.symplectic());
}

bool is_logical(const StabilizerCode& code, const PauliError& e) {
  if (syndrome(code, e).any()) return false;
  if (e.is_identity()) return false;
  return !in_row_space(code.symplectic_matrix(), e.symplectic());
}

StabilizerGroup::StabilizerGroup(const StabilizerCode& code) : space_(code.symplectic_matrix()) {}

PauliError StabilizerGroup::reduce(const PauliError& e) const {
  BitVector v = e.symplectic();
  space_.reduce(v);
  return PauliError::from_symplectic(v);
}

std::vector<PauliError> LogicalBasis::operators() const {
  std::vector<PauliError> ops;
  ops.reserve(2 * pairs.size());
  for (const auto& [lx, lz] : pairs) {
    ops.push_back(lx);
    ops.push_back(lz);
  }
  return ops;
}

LogicalBasis symplectic_gram_schmidt(std::vector<PauliError> reps) {
  LogicalBasis basis;
  while (!reps.empty()) {
    PauliError a = std::move(reps.back());
    reps.pop_back();
    std::size_t partner = reps.size();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (anticommute(a, reps[i])) {
        partner = i;
        break;
      }
    }
    if (partner == reps.size()) throw std::logic_error("symplectic form is degenerate on the representatives");
    PauliError b = std::move(reps[partner]);
    reps.erase(reps.begin() + static_cast<std::ptrdiff_t>(partner));
    // Make the remaining operators commute with both a and b.
    for (auto& r : reps) {
      const bool with_a = anticommute(r, a);
      const bool with_b = anticommute(r, b);
      if (with_a) r *= b;
      if (with_b) r *= a;
    }
    basis.pairs.push_back({std::move(a), std::move(b)});
  }
  return basis;
}

LogicalBasis extract_logical_basis(const StabilizerCode& code) {
  if (!verify_commutation(code)) throw std::invalid_argument("stabilizer checks do not commute");
  // Centralizer: (vx | vz) with Hx·vz + Hz·vx = 0, i.e. kernel of [Hz | Hx].
  const std::vector<BitVector> centralizer = kernel_basis(hstack({code.hz, code.hx}));
  RowSpace space(code.symplectic_matrix());
  std::vector<PauliError> reps;
  for (const BitVector& v : centralizer) {
    if (space.insert(v)) reps.push_back(PauliError::from_symplectic(v));
  }
  return symplectic_gram_schmidt(std::move(reps));
}

std::optional<std::string> check_logical_basis(const StabilizerCode& code, const LogicalBasis& basis) {
  const std::vector<PauliError> ops = basis.operators();
  RowSpace space(code.symplectic_matrix());
  const std::size_t stab_rank = space.dim();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].n() != code.n()) return "operator " + std::to_string(i) + " has wrong length";
    if (syndrome(code, ops[i]).any()) return "operator " + std::to_string(i) + " has nonzero syndrome";
    if (!space.insert(ops[i].symplectic()))
      return "operator " + std::to_string(i) + " is dependent on stabilizers and earlier logicals";
  }
  if (space.dim() != stab_rank + ops.size()) return "logicals not independent modulo stabilizers";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const auto& [xi, zi] = basis.pairs[i];
      const auto& [xj, zj] = basis.pairs[j];
      if (anticommute(xi, zj) != (i == j))
        return "X_" + std::to_string(i) + " / Z_" + std::to_string(j) + " pairing is wrong";
      if (i < j && (anticommute(xi, xj) || anticommute(zi, zj)))
        return "pairs " + std::to_string(i) + " and " + std::to_string(j) + " do not commute";
    }
  }
  return std::nullopt;
}

}  // namespace xyz
