#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xyz/css.hpp"
#include "xyz/gf2.hpp"

namespace xyz {

enum class Pauli : unsigned char { I = 0, X = 1, Y = 2, Z = 3 };

/// n-qubit Pauli operator up to phase, stored as (x-bits, z-bits).
/// Y on qubit q means x[q] = z[q] = 1.
struct PauliError {
  BitVector x;
  BitVector z;

  PauliError() = default;
  explicit PauliError(std::size_t n) : x(n), z(n) {}
  PauliError(BitVector xbits, BitVector zbits);

  /// "IXYZ..." string, one character per qubit.
  static PauliError from_string(std::string_view paulis);
  /// Inverse of symplectic(): first n bits are x, next n are z.
  static PauliError from_symplectic(const BitVector& xz);

  std::size_t n() const noexcept { return x.size(); }
  std::size_t weight() const;
  bool is_identity() const noexcept { return x.none() && z.none(); }
  Pauli at(std::size_t q) const noexcept;
  void set(std::size_t q, Pauli p) noexcept;
  BitVector support() const { return x | z; }
  BitVector symplectic() const { return x.concat(z); }

  /// Product up to phase.
  PauliError& operator*=(const PauliError& other);
  friend PauliError operator*(PauliError a, const PauliError& b) { return a *= b; }
  bool operator==(const PauliError& other) const = default;

  std::string to_string() const;
};

/// True if the two operators anticommute.
bool anticommute(const PauliError& a, const PauliError& b);

struct Block {
  std::string name;
  std::size_t size = 0;
  bool operator==(const Block&) const = default;
};

/// Stabilizer code in symplectic form: check i acts as X on qubits where
/// hx[i]=1,hz[i]=0, Z where 0/1 and Y where 1/1. Dependent rows are kept.
struct StabilizerCode {
  BitMatrix hx;
  BitMatrix hz;
  std::vector<Block> qubit_blocks;
  std::vector<Block> check_blocks;
  std::string family_tag;
  std::vector<std::size_t> lengths;
  /// Seed codes when this is a 4D product; `product` names the construction
  /// ("xyz4" or "homological4").
  std::optional<Product4Spec> seeds;
  std::string product;

  std::size_t n() const noexcept { return hx.cols(); }
  std::size_t num_checks() const noexcept { return hx.rows(); }
  PauliError check(std::size_t i) const { return {hx.row(i), hz.row(i)}; }
  /// Rows (hx | hz).
  BitMatrix symplectic_matrix() const { return hstack({hx, hz}); }

  static StabilizerCode from_css(const CssCode& css, std::string family_tag = "css");
};

/// Throws std::invalid_argument when shapes or block sizes are inconsistent.
void validate_layout(const StabilizerCode& code);

bool verify_commutation(const StabilizerCode& code);
/// First anticommuting pair of check rows (i < j), if any.
std::optional<std::pair<std::size_t, std::size_t>> first_anticommuting_pair(const StabilizerCode& code);

/// n - rank[hx | hz]. Throws std::invalid_argument if checks do not commute.
std::size_t code_dimension(const StabilizerCode& code);

/// s = hx * e.z + hz * e.x
BitVector syndrome(const StabilizerCode& code, const PauliError& e);

/// The identity counts as neither a stabilizer nor a logical.
bool is_stabilizer(const StabilizerCode& code, const PauliError& e);
bool is_logical(const StabilizerCode& code, const PauliError& e);

/// Cached stabilizer row space for repeated membership queries.
class StabilizerGroup {
 public:
  explicit StabilizerGroup(const StabilizerCode& code);

  std::size_t rank() const noexcept { return space_.dim(); }
  bool contains(const PauliError& e) const { return space_.contains(e.symplectic()); }
  /// e modulo the stabilizer group (canonical coset representative).
  PauliError reduce(const PauliError& e) const;

 private:
  RowSpace space_;
};

struct LogicalPair {
  PauliError x;
  PauliError z;
};

struct LogicalBasis {
  std::vector<LogicalPair> pairs;
  std::size_t size() const noexcept { return pairs.size(); }
  /// All 2k operators: x_0, z_0, x_1, z_1, ...
  std::vector<PauliError> operators() const;
};

/// Completes the stabilizer group to the centralizer and runs symplectic
/// Gram-Schmidt on the quotient. Returns exactly code_dimension(code) pairs.
LogicalBasis extract_logical_basis(const StabilizerCode& code);

/// Symplectic Gram-Schmidt over a list of centralizer representatives that
/// are independent modulo the stabilizers. Throws std::logic_error if the
/// form is degenerate on the list.
LogicalBasis symplectic_gram_schmidt(std::vector<PauliError> reps);

/// Checks all LogicalBasis invariants against the code; returns a
/// description of the first violation or nullopt.
std::optional<std::string> check_logical_basis(const StabilizerCode& code, const LogicalBasis& basis);

}  // namespace xyz
