#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xyz/css.hpp"
#include "xyz/gf2.hpp"
#include "xyz/stabilizer.hpp"

namespace xyz {

/// 3D XYZ product of three classical checks H_i (m_i x n_i).
/// Qubit blocks A = n1 n2 n3, B = m1 m2 n3, C = m1 n2 m3, D = n1 m2 m3.
/// Check blocks S = m1 n2 n3, T = n1 m2 n3, U = n1 n2 m3, V = m1 m2 m3:
///   S: X(H1 x I x I) on A, Y(I x H2^T x I) on B, Z(I x I x H3^T) on C
///   T: Y(I x H2 x I) on A, X(H1^T x I x I) on B, Z(I x I x H3^T) on D
///   U: Z(I x I x H3) on A, X(H1^T x I x I) on C, Y(I x H2^T x I) on D
///   V: Z(I x I x H3) on B, Y(I x H2 x I) on C, X(H1 x I x I) on D
StabilizerCode xyz3(const BitMatrix& h1, const BitMatrix& h2, const BitMatrix& h3);

/// 4D XYZ product. With c = Hx1, d = Hz1, b = Hx2, a = Hz2:
///   qubits A = m1 m4, B = m1 m3, C = nA nB, D = m2 m4, E = m2 m3
///   S (m1 nB): X(I x a^T) on A, Y(I x b^T) on B, Z(c x I) on C
///   T (nA m4): Y(c^T x I) on A, X(I x a) on C,   Z(d^T x I) on D
///   U (nA m3): Z(c^T x I) on B, X(I x b) on C,   Y(d^T x I) on E
///   V (m2 nB): Z(d x I) on C,   Y(I x a^T) on D, X(I x b^T) on E
/// Throws std::invalid_argument if a seed fails the CSS check.
StabilizerCode xyz4(const Product4Spec& spec);

/// CSS 4D homological product on the same check layout: blocks B and D are
/// dropped, S and U become X checks and T and V become Z checks.
///   qubits A = m1 m4, C = nA nB, E = m2 m3
///   S: X on A (I x a^T), C (c x I)      T: Z on A (c^T x I), C (I x a)
///   U: X on C (I x b),   E (d^T x I)    V: Z on C (d x I),   E (I x b^T)
StabilizerCode homological4(const Product4Spec& spec);

/// True when `code` came from xyz4 and still carries its seeds, so the closed
/// forms below apply to it.
bool is_xyz4(const StabilizerCode& code);

/// (nA - m1 - m2)(nB - m3 - m4) + k_SV + k_TU with
/// k_SV = dim ker[Hz1^T, Hx1^T] * dim ker[Hx2; Hz2] and
/// k_TU = dim ker[Hx1; Hz1] * dim ker[Hz2^T, Hx2^T].
std::size_t dimension_formula(const Product4Spec& spec);

/// Logical basis of xyz4(spec) assembled from the closed forms:
///   first type, supported on C: X(alpha (x) beta) with alpha in ker[Hx1; Hz1],
///     beta outside the row space of [Hx2; Hz2]; Z(gamma (x) delta) with gamma
///     outside the row space of [Hx1; Hz1], delta in ker[Hx2; Hz2];
///   second type, supported on A, B, D, E: X on A, Y on B, Y on D, X on E from
///     u (x) v with u in ker[Hx1^T, Hz1^T], v outside Im[Hx2; Hz2]; and
///     Y on A, Z on B, Z on D, Y on E from u' outside Im[Hx1; Hz1],
///     v' in ker[Hx2^T, Hz2^T].
/// Complement vectors are unit vectors from the pivot procedure. The Z side is
/// recombined so that X_i and Z_j anticommute iff i = j.
LogicalBasis logical_basis_closed_form(const Product4Spec& spec);

/// The unpaired operators behind logical_basis_closed_form: every X form and
/// every Z form before recombination. Useful as light distance witnesses.
std::vector<PauliError> closed_form_operators(const Product4Spec& spec);

/// Index map from the Kronecker order of (u1; u2) (x) (v1; v2), |u_i| = p_i,
/// |v_j| = q_j, to the block-major order [u1 v1, u1 v2, u2 v1, u2 v2].
std::vector<std::size_t> block_major_permutation(std::size_t p1, std::size_t p2, std::size_t q1, std::size_t q2);

struct KernelWeights {
  std::optional<std::size_t> d1;  // ker[Hx1; Hz1]
  std::optional<std::size_t> d2;  // ker[Hx2; Hz2]
  std::optional<std::size_t> d3;  // ker[Hz1^T, Hx1^T]
  std::optional<std::size_t> d4;  // ker[Hz2^T, Hx2^T]
};

/// Minimum nonzero weight in each of the four seed kernels (nullopt for a
/// trivial kernel).
KernelWeights kernel_weights(const Product4Spec& spec);

/// min of the nontrivial kernel weights. Throws std::invalid_argument
/// ("bound undefined") when all four kernels are trivial.
std::size_t distance_upper_bound(const Product4Spec& spec);

/// Minimum nonzero weight of span(basis). Exact by enumeration for up to
/// kExactSpanDim generators, otherwise a randomized search (random
/// combinations followed by greedy reduction against the generators) with
/// `budget` restarts; the randomized result is an upper bound.
inline constexpr std::size_t kExactSpanDim = 24;
std::optional<std::size_t> span_min_weight(const std::vector<BitVector>& basis, std::size_t budget = 20000,
                                           std::uint64_t seed = 1);

Product4Spec toric4_spec(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t n4);
Product4Spec concat4_spec(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t n4);

StabilizerCode chamon3(std::size_t n1, std::size_t n2, std::size_t n3);
/// Three-dimensional toric code: qubits on edges of the periodic n1 x n2 x n3
/// cubic complex, X checks on vertices, Z checks on faces.
StabilizerCode toric3(std::size_t n1, std::size_t n2, std::size_t n3);
StabilizerCode chamon4(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t n4);
StabilizerCode xyz4_concat(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t n4);
StabilizerCode toric4(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t n4);
StabilizerCode homprod4_concat(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t n4);

/// Known family names for make_family.
const std::vector<std::string>& family_names();
/// Number of lengths the family takes.
std::size_t family_arity(const std::string& family);
/// Dispatch by family name: chamon3, toric3, chamon4, toric4, xyz4-concat,
/// homprod4-concat, toric2, concat2. Throws std::invalid_argument on an
/// unknown family or wrong number of lengths.
StabilizerCode make_family(const std::string& family, const std::vector<std::size_t>& lengths);
/// Seeds of a 4D family, nullopt for the 2D and 3D ones.
std::optional<Product4Spec> family_spec(const std::string& family, const std::vector<std::size_t>& lengths);

}  // namespace xyz
