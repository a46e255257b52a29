#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "support.hpp"
#include "xyz/classical.hpp"
#include "xyz/css.hpp"
#include "xyz/products.hpp"
#include "xyz/stabilizer.hpp"

using namespace xyz;

namespace {

std::map<std::string, std::size_t> offsets(const std::vector<Block>& blocks) {
  std::map<std::string, std::size_t> out;
  std::size_t at = 0;
  for (const auto& b : blocks) {
    out[b.name] = at;
    at += b.size;
  }
  return out;
}

std::size_t block_size(const std::vector<Block>& blocks, const std::string& name) {
  for (const auto& b : blocks)
    if (b.name == name) return b.size;
  return 0;
}

// False if `e` acts on a block missing from `want`, or inside a listed block
// with a Pauli other than the listed one.
bool block_pattern(const StabilizerCode& code, const PauliError& e, const std::map<std::string, Pauli>& want) {
  std::size_t at = 0;
  for (const auto& b : code.qubit_blocks) {
    const auto it = want.find(b.name);
    for (std::size_t q = at; q < at + b.size; ++q) {
      const Pauli p = e.at(q);
      if (p == Pauli::I) continue;
      if (it == want.end() || it->second != p) return false;
    }
    at += b.size;
  }
  return true;
}

// Minimum nonzero weight of span(basis) by full enumeration.
std::size_t span_min_oracle(const std::vector<BitVector>& basis) {
  std::size_t best = SIZE_MAX;
  const std::size_t dim = basis.size();
  BitVector v(basis.front().size());
  for (std::uint64_t g = 1; g < (std::uint64_t{1} << dim); ++g) {
    // Gray code step: flip the generator at the lowest set bit of g.
    v ^= basis[static_cast<std::size_t>(__builtin_ctzll(g))];
    best = std::min(best, v.popcount());
  }
  return best;
}

}  // namespace

TEST_CASE("3D XYZ product of periodic repetition checks") {
  const auto h2 = repetition_check(2, Boundary::Periodic).matrix;
  const StabilizerCode a = xyz3(h2, h2, h2);
  CHECK(a.n() == 32);
  CHECK(code_dimension(a) == 8);
  const auto h3 = repetition_check(3, Boundary::Periodic).matrix;
  const StabilizerCode b = xyz3(h3, h3, h3);
  CHECK(b.n() == 108);
  CHECK(code_dimension(b) == 12);
  for (std::size_t n = 2; n <= 4; ++n) {
    CAPTURE(n);
    CHECK(code_dimension(chamon3(n, n, n)) == 4 * n);
  }
}

TEST_CASE("property: 3D XYZ products of random checks commute and have the stated length") {
  testing::Rng rng(41);
  for (int t = 0; t < 30; ++t) {
    BitMatrix h[3];
    std::size_t m[3], n[3];
    for (int i = 0; i < 3; ++i) {
      m[i] = testing::uniform(rng, 1, 3);
      n[i] = testing::uniform(rng, 1, 3);
      h[i] = testing::random_matrix(rng, m[i], n[i]);
    }
    const StabilizerCode c = xyz3(h[0], h[1], h[2]);
    CHECK(verify_commutation(c));
    CHECK(c.n() == n[0] * n[1] * n[2] + m[0] * m[1] * n[2] + m[0] * n[1] * m[2] + n[0] * m[1] * m[2]);
  }
}

TEST_CASE("4D XYZ product examples") {
  const StabilizerCode a = xyz4(toric4_spec(2, 2, 2, 2));
  CHECK(a.n() == 128);
  CHECK(code_dimension(a) == 32);
  CHECK(code_dimension(xyz4(concat4_spec(3, 3, 3, 3))) == 1);
  CHECK(code_dimension(xyz4(toric4_spec(2, 3, 2, 3))) == 8);
  CHECK(is_xyz4(a));
  CHECK_FALSE(is_xyz4(toric4(2, 2, 2, 2)));

  const Product4Spec spec = concat4_spec(3, 5, 3, 5);
  const std::size_t m1 = 2, m2 = 12, na = 15, m3 = 2, m4 = 12, nb = 15;
  const StabilizerCode c = xyz4(spec);
  CHECK(c.qubit_blocks == std::vector<Block>{{"A", m1 * m4}, {"B", m1 * m3}, {"C", na * nb}, {"D", m2 * m4},
                                              {"E", m2 * m3}});
  CHECK(c.check_blocks == std::vector<Block>{{"S", m1 * nb}, {"T", na * m4}, {"U", na * m3}, {"V", m2 * nb}});

  Product4Spec broken = toric4_spec(2, 2, 2, 2);
  broken.css2.hz.flip(0, 0);
  CHECK_THROWS_AS(xyz4(broken), std::invalid_argument);
  CHECK_THROWS_AS(homological4(broken), std::invalid_argument);
}

TEST_CASE("4D homological product examples") {
  for (std::size_t j = 2; j <= 3; ++j)
    for (std::size_t k = 2; k <= 3; ++k) {
      CAPTURE(j);
      CAPTURE(k);
      CHECK(code_dimension(homological4(toric4_spec(j, k, j, k))) == 6);
    }
  CHECK(code_dimension(homological4(concat4_spec(3, 3, 3, 3))) == 1);
  CHECK(code_dimension(homological4(concat4_spec(3, 5, 3, 5))) == 1);
  const StabilizerCode h = homological4(toric4_spec(2, 2, 2, 2));
  // CSS: every row is pure X or pure Z.
  for (std::size_t r = 0; r < h.num_checks(); ++r) CHECK((h.hx.row(r).none() || h.hz.row(r).none()));
}

TEST_CASE("property: homological and XYZ products share the check layout") {
  testing::Rng rng(42);
  for (int t = 0; t < 30; ++t) {
    const Product4Spec spec{testing::random_small_css(rng), testing::random_small_css(rng)};
    const StabilizerCode x = xyz4(spec), h = homological4(spec);
    CHECK(x.check_blocks == h.check_blocks);
    CHECK(x.num_checks() == h.num_checks());
    for (const char* name : {"A", "C", "E"}) CHECK(block_size(x.qubit_blocks, name) == block_size(h.qubit_blocks, name));
  }
}

TEST_CASE("dimension formula examples") {
  for (std::size_t n1 = 2; n1 <= 4; ++n1)
    for (std::size_t n2 = 2; n2 <= 4; ++n2)
      for (const auto& [n3, n4] : {std::pair<std::size_t, std::size_t>{2, 4}, {3, 3}, {3, 5}}) {
        CAPTURE(n1);
        CAPTURE(n2);
        CHECK(dimension_formula(toric4_spec(n1, n2, n3, n4)) == 8 * std::gcd(n1, n2) * std::gcd(n3, n4));
      }
  for (std::size_t a : {3, 5, 7})
    for (std::size_t b : {3, 5}) CHECK(dimension_formula(concat4_spec(a, b, b, a)) == 1);
  CHECK(dimension_formula(toric4_spec(5, 5, 5, 5)) == 200);
}

TEST_CASE("property: dimension formula matches the rank of the constructed code") {
  testing::Rng rng(43);
  for (int t = 0; t < 80; ++t) {
    const Product4Spec spec{testing::random_small_css(rng), testing::random_small_css(rng)};
    CHECK(dimension_formula(spec) == code_dimension(xyz4(spec)));
  }
}

TEST_CASE("closed-form logical bases") {
  const Product4Spec spec = toric4_spec(2, 2, 2, 2);
  const StabilizerCode code = xyz4(spec);
  const LogicalBasis b = logical_basis_closed_form(spec);
  CHECK(b.size() == 32);
  CHECK_FALSE(check_logical_basis(code, b).has_value());
  for (const auto& op : b.operators()) CHECK(syndrome(code, op).none());

  const Product4Spec cspec = concat4_spec(3, 3, 3, 3);
  const StabilizerCode concat = xyz4(cspec);
  const LogicalBasis cb = logical_basis_closed_form(cspec);
  REQUIRE(cb.size() == 1);
  CHECK_FALSE(check_logical_basis(concat, cb).has_value());
  CHECK(cb.pairs[0].z.weight() == 9);
  CHECK(block_pattern(concat, cb.pairs[0].z, {{"C", Pauli::Z}}));
}

TEST_CASE("property: closed-form bases are valid and independent modulo stabilizers") {
  testing::Rng rng(44);
  for (int t = 0; t < 60; ++t) {
    const Product4Spec spec{testing::random_small_css(rng), testing::random_small_css(rng)};
    const StabilizerCode code = xyz4(spec);
    const LogicalBasis b = logical_basis_closed_form(spec);
    CHECK(b.size() == dimension_formula(spec));
    CHECK_FALSE(check_logical_basis(code, b).has_value());
    BitMatrix stacked = code.symplectic_matrix();
    const std::size_t stab_rank = rank(stacked);
    std::vector<BitVector> rows;
    for (const auto& op : b.operators()) rows.push_back(op.symplectic());
    stacked = vstack({stacked, BitMatrix::from_vectors(rows, stacked.cols())});
    CHECK(rank(stacked) == stab_rank + 2 * b.size());
  }
}

TEST_CASE("block-major permutation is a bijection onto the block layout") {
  for (std::size_t p1 = 0; p1 <= 3; ++p1)
    for (std::size_t p2 = 0; p2 <= 3; ++p2)
      for (std::size_t q1 = 0; q1 <= 3; ++q1)
        for (std::size_t q2 = 0; q2 <= 2; ++q2) {
          const auto perm = block_major_permutation(p1, p2, q1, q2);
          const std::size_t total = (p1 + p2) * (q1 + q2);
          REQUIRE(perm.size() == total);
          std::set<std::size_t> seen(perm.begin(), perm.end());
          CHECK(seen.size() == total);
          if (total) CHECK(*seen.rbegin() == total - 1);
        }
  // u = (u1; u2) with |u1| = 1, |u2| = 1; v = (v1; v2) with |v1| = 2, |v2| = 1.
  CHECK(block_major_permutation(1, 1, 2, 1) == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
  CHECK(block_major_permutation(2, 0, 1, 1) == std::vector<std::size_t>{0, 2, 1, 3});
}

TEST_CASE("distance upper bound examples") {
  CHECK(distance_upper_bound(concat4_spec(3, 5, 3, 5)) == 15);
  CHECK(distance_upper_bound(concat4_spec(3, 3, 3, 3)) == 9);
  CHECK(distance_upper_bound(toric4_spec(2, 3, 2, 3)) == 6);
  CHECK(distance_upper_bound(concat4_spec(7, 7, 7, 7)) == 49);
  const Product4Spec trivial{{BitMatrix::identity(2), BitMatrix(0, 2)}, {BitMatrix::identity(1), BitMatrix(0, 1)}};
  CHECK_THROWS_WITH_AS(distance_upper_bound(trivial), "bound undefined", std::invalid_argument);
}

TEST_CASE("distance bound of the 5x5 Chamon seeds by enumeration") {
  const Product4Spec spec = toric4_spec(5, 5, 5, 5);
  const auto& [hx, hz] = spec.css1;
  const std::size_t d1 = span_min_oracle(kernel_basis(vstack({hx, hz})));
  const std::size_t d3 = span_min_oracle(kernel_basis(hstack({transpose(hz), transpose(hx)})));
  CHECK(d1 == 10);
  CHECK(d3 == 10);
  CHECK(distance_upper_bound(spec) == std::min(d1, d3));
}

TEST_CASE("property: kernel weights agree with enumeration") {
  testing::Rng rng(45);
  for (int t = 0; t < 40; ++t) {
    const Product4Spec spec{testing::random_small_css(rng), testing::random_small_css(rng)};
    const KernelWeights w = kernel_weights(spec);
    const auto check = [](const std::optional<std::size_t>& got, const BitMatrix& m) {
      const auto ker = kernel_basis(m);
      if (ker.empty())
        CHECK_FALSE(got.has_value());
      else
        CHECK(got == span_min_oracle(ker));
    };
    check(w.d1, vstack({spec.css1.hx, spec.css1.hz}));
    check(w.d2, vstack({spec.css2.hx, spec.css2.hz}));
    check(w.d3, hstack({transpose(spec.css1.hz), transpose(spec.css1.hx)}));
    check(w.d4, hstack({transpose(spec.css2.hz), transpose(spec.css2.hx)}));
  }
}

TEST_CASE("family constructors") {
  CHECK(code_dimension(chamon4(2, 2, 2, 2)) == 32);
  CHECK(code_dimension(chamon4(3, 3, 3, 3)) == 72);
  CHECK(code_dimension(chamon4(2, 3, 2, 3)) == 8);
  CHECK(code_dimension(toric4(3, 3, 3, 3)) == 6);
  CHECK(code_dimension(xyz4_concat(3, 5, 3, 5)) == 1);
  CHECK(code_dimension(homprod4_concat(3, 5, 3, 5)) == 1);
  CHECK(code_dimension(toric3(2, 2, 2)) == 3);
  CHECK(dimension_formula(concat4_spec(7, 7, 7, 7)) == 1);

  CHECK(make_family("chamon4", {2, 2, 2, 2}).n() == 128);
  CHECK(family_arity("chamon3") == 3);
  CHECK(family_arity("toric2") == 2);
  CHECK(family_spec("chamon3", {2, 2, 2}) == std::nullopt);
  CHECK(family_spec("xyz4-concat", {3, 3, 3, 3}).has_value());
  CHECK_THROWS_AS(make_family("nosuch", {2}), std::invalid_argument);
  CHECK_THROWS_AS(make_family("chamon4", {2, 2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(xyz4_concat(4, 3, 3, 3), std::invalid_argument);
  for (const auto& name : family_names()) CHECK(family_arity(name) >= 2);
}

TEST_CASE("products of S and V rows that cancel on block C are stabilizers on A, B, D, E") {
  const Product4Spec spec = toric4_spec(2, 2, 2, 2);
  const StabilizerCode code = xyz4(spec);
  const BitMatrix& c = spec.css1.hx;
  const BitMatrix& d = spec.css1.hz;
  const std::size_t m1 = c.rows(), nb = spec.css2.hx.cols();
  const auto off = offsets(code.check_blocks);
  const auto ker = kernel_basis(hstack({transpose(c), transpose(d)}));
  REQUIRE_FALSE(ker.empty());
  std::size_t tried = 0;
  for (const auto& xy : ker) {
    for (std::size_t i = 0; i < nb; ++i) {
      PauliError p(code.n());
      for (std::size_t r : xy.support()) {
        const std::size_t row = r < m1 ? off.at("S") + r * nb + i : off.at("V") + (r - m1) * nb + i;
        p *= code.check(row);
      }
      CHECK(block_pattern(code, p, {{"A", Pauli::X}, {"B", Pauli::Y}, {"D", Pauli::Y}, {"E", Pauli::X}}));
      CHECK_FALSE(p.is_identity());
      CHECK(is_stabilizer(code, p));
      ++tried;
    }
  }
  CHECK(tried == ker.size() * nb);

  // Second-type X logicals share the pattern but are not stabilizers.
  for (const auto& pair : logical_basis_closed_form(spec).pairs) {
    if (block_pattern(code, pair.x, {{"A", Pauli::X}, {"B", Pauli::Y}, {"D", Pauli::Y}, {"E", Pauli::X}})) {
      CHECK(is_logical(code, pair.x));
      CHECK_FALSE(is_stabilizer(code, pair.x));
    }
  }
}

TEST_CASE("products of T and U rows that cancel off block C are X stabilizers on C") {
  const Product4Spec spec = toric4_spec(2, 2, 2, 2);
  const StabilizerCode code = xyz4(spec);
  const std::size_t m3 = spec.css2.hx.rows(), m4 = spec.css2.hz.rows();
  const auto off = offsets(code.check_blocks);
  const auto ker = kernel_basis(vstack({spec.css1.hx, spec.css1.hz}));
  REQUIRE_FALSE(ker.empty());
  for (const auto& x : ker) {
    for (std::size_t i = 0; i < m4; ++i) {
      PauliError p(code.n());
      for (std::size_t a : x.support()) p *= code.check(off.at("T") + a * m4 + i);
      CHECK(block_pattern(code, p, {{"C", Pauli::X}}));
      CHECK(is_stabilizer(code, p));
    }
    for (std::size_t j = 0; j < m3; ++j) {
      PauliError p(code.n());
      for (std::size_t a : x.support()) p *= code.check(off.at("U") + a * m3 + j);
      CHECK(block_pattern(code, p, {{"C", Pauli::X}}));
      CHECK(is_stabilizer(code, p));
    }
  }
}
