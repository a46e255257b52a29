#include <doctest.h>

#include "support.hpp"
#include "xyz/css.hpp"
#include "xyz/products.hpp"
#include "xyz/stabilizer.hpp"

using namespace xyz;

TEST_CASE("pauli strings and products") {
  const PauliError a = PauliError::from_string("IXYZ");
  CHECK(a.weight() == 3);
  CHECK(a.at(0) == Pauli::I);
  CHECK(a.at(2) == Pauli::Y);
  CHECK(a.x.to_string() == "0110");
  CHECK(a.z.to_string() == "0011");
  CHECK(a.to_string() == "IXYZ");
  CHECK((a * PauliError::from_string("XXXX")).to_string() == "XIZY");
  CHECK(PauliError::from_symplectic(a.symplectic()) == a);
  CHECK(anticommute(PauliError::from_string("X"), PauliError::from_string("Z")));
  CHECK(anticommute(PauliError::from_string("Y"), PauliError::from_string("Z")));
  CHECK_FALSE(anticommute(PauliError::from_string("XX"), PauliError::from_string("ZZ")));
  CHECK_THROWS_AS(PauliError::from_string("IQ"), std::invalid_argument);
}

TEST_CASE("commutation checks") {
  const StabilizerCode c = StabilizerCode::from_css(concatenated_rep(3, 3));
  CHECK(verify_commutation(c));
  CHECK(verify_commutation(chamon4(2, 2, 2, 2)));
  StabilizerCode bad = c;
  bad.hz.flip(7, 0);
  CHECK_FALSE(verify_commutation(bad));
  CHECK(first_anticommuting_pair(bad).has_value());
  CHECK_THROWS_AS(code_dimension(bad), std::invalid_argument);
}

TEST_CASE("code dimension examples") {
  CHECK(code_dimension(toric4(2, 2, 2, 2)) == 6);
  CHECK(code_dimension(chamon4(2, 2, 2, 2)) == 32);
  CHECK(code_dimension(xyz4_concat(3, 3, 3, 3)) == 1);
  CHECK(code_dimension(StabilizerCode::from_css(toric_2d(3, 3))) == 2);
}

TEST_CASE("syndrome examples") {
  const CssCode css = concatenated_rep(3, 3);
  const StabilizerCode c = StabilizerCode::from_css(css);
  CHECK(syndrome(c, PauliError(9)).none());
  for (std::size_t r = 0; r < c.num_checks(); ++r) CHECK(syndrome(c, c.check(r)).none());
  PauliError x0(9);
  x0.set(0, Pauli::X);
  const BitVector s = syndrome(c, x0);
  // X rows come first in from_css; only Z checks touching qubit 0 fire.
  for (std::size_t r = 0; r < css.hx.rows(); ++r) CHECK_FALSE(s.get(r));
  for (std::size_t r = 0; r < css.hz.rows(); ++r) CHECK(s.get(css.hx.rows() + r) == css.hz.get(r, 0));
  CHECK(s.popcount() == 1);
}

TEST_CASE("stabilizer and logical membership") {
  const StabilizerCode c = StabilizerCode::from_css(concatenated_rep(3, 3));
  for (std::size_t r = 0; r < c.num_checks(); ++r) CHECK(is_stabilizer(c, c.check(r)));
  CHECK(is_logical(c, PauliError::from_string("YYYYYYYYY")));
  CHECK_FALSE(is_logical(c, PauliError(9)));
  CHECK_FALSE(is_stabilizer(c, PauliError(9)));
}

TEST_CASE("logical basis extraction") {
  CHECK(extract_logical_basis(StabilizerCode::from_css(toric_2d(3, 3))).size() == 2);
  const StabilizerCode c = xyz4_concat(3, 3, 3, 3);
  const LogicalBasis b = extract_logical_basis(c);
  CHECK(b.size() == 1);
  CHECK_FALSE(check_logical_basis(c, b).has_value());
  StabilizerCode zero;
  zero.hx = BitMatrix::from_rows({"10", "00"});
  zero.hz = BitMatrix::from_rows({"00", "01"});
  zero.qubit_blocks = {{"Q", 2}};
  zero.check_blocks = {{"X", 1}, {"Z", 1}};
  CHECK(extract_logical_basis(zero).size() == 0);
}

TEST_CASE("property: extracted logical bases satisfy every invariant") {
  testing::Rng rng(31);
  for (int t = 0; t < 40; ++t) {
    const CssCode css = testing::random_css(rng, testing::uniform(rng, 2, 12), testing::uniform(rng, 0, 5),
                                            testing::uniform(rng, 0, 5));
    const StabilizerCode code = StabilizerCode::from_css(css);
    const LogicalBasis b = extract_logical_basis(code);
    CHECK(b.size() == code_dimension(code));
    CHECK_FALSE(check_logical_basis(code, b).has_value());
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        CHECK(anticommute(b.pairs[i].x, b.pairs[j].z) == (i == j));
        CHECK_FALSE(anticommute(b.pairs[i].x, b.pairs[j].x));
        CHECK_FALSE(anticommute(b.pairs[i].z, b.pairs[j].z));
      }
      for (std::size_t r = 0; r < code.num_checks(); ++r) {
        CHECK(is_logical(code, b.pairs[i].x * code.check(r)));
      }
    }
  }
}

TEST_CASE("property: syndrome is linear and stabilizer reduction is canonical") {
  testing::Rng rng(32);
  const StabilizerCode code = chamon3(2, 2, 2);
  const StabilizerGroup group(code);
  for (int t = 0; t < 100; ++t) {
    const PauliError a = testing::random_pauli(rng, code.n()), b = testing::random_pauli(rng, code.n());
    CHECK(syndrome(code, a * b) == (syndrome(code, a) ^ syndrome(code, b)));
    const PauliError s = code.check(testing::uniform(rng, 0, code.num_checks() - 1));
    CHECK(group.reduce(a * s) == group.reduce(a));
    CHECK(group.contains(s));
  }
}

TEST_CASE("property: random CSS pairs give commuting products") {
  testing::Rng rng(33);
  for (int t = 0; t < 50; ++t) {
    const Product4Spec spec{testing::random_small_css(rng), testing::random_small_css(rng)};
    CHECK(verify_commutation(xyz4(spec)));
    CHECK(verify_commutation(homological4(spec)));
  }
}
