#include <doctest.h>

#include <numeric>

#include "support.hpp"
#include "xyz/classical.hpp"
#include "xyz/css.hpp"
#include "xyz/distance.hpp"
#include "xyz/stabilizer.hpp"

using namespace xyz;

namespace {

std::size_t css_k(const CssCode& c) { return c.n() - rank(c.hx) - rank(c.hz); }

}  // namespace

TEST_CASE("hypergraph product of periodic repetition checks") {
  const auto h2 = repetition_check(2, Boundary::Periodic).matrix;
  const auto h3 = repetition_check(3, Boundary::Periodic).matrix;
  const CssCode a = hypergraph_product(h2, h2);
  CHECK(a.n() == 8);
  CHECK(css_k(a) == 2);
  const CssCode b = hypergraph_product(h3, h3);
  CHECK(b.n() == 18);
  CHECK(css_k(b) == 2);
}

TEST_CASE("hypergraph product layout") {
  const BitMatrix h1 = BitMatrix::from_rows({"110", "011"});
  const BitMatrix h2 = BitMatrix::from_rows({"1111"});
  const CssCode c = hypergraph_product(h1, h2);
  CHECK(c.hx == hstack({kron(BitMatrix::identity(3), h2), kron(transpose(h1), BitMatrix::identity(1))}));
  CHECK(c.hz == hstack({kron(h1, BitMatrix::identity(4)), kron(BitMatrix::identity(2), transpose(h2))}));
  CHECK(c.n() == 3 * 4 + 2 * 1);
}

TEST_CASE("property: hypergraph products always commute") {
  testing::Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const BitMatrix h1 = testing::random_matrix(rng, testing::uniform(rng, 1, 5), testing::uniform(rng, 1, 6));
    const BitMatrix h2 = testing::random_matrix(rng, testing::uniform(rng, 1, 5), testing::uniform(rng, 1, 6));
    const CssCode c = hypergraph_product(h1, h2);
    CHECK(css_commutes(c.hx, c.hz));
    CHECK_NOTHROW(validate_css(c));
  }
}

TEST_CASE("concatenated repetition codes") {
  const CssCode c = concatenated_rep(3, 3);
  CHECK(c.n() == 9);
  CHECK(c.hx.rows() == 2);
  CHECK(c.hz.rows() == 6);
  for (std::size_t r = 0; r < 2; ++r) CHECK(c.hx.row_weight(r) == 6);
  for (std::size_t r = 0; r < 6; ++r) CHECK(c.hz.row_weight(r) == 2);
  CHECK(c.hx == BitMatrix::from_rows({"111111000", "000111111"}));
  CHECK(css_k(c) == 1);
  CHECK(testing::brute_force_distance(StabilizerCode::from_css(c), 3) == 3);

  const CssCode d = concatenated_rep(3, 5);
  CHECK(d.n() == 15);
  CHECK(css_k(d) == 1);
  for (std::size_t n1 : {3, 5, 7})
    for (std::size_t n2 : {3, 5, 7}) {
      const CssCode e = concatenated_rep(n1, n2);
      CHECK(css_commutes(e.hx, e.hz));
      CHECK(y_undetectable_dim(e) == 1);
      CHECK(css_k(e) == 1);
    }
  CHECK_THROWS_AS(concatenated_rep(4, 3), std::invalid_argument);
  CHECK_THROWS_AS(concatenated_rep(3, 1), std::invalid_argument);
}

TEST_CASE("toric codes") {
  CHECK(toric_2d(2, 2).n() == 8);
  CHECK(css_k(toric_2d(2, 2)) == 2);
  CHECK(toric_2d(3, 3).n() == 18);
  CHECK(css_k(toric_2d(3, 3)) == 2);
  CHECK(toric_2d(4, 6).n() == 48);
  CHECK(y_undetectable_dim(toric_2d(3, 3)) == 6);
  CHECK(y_undetectable_dim(toric_2d(2, 3)) == 2);
  CHECK(testing::brute_force_distance(StabilizerCode::from_css(toric_2d(3, 3)), 3) == 3);
}

TEST_CASE("property: Y-undetectable dimension of toric codes is 2 gcd(j, k)") {
  for (std::size_t j = 2; j <= 6; ++j)
    for (std::size_t k = 2; k <= 6; ++k) {
      const CssCode c = toric_2d(j, k);
      CAPTURE(j);
      CAPTURE(k);
      CHECK(y_undetectable_dim(c) == 2 * std::gcd(j, k));
      CHECK(css_k(c) == 2);
      CHECK(css_commutes(c.hx, c.hz));
    }
}

TEST_CASE("validate_css rejects broken codes") {
  CssCode c = toric_2d(2, 2);
  c.hz.flip(0, 0);
  CHECK_THROWS_AS(validate_css(c), std::invalid_argument);
  CssCode d{BitMatrix(1, 3), BitMatrix(1, 4)};
  CHECK_THROWS_AS(validate_css(d), std::invalid_argument);
}
