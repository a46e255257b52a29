#include <doctest.h>

#include "support.hpp"
#include "xyz/css.hpp"
#include "xyz/distance.hpp"
#include "xyz/products.hpp"

using namespace xyz;

TEST_CASE("exact distance examples") {
  const StabilizerCode nine = StabilizerCode::from_css(concatenated_rep(3, 3));
  const DistanceResult r = exact_distance(nine, 5);
  CHECK(r.weight == 3);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->weight() == 3);
  CHECK(is_logical(nine, *r.witness));

  CHECK(exact_distance(StabilizerCode::from_css(toric_2d(3, 3)), 5).weight == 3);
  const DistanceResult low = exact_distance(nine, 2);
  CHECK_FALSE(low.weight.has_value());
  CHECK_FALSE(low.witness.has_value());
  CHECK(exact_distance(chamon4(2, 2, 2, 2), 4).weight == 4);
}

TEST_CASE("property: exact distance matches brute force enumeration") {
  testing::Rng rng(61);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = testing::uniform(rng, 3, 8);
    const CssCode css = testing::random_css(rng, n, testing::uniform(rng, 0, 3), testing::uniform(rng, 0, 3));
    const StabilizerCode code = StabilizerCode::from_css(css);
    const std::size_t w_max = 4;
    const std::size_t oracle = testing::brute_force_distance(code, w_max);
    const DistanceResult r = exact_distance(code, w_max);
    CAPTURE(t);
    if (oracle == 0) {
      CHECK_FALSE(r.weight.has_value());
    } else {
      CHECK(r.weight == oracle);
      REQUIRE(r.witness.has_value());
      CHECK(is_logical(code, *r.witness));
      CHECK(r.witness->weight() == oracle);
    }
    const DistanceResult s = exact_distance_serial(code, w_max);
    CHECK(s.weight == r.weight);
    CHECK(s.witness == r.witness);
  }
}

TEST_CASE("property: Monte Carlo distance is a valid upper bound that meets exact search on small codes") {
  testing::Rng rng(62);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = testing::uniform(rng, 4, 10);
    const CssCode css = testing::random_css(rng, n, testing::uniform(rng, 1, 4), testing::uniform(rng, 1, 4));
    const StabilizerCode code = StabilizerCode::from_css(css);
    const LogicalBasis basis = extract_logical_basis(code);
    if (basis.size() == 0) continue;
    const DistanceResult exact = exact_distance(code, n);
    const DistanceResult mc = mc_distance(code, basis, {2000, 7, 64});
    REQUIRE(exact.weight.has_value());
    REQUIRE(mc.weight.has_value());
    REQUIRE(mc.witness.has_value());
    CAPTURE(t);
    CHECK(is_logical(code, *mc.witness));
    CHECK(mc.witness->weight() == *mc.weight);
    CHECK(*mc.weight == *exact.weight);
  }
}

TEST_CASE("Monte Carlo distance on product codes") {
  const Product4Spec spec = toric4_spec(2, 2, 2, 2);
  const StabilizerCode code = xyz4(spec);
  const LogicalBasis basis = logical_basis_closed_form(spec);
  const auto extras = closed_form_operators(spec);
  const DistanceResult mc = mc_distance(code, basis, {3000, 1, 64}, extras);
  CHECK(mc.weight == 4);
  for (const auto& op : extras) CHECK(*mc.weight <= op.weight());
  CHECK(*mc.weight <= distance_upper_bound(spec));

  const StabilizerCode concat = xyz4_concat(3, 3, 3, 3);
  CHECK(mc_distance(concat, extract_logical_basis(concat), {2000, 3, 64}).weight == 9);
}

TEST_CASE("property: Monte Carlo distance is nonincreasing in restarts and thread independent") {
  const StabilizerCode code = chamon3(3, 3, 3);
  const LogicalBasis basis = extract_logical_basis(code);
  std::size_t last = SIZE_MAX;
  for (std::size_t restarts : {1, 4, 16, 64, 256}) {
    const DistanceResult r = mc_distance(code, basis, {restarts, 5, 64});
    REQUIRE(r.weight.has_value());
    CHECK(*r.weight <= last);
    last = *r.weight;
    const DistanceResult s = mc_distance_serial(code, basis, {restarts, 5, 64});
    CHECK(s.weight == r.weight);
    CHECK(s.witness == r.witness);
  }
}
