#include <doctest.h>

#include <cmath>
#include <limits>

#include "support.hpp"
#include "xyz/noise.hpp"

using namespace xyz;

TEST_CASE("from_bias examples") {
  const NoiseModel d = NoiseModel::from_bias(0.3, 0.5);
  CHECK(d.px == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(d.py == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(d.pz == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(NoiseModel::depolarizing(0.3) == d);

  const NoiseModel z = NoiseModel::from_bias(0.2, std::numeric_limits<double>::infinity());
  CHECK(z == NoiseModel{0.0, 0.0, 0.2});
  CHECK(std::isinf(z.eta()));

  const NoiseModel b = NoiseModel::from_bias(0.11, 10.0);
  CHECK(b.px == doctest::Approx(0.005).epsilon(1e-14));
  CHECK(b.py == doctest::Approx(0.005).epsilon(1e-14));
  CHECK(b.pz == doctest::Approx(0.1).epsilon(1e-14));

  CHECK_THROWS_AS(NoiseModel::from_bias(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(NoiseModel::from_bias(1.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(NoiseModel::from_bias(0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(NoiseModel::from_bias(0.1, -2.0), std::invalid_argument);
}

TEST_CASE("pure channels") {
  CHECK(NoiseModel::pure(Pauli::X, 0.1) == NoiseModel{0.1, 0.0, 0.0});
  CHECK(NoiseModel::pure(Pauli::Y, 0.14) == NoiseModel{0.0, 0.14, 0.0});
  CHECK(NoiseModel::pure(Pauli::Z, 0.0).p() == 0.0);
  CHECK_THROWS_AS(validate(NoiseModel{0.6, 0.6, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(NoiseModel{-0.1, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("eta parsing") {
  CHECK(std::isinf(parse_eta("inf")));
  CHECK(parse_eta("0.5") == 0.5);
  CHECK_THROWS_AS(parse_eta("0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_eta("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_eta("1x"), std::invalid_argument);
}

TEST_CASE("property: bias round-trips within one ulp") {
  testing::Rng rng(51);
  std::uniform_real_distribution<double> logeta(-4.0, 4.0), prob(0.0, 1.0);
  for (int t = 0; t < 10000; ++t) {
    const double eta = std::pow(10.0, logeta(rng));
    const double p = prob(rng);
    if (p == 0.0) continue;
    const NoiseModel m = NoiseModel::from_bias(p, eta);
    const double back = m.pz / (m.px + m.py);
    CHECK(std::abs(back - eta) <= std::nextafter(eta, INFINITY) - eta);
    CHECK(m.px == m.py);
    CHECK(m.p() == doctest::Approx(p).epsilon(1e-14));
  }
}

TEST_CASE("sampling degenerate channels") {
  testing::Rng rng(52);
  CHECK(sample(NoiseModel{}, 50, rng).is_identity());
  const PauliError all_x = sample(NoiseModel{1.0, 0.0, 0.0}, 50, rng);
  CHECK(all_x.x.popcount() == 50);
  CHECK(all_x.z.none());
}

TEST_CASE("sample frequencies are within three sigma over a million draws") {
  const NoiseModel m{0.05, 0.1, 0.2};
  std::mt19937_64 rng(53);
  std::size_t counts[4] = {0, 0, 0, 0};
  const std::size_t per = 1000, rounds = 1000, total = per * rounds;
  for (std::size_t r = 0; r < rounds; ++r) {
    const PauliError e = sample(m, per, rng);
    for (std::size_t q = 0; q < per; ++q) ++counts[static_cast<int>(e.at(q))];
  }
  const double expect[4] = {1.0 - m.p(), m.px, m.py, m.pz};
  for (int i = 0; i < 4; ++i) {
    const double sigma = std::sqrt(expect[i] * (1.0 - expect[i]) / static_cast<double>(total));
    CAPTURE(i);
    CHECK(std::abs(static_cast<double>(counts[i]) / static_cast<double>(total) - expect[i]) < 3.0 * sigma);
  }
}

TEST_CASE("sampling is reproducible for a fixed seed") {
  const NoiseModel m = NoiseModel::depolarizing(0.2);
  std::mt19937_64 a(99), b(99);
  for (int t = 0; t < 20; ++t) CHECK(sample(m, 300, a) == sample(m, 300, b));
}
