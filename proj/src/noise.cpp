#include "xyz/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace xyz {

double NoiseModel::eta() const noexcept {
  const double denom = px + py;
  return denom == 0.0 ? std::numeric_limits<double>::infinity() : pz / denom;
}

NoiseModel NoiseModel::from_bias(double p, double eta) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("error probability must lie in [0, 1]");
  if (!(eta > 0.0)) throw std::invalid_argument("bias eta must be positive");
  if (std::isinf(eta)) return {0.0, 0.0, p};
  const double side = p / (2.0 * (1.0 + eta));
  // Written so that pz / (px + py) reproduces eta to rounding.
  return {side, side, 2.0 * side * eta};
}

NoiseModel NoiseModel::pure(Pauli pauli, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("error probability must lie in [0, 1]");
  switch (pauli) {
    case Pauli::X: return {p, 0.0, 0.0};
    case Pauli::Y: return {0.0, p, 0.0};
    case Pauli::Z: return {0.0, 0.0, p};
    case Pauli::I: break;
  }
  return {};
}

void validate(const NoiseModel& m) {
  if (!(m.px >= 0.0 && m.py >= 0.0 && m.pz >= 0.0))
    throw std::invalid_argument("noise probabilities must be nonnegative");
  if (m.p() > 1.0 + 1e-12) throw std::invalid_argument("noise probabilities sum to more than 1");
}

PauliError sample(const NoiseModel& model, std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double cx = model.px, cy = cx + model.py, cz = cy + model.pz;
  PauliError e(n);
  for (std::size_t q = 0; q < n; ++q) {
    const double r = u(rng);
    if (r < cx) {
      e.x.set(q);
    } else if (r < cy) {
      e.x.set(q);
      e.z.set(q);
    } else if (r < cz) {
      e.z.set(q);
    }
  }
  return e;
}

double parse_eta(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad eta '" + text + "'");
  }
  if (used != text.size() || !(v > 0.0)) throw std::invalid_argument("bad eta '" + text + "'");
  return v;
}

}  // namespace xyz
