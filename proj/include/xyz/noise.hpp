#pragma once

#include <cstddef>
#include <random>
#include <string>

#include "xyz/stabilizer.hpp"

namespace xyz {

/// Independent single-qubit Pauli channel.
struct NoiseModel {
  double px = 0.0;
  double py = 0.0;
  double pz = 0.0;

  double p() const noexcept { return px + py + pz; }
  /// pz / (px + py); infinity when px + py = 0.
  double eta() const noexcept;
  bool operator==(const NoiseModel&) const = default;

  /// pz = p eta / (1 + eta), px = py = p / (2 (1 + eta)). eta may be
  /// +infinity (pure Z). Throws std::invalid_argument for p outside [0, 1] or
  /// eta <= 0.
  static NoiseModel from_bias(double p, double eta);
  /// All probability on one Pauli.
  static NoiseModel pure(Pauli pauli, double p);
  static NoiseModel depolarizing(double p) { return from_bias(p, 0.5); }
};

/// Throws std::invalid_argument unless all probabilities are >= 0 and sum to <= 1.
void validate(const NoiseModel& model);

/// i.i.d. error on n qubits. Uses one uniform draw per qubit.
PauliError sample(const NoiseModel& model, std::size_t n, std::mt19937_64& rng);

/// Parses "inf"/"infinity" or a positive number.
double parse_eta(const std::string& text);

}  // namespace xyz
