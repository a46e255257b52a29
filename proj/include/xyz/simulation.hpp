#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xyz/decoder.hpp"
#include "xyz/noise.hpp"
#include "xyz/stabilizer.hpp"

namespace xyz {

struct TrialRecord {
  std::string code_id;
  double p = 0.0;
  double eta = 0.0;
  std::uint64_t seed = 0;
  bool failure = false;
  std::size_t residual_weight = 0;
};

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval at 95% confidence.
Interval wilson_interval(std::size_t successes, std::size_t trials);

/// 1 - (1 - P_L)^(1/k).
double per_logical_rate(double block_rate, std::size_t k);

/// Classifies residual errors using a logical basis: a centralizer element is
/// a stabilizer iff it commutes with every logical operator.
class ResidualClassifier {
 public:
  ResidualClassifier(const StabilizerCode& code, const LogicalBasis& basis);
  /// Nonzero syndrome or a nontrivial logical class.
  bool failure(const PauliError& residual) const;
  bool is_logical(const PauliError& residual) const;

 private:
  const StabilizerCode* code_;
  std::vector<PauliError> logicals_;
};

struct TrialSummary {
  std::size_t trials = 0;
  std::size_t failures = 0;
  double block_rate = 0.0;
  Interval ci;
};

struct SimulationConfig {
  DecoderConfig decoder;
  /// Worker threads; 0 uses the OpenMP default.
  int jobs = 0;
  /// Replace the decoder by the identity correction (sanity checks only).
  bool identity_decoder = false;
};

/// Trial i samples its error from a generator seeded by (master_seed, i), so
/// the outcome is independent of the thread count.
TrialSummary run_trials(const StabilizerCode& code, const NoiseModel& model, std::size_t trials,
                        std::uint64_t master_seed, const SimulationConfig& config = {},
                        std::vector<TrialRecord>* records = nullptr);
TrialSummary run_trials_serial(const StabilizerCode& code, const NoiseModel& model, std::size_t trials,
                               std::uint64_t master_seed, const SimulationConfig& config = {},
                               std::vector<TrialRecord>* records = nullptr);

enum class NoiseKind { Biased, PureX, PureY, PureZ };

/// Noise family parameterized by p.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::Biased;
  double eta = 0.5;

  NoiseModel at(double p) const;
  /// Value written in the eta column.
  double eta_value() const;
  std::string label() const;
};

/// "depolarizing", "biased", "pure-x", "pure-y", "pure-z".
NoiseSpec parse_noise(const std::string& kind, double eta);

struct ScanPoint {
  std::vector<std::size_t> lengths;
  std::size_t n = 0;
  std::size_t k = 0;
  double p = 0.0;
  double eta = 0.0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double block_rate = 0.0;
  double per_logical = 0.0;
  Interval ci;  // on the per-logical rate
  std::uint64_t seed = 0;
  std::size_t max_iters = 0;
};

struct ScanResult {
  std::string family;
  std::vector<ScanPoint> points;
  /// Median crossing of adjacent-size curves; nullopt means no crossing in range.
  std::optional<double> threshold;
  std::vector<double> crossings;
};

using FamilyCtor = std::function<StabilizerCode(const std::vector<std::size_t>&)>;

/// Per size and grid point runs `trials` trials with seed derived from
/// (seed, size index, grid index). Requires >= 2 sizes and >= 3 grid points.
ScanResult threshold_scan(const std::string& family, const FamilyCtor& ctor,
                          const std::vector<std::vector<std::size_t>>& sizes, const std::vector<double>& p_grid,
                          const NoiseSpec& noise, std::size_t trials, std::uint64_t seed,
                          const SimulationConfig& config = {});
/// Uses make_family for the constructor.
ScanResult threshold_scan(const std::string& family, const std::vector<std::vector<std::size_t>>& sizes,
                          const std::vector<double>& p_grid, const NoiseSpec& noise, std::size_t trials,
                          std::uint64_t seed, const SimulationConfig& config = {});

/// Crossings of two curves sampled on the same grid, interpolating log(rate)
/// linearly in p. Zero rates are floored at 0.5 / trials.
std::vector<double> curve_crossings(const std::vector<ScanPoint>& small, const std::vector<ScanPoint>& large);
/// Fills result.crossings and result.threshold from result.points.
void estimate_threshold(ScanResult& result);

inline constexpr const char* kCsvHeader =
    "family,n1,n2,n3,n4,p,eta,trials,failures,block_rate,per_logical_rate,ci_low,ci_high,seed,max_iters";
void write_csv_header(std::ostream& out);
void write_csv_rows(std::ostream& out, const std::string& family, const std::vector<ScanPoint>& points);

enum class CycleMode { PauliSupport, Symplectic };

/// Number of 4-cycles: sum over check pairs of C(shared columns, 2), with
/// columns the qubits a check acts on (PauliSupport) or the 2n bits of [Hx|Hz].
std::uint64_t count_4cycles(const StabilizerCode& code, CycleMode mode);
std::uint64_t count_4cycles_serial(const StabilizerCode& code, CycleMode mode);
/// The same sum for an arbitrary binary matrix (rows are checks).
std::uint64_t count_4cycles(const BitMatrix& h);

}  // namespace xyz
