#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "xyz/gf2.hpp"
#include "xyz/noise.hpp"
#include "xyz/stabilizer.hpp"

namespace xyz {

/// Binary Tanner graph of [Hz | Hx] acting on (x-bits, z-bits): variable q is
/// the x-bit of qubit q, variable n + q its z-bit. Flipping a variable flips
/// exactly the checks that syndrome() would flip.
class TannerGraph {
 public:
  TannerGraph() = default;
  explicit TannerGraph(const StabilizerCode& code);

  std::size_t check_count() const noexcept { return check_start_.empty() ? 0 : check_start_.size() - 1; }
  std::size_t var_count() const noexcept { return var_start_.empty() ? 0 : var_start_.size() - 1; }
  std::size_t edge_count() const noexcept { return edge_var_.size(); }
  std::size_t rank() const noexcept { return rank_; }

  /// Edges of check c are [check_start(c), check_start(c + 1)).
  std::size_t check_start(std::size_t c) const noexcept { return check_start_[c]; }
  std::uint32_t edge_var(std::size_t e) const noexcept { return edge_var_[e]; }
  std::uint32_t edge_check(std::size_t e) const noexcept { return edge_check_[e]; }
  /// Edge ids of variable v are var_edges()[var_start(v) .. var_start(v + 1)).
  std::size_t var_start(std::size_t v) const noexcept { return var_start_[v]; }
  const std::vector<std::uint32_t>& var_edges() const noexcept { return var_edges_; }

  /// Checks violated by the binary vector (length var_count()).
  BitVector syndrome_of(const BitVector& bits) const;

 private:
  std::vector<std::size_t> check_start_;
  std::vector<std::uint32_t> edge_var_;
  std::vector<std::uint32_t> edge_check_;
  std::vector<std::size_t> var_start_;
  std::vector<std::uint32_t> var_edges_;
  std::size_t rank_ = 0;
};

struct DecoderConfig {
  std::size_t max_iterations = 32;
  /// Normalized min-sum scale factor.
  double ms_scale = 0.625;
  bool osd = true;
};

/// Throws std::invalid_argument for max_iterations < 1 or scale outside (0, 1].
void validate(const DecoderConfig& config);

inline constexpr double kPriorFloor = 1e-12;

/// Marginal probability that each symplectic bit is 1: x-part px + py,
/// z-part pz + py, clamped to [kPriorFloor, 1 - kPriorFloor].
std::vector<double> priors(const NoiseModel& model, std::size_t n);

struct BpResult {
  BitVector estimate;
  bool converged = false;
  std::size_t iterations = 0;
  /// Posterior log-likelihood ratios log(P(0)/P(1)); lower means more likely flipped.
  std::vector<double> llr;
};

/// Flooding normalized min-sum.
BpResult bp_decode(const TannerGraph& graph, const BitVector& syndrome, const std::vector<double>& priors,
                   const DecoderConfig& config);

/// Order-0 ordered statistics: columns sorted by ascending LLR (stable by
/// index), eliminated in that order; pivot variables take the reduced
/// syndrome, the rest are zero. The result always reproduces the syndrome.
/// Throws std::invalid_argument if the syndrome is not in the column space.
BitVector osd0(const TannerGraph& graph, const BitVector& syndrome, const std::vector<double>& llr);
BitVector osd0(const StabilizerCode& code, const BitVector& syndrome, const std::vector<double>& llr);

/// Reusable decoder: one per worker. Not thread-safe.
class Decoder {
 public:
  Decoder(const StabilizerCode& code, const NoiseModel& model, DecoderConfig config = {});

  /// BP; if it does not converge and OSD is enabled, OSD-0 on its LLRs.
  PauliError decode(const BitVector& syndrome);
  bool last_converged() const noexcept { return last_converged_; }
  const TannerGraph& graph() const noexcept { return graph_; }

 private:
  std::size_t n_;
  TannerGraph graph_;
  std::vector<double> priors_;
  DecoderConfig config_;
  bool last_converged_ = false;
};

PauliError decode(const StabilizerCode& code, const BitVector& syndrome, const NoiseModel& model,
                  const DecoderConfig& config = {});

}  // namespace xyz
