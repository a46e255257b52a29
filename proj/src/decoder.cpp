#include "xyz/decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace xyz {

TannerGraph::TannerGraph(const StabilizerCode& code) {
  const std::size_t n = code.n(), m = code.num_checks();
  check_start_.assign(1, 0);
  for (std::size_t c = 0; c < m; ++c) {
    // x-bit q meets Hz, z-bit q meets Hx.
    for (std::size_t q : code.hz.row_support(c)) {
      edge_var_.push_back(static_cast<std::uint32_t>(q));
      edge_check_.push_back(static_cast<std::uint32_t>(c));
    }
    for (std::size_t q : code.hx.row_support(c)) {
      edge_var_.push_back(static_cast<std::uint32_t>(n + q));
      edge_check_.push_back(static_cast<std::uint32_t>(c));
    }
    check_start_.push_back(edge_var_.size());
  }
  std::vector<std::size_t> degree(2 * n, 0);
  for (auto v : edge_var_) ++degree[v];
  var_start_.assign(2 * n + 1, 0);
  for (std::size_t v = 0; v < 2 * n; ++v) var_start_[v + 1] = var_start_[v] + degree[v];
  var_edges_.resize(edge_var_.size());
  std::vector<std::size_t> fill(var_start_.begin(), var_start_.end() - 1);
  for (std::size_t e = 0; e < edge_var_.size(); ++e) var_edges_[fill[edge_var_[e]]++] = static_cast<std::uint32_t>(e);
  rank_ = xyz::rank(hstack({code.hz, code.hx}));
}

BitVector TannerGraph::syndrome_of(const BitVector& bits) const {
  BitVector s(check_count());
  for (std::size_t c = 0; c < check_count(); ++c) {
    bool parity = false;
    for (std::size_t e = check_start_[c]; e < check_start_[c + 1]; ++e) parity ^= bits.get(edge_var_[e]);
    if (parity) s.set(c);
  }
  return s;
}

void validate(const DecoderConfig& config) {
  if (config.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (!(config.ms_scale > 0.0 && config.ms_scale <= 1.0)) throw std::invalid_argument("ms_scale must lie in (0, 1]");
}

std::vector<double> priors(const NoiseModel& model, std::size_t n) {
  validate(model);
  auto clamp = [](double p) { return std::clamp(p, kPriorFloor, 1.0 - kPriorFloor); };
  std::vector<double> pr(2 * n);
  std::fill(pr.begin(), pr.begin() + static_cast<std::ptrdiff_t>(n), clamp(model.px + model.py));
  std::fill(pr.begin() + static_cast<std::ptrdiff_t>(n), pr.end(), clamp(model.pz + model.py));
  return pr;
}

namespace {

struct BpWorkspace {
  std::vector<double> prior_llr;
  std::vector<double> q;  // variable -> check
  std::vector<double> r;  // check -> variable
};

void bp_run(const TannerGraph& g, const BitVector& syndrome, const std::vector<double>& pr,
            const DecoderConfig& cfg, BpWorkspace& ws, BpResult& out) {
  validate(cfg);
  const std::size_t nv = g.var_count(), nc = g.check_count(), ne = g.edge_count();
  if (syndrome.size() != nc) throw std::invalid_argument("syndrome length does not match the check count");
  if (pr.size() != nv) throw std::invalid_argument("prior length does not match the variable count");

  ws.prior_llr.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) ws.prior_llr[v] = std::log((1.0 - pr[v]) / pr[v]);
  out.llr = ws.prior_llr;
  out.estimate = BitVector(nv);
  out.iterations = 0;
  if (syndrome.none()) {
    out.converged = true;
    return;
  }
  ws.q.resize(ne);
  ws.r.resize(ne);
  for (std::size_t e = 0; e < ne; ++e) ws.q[e] = ws.prior_llr[g.edge_var(e)];
  const auto& var_edges = g.var_edges();

  out.converged = false;
  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    out.iterations = it;
    for (std::size_t c = 0; c < nc; ++c) {
      const std::size_t b = g.check_start(c), end = g.check_start(c + 1);
      double min1 = std::numeric_limits<double>::infinity(), min2 = min1;
      std::size_t arg = b;
      bool neg = syndrome.get(c);
      for (std::size_t e = b; e < end; ++e) {
        const double a = std::fabs(ws.q[e]);
        neg ^= ws.q[e] < 0.0;
        if (a < min1) {
          min2 = min1;
          min1 = a;
          arg = e;
        } else if (a < min2) {
          min2 = a;
        }
      }
      for (std::size_t e = b; e < end; ++e) {
        const double mag = cfg.ms_scale * (e == arg ? min2 : min1);
        const bool sign = neg ^ (ws.q[e] < 0.0);
        ws.r[e] = sign ? -mag : mag;
      }
    }
    for (std::size_t v = 0; v < nv; ++v) {
      double total = ws.prior_llr[v];
      const std::size_t b = g.var_start(v), end = g.var_start(v + 1);
      for (std::size_t i = b; i < end; ++i) total += ws.r[var_edges[i]];
      out.llr[v] = total;
      for (std::size_t i = b; i < end; ++i) ws.q[var_edges[i]] = total - ws.r[var_edges[i]];
      out.estimate.set(v, total < 0.0);
    }
    if (g.syndrome_of(out.estimate) == syndrome) {
      out.converged = true;
      return;
    }
  }
}

}  // namespace

BpResult bp_decode(const TannerGraph& graph, const BitVector& syndrome, const std::vector<double>& pr,
                   const DecoderConfig& config) {
  BpWorkspace ws;
  BpResult out;
  bp_run(graph, syndrome, pr, config, ws, out);
  return out;
}

BitVector osd0(const TannerGraph& g, const BitVector& syndrome, const std::vector<double>& llr) {
  const std::size_t nv = g.var_count(), nc = g.check_count();
  if (syndrome.size() != nc) throw std::invalid_argument("syndrome length does not match the check count");
  if (llr.size() != nv) throw std::invalid_argument("reliability length does not match the variable count");

  std::vector<std::uint32_t> order(nv);
  std::iota(order.begin(), order.end(), 0U);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return llr[a] < llr[b]; });
  std::vector<std::uint32_t> column_of(nv);
  for (std::size_t j = 0; j < nv; ++j) column_of[order[j]] = static_cast<std::uint32_t>(j);

  // Column-permuted check matrix with the syndrome as an extra last column.
  BitMatrix h(nc, nv + 1);
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t e = g.check_start(c); e < g.check_start(c + 1); ++e) h.flip(c, column_of[g.edge_var(e)]);
    if (syndrome.get(c)) h.set(c, nv);
  }

  const std::size_t words = h.words_per_row();
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t j = 0; j < nv && rank < nc; ++j) {
    const std::size_t w = j / 64;
    const BitMatrix::Word bit = BitMatrix::Word{1} << (j % 64);
    std::size_t p = rank;
    while (p < nc && !(h.row_words(p)[w] & bit)) ++p;
    if (p == nc) continue;
    h.swap_rows(p, rank);
    auto prow = h.row_words(rank);
    for (std::size_t r = rank + 1; r < nc; ++r) {
      auto row = h.row_words(r);
      if (!(row[w] & bit)) continue;
      for (std::size_t k = w; k < words; ++k) row[k] ^= prow[k];
    }
    pivot_col.push_back(j);
    ++rank;
    if (rank == g.rank()) break;
  }
  for (std::size_t r = rank; r < nc; ++r)
    if (h.get(r, nv)) throw std::invalid_argument("syndrome is not in the image of the check matrix");

  // Back substitution over pivot columns only.
  BitVector x(nv + 1);
  for (std::size_t i = rank; i-- > 0;) {
    auto row = h.row_words(i);
    auto xs = x.words();
    bool bitv = h.get(i, nv);
    const std::size_t from = pivot_col[i] / 64;
    for (std::size_t k = from; k < words; ++k) bitv ^= (std::popcount(row[k] & xs[k]) & 1) != 0;
    if (bitv) x.set(pivot_col[i]);
  }
  BitVector out(nv);
  for (std::size_t i = 0; i < rank; ++i)
    if (x.get(pivot_col[i])) out.set(order[pivot_col[i]]);
  return out;
}

BitVector osd0(const StabilizerCode& code, const BitVector& syndrome, const std::vector<double>& llr) {
  return osd0(TannerGraph(code), syndrome, llr);
}

namespace {

PauliError unpack(const BitVector& bits, std::size_t n) { return {bits.slice(0, n), bits.slice(n, n)}; }

}  // namespace

Decoder::Decoder(const StabilizerCode& code, const NoiseModel& model, DecoderConfig config)
    : n_(code.n()), graph_(code), priors_(priors(model, code.n())), config_(config) {
  validate(config_);
}

PauliError Decoder::decode(const BitVector& syndrome) {
  thread_local BpWorkspace ws;
  BpResult bp;
  bp_run(graph_, syndrome, priors_, config_, ws, bp);
  last_converged_ = bp.converged;
  if (bp.converged || !config_.osd) return unpack(bp.estimate, n_);
  return unpack(osd0(graph_, syndrome, bp.llr), n_);
}

PauliError decode(const StabilizerCode& code, const BitVector& syndrome, const NoiseModel& model,
                  const DecoderConfig& config) {
  return Decoder(code, model, config).decode(syndrome);
}

}  // namespace xyz
