#include "xyz/distance.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <limits>
#include <random>

#include "xyz/rng.hpp"

namespace xyz {

namespace {

// Single-qubit Pauli as two bits: x | z << 1. Products are XOR.
using P2 = std::uint8_t;

constexpr bool anti(P2 a, P2 b) { return (((a & 1) & (b >> 1)) ^ ((a >> 1) & (b & 1))) != 0; }

struct Incidence {
  std::vector<std::vector<std::pair<std::uint32_t, P2>>> checks;  // per check: (qubit, Pauli)
  std::vector<std::vector<std::pair<std::uint32_t, P2>>> qubits;  // per qubit: (check, Pauli)
  std::size_t max_qubit_degree = 0;

  explicit Incidence(const StabilizerCode& code) : checks(code.num_checks()), qubits(code.n()) {
    for (std::size_t r = 0; r < code.num_checks(); ++r) {
      const BitVector x = code.hx.row(r), z = code.hz.row(r);
      for (std::size_t q : (x | z).support()) {
        const P2 p = static_cast<P2>(x.get(q) | (z.get(q) << 1));
        checks[r].emplace_back(static_cast<std::uint32_t>(q), p);
        qubits[q].emplace_back(static_cast<std::uint32_t>(r), p);
      }
    }
    for (const auto& col : qubits) max_qubit_degree = std::max(max_qubit_degree, col.size());
  }
};

PauliError to_pauli(const std::vector<P2>& v) {
  PauliError e(v.size());
  for (std::size_t q = 0; q < v.size(); ++q) {
    if (v[q] & 1) e.x.set(q);
    if (v[q] & 2) e.z.set(q);
  }
  return e;
}

std::vector<P2> from_pauli(const PauliError& e) {
  std::vector<P2> v(e.n());
  for (std::size_t q : e.x.support()) v[q] |= 1;
  for (std::size_t q : e.z.support()) v[q] |= 2;
  return v;
}

class ExactSearch {
 public:
  ExactSearch(const Incidence& inc, const StabilizerGroup& group)
      : inc_(inc), group_(group), err_(inc.qubits.size(), 0), where_(inc.checks.size(), -1) {}

  // Logical of weight exactly `limit` whose smallest qubit is `anchor`.
  std::optional<PauliError> run(std::size_t anchor, std::size_t limit) {
    anchor_ = anchor;
    limit_ = limit;
    for (P2 p = 1; p <= 3; ++p) {
      place(anchor, p);
      const bool hit = dfs();
      if (hit) {
        PauliError found = to_pauli(err_);
        unplace(anchor, p);
        reset();
        return found;
      }
      unplace(anchor, p);
    }
    return std::nullopt;
  }

 private:
  void toggle(std::uint32_t c) {
    if (where_[c] < 0) {
      where_[c] = static_cast<std::int32_t>(violated_.size());
      violated_.push_back(c);
    } else {
      const std::uint32_t last = violated_.back();
      violated_[static_cast<std::size_t>(where_[c])] = last;
      where_[last] = where_[c];
      violated_.pop_back();
      where_[c] = -1;
    }
  }

  void place(std::size_t q, P2 p) {
    err_[q] = p;
    ++weight_;
    for (auto [c, cp] : inc_.qubits[q])
      if (anti(p, cp)) toggle(c);
  }

  void unplace(std::size_t q, P2 p) {
    for (auto [c, cp] : inc_.qubits[q])
      if (anti(p, cp)) toggle(c);
    err_[q] = 0;
    --weight_;
  }

  // Restores the all-identity state after an early return out of dfs().
  void reset() {
    std::fill(err_.begin(), err_.end(), 0);
    for (std::uint32_t c : violated_) where_[c] = -1;
    violated_.clear();
    weight_ = 0;
  }

  std::size_t options(std::uint32_t c) const {
    std::size_t count = 0;
    for (auto [q, cp] : inc_.checks[c])
      if (q > anchor_ && err_[q] == 0) ++count;
    return count;
  }

  bool dfs() {
    if (violated_.empty()) return !group_.contains(to_pauli(err_));
    if (weight_ >= limit_) return false;
    if (violated_.size() > (limit_ - weight_) * inc_.max_qubit_degree) return false;

    std::uint32_t best = violated_.front();
    std::size_t best_opts = std::numeric_limits<std::size_t>::max();
    for (std::uint32_t c : violated_) {
      const std::size_t o = options(c);
      if (o < best_opts || (o == best_opts && c < best)) {
        best_opts = o;
        best = c;
      }
    }
    if (best_opts == 0) return false;

    for (auto [q, cp] : inc_.checks[best]) {
      if (q <= anchor_ || err_[q] != 0) continue;
      for (P2 p = 1; p <= 3; ++p) {
        if (!anti(p, cp)) continue;
        place(q, p);
        if (dfs()) return true;
        unplace(q, p);
      }
    }
    return false;
  }

  const Incidence& inc_;
  const StabilizerGroup& group_;
  std::vector<P2> err_;
  std::vector<std::int32_t> where_;
  std::vector<std::uint32_t> violated_;
  std::size_t weight_ = 0;
  std::size_t anchor_ = 0;
  std::size_t limit_ = 0;
};

DistanceResult exact_distance_impl(const StabilizerCode& code, std::size_t w_max, bool parallel) {
  const Incidence inc(code);
  const StabilizerGroup group(code);
  const std::size_t n = code.n();
  for (std::size_t w = 1; w <= std::min(w_max, n); ++w) {
    std::atomic<std::size_t> first{n};
    std::vector<std::optional<PauliError>> hits(n);
#pragma omp parallel if (parallel)
    {
      ExactSearch search(inc, group);
#pragma omp for schedule(dynamic, 1)
      for (std::size_t anchor = 0; anchor < n; ++anchor) {
        if (anchor > first.load(std::memory_order_relaxed)) continue;
        hits[anchor] = search.run(anchor, w);
        if (hits[anchor]) {
          std::size_t cur = first.load();
          while (anchor < cur && !first.compare_exchange_weak(cur, anchor)) {
          }
        }
      }
    }
    if (first.load() < n) return {w, std::move(hits[first.load()])};
  }
  return {};
}

class McWorker {
 public:
  McWorker(const Incidence& inc, const std::vector<std::vector<P2>>& pool, const McDistanceConfig& cfg)
      : inc_(inc), pool_(pool), cfg_(cfg), stamp_(inc.checks.size(), 0) {}

  // Weight reached by restart r; the operator is left in v().
  std::size_t run(std::size_t r) {
    std::mt19937_64 rng = stream_rng(cfg_.seed, r);
    const std::size_t p = pool_.size();
    std::uniform_int_distribution<std::size_t> pick(0, p - 1);

    v_ = pool_[pick(rng)];
    if (p > 1 && (rng() & 1)) {
      // Add a few more distinct pool elements.
      std::vector<std::size_t> idx(p);
      for (std::size_t i = 0; i < p; ++i) idx[i] = i;
      std::shuffle(idx.begin(), idx.end(), rng);
      std::size_t extra = 1;
      while (extra < p - 1 && (rng() & 1)) ++extra;
      v_ = pool_[idx[0]];
      for (std::size_t i = 1; i <= extra; ++i)
        for (std::size_t q = 0; q < v_.size(); ++q) v_[q] ^= pool_[idx[i]][q];
    }
    weight_ = 0;
    for (P2 x : v_) weight_ += x != 0;

    const std::size_t m = inc_.checks.size();
    if (m > 0) {
      std::uniform_int_distribution<std::size_t> row(0, m - 1);
      const std::size_t noise = rng() % 9;
      for (std::size_t i = 0; i < noise; ++i) apply(row(rng));
    }

    std::size_t best = weight_;
    std::size_t stale = 0;
    std::bernoulli_distribution neutral(0.25);
    for (std::size_t sweep = 0; sweep < cfg_.max_sweeps && stale < 3; ++sweep) {
      gather();
      std::shuffle(cand_.begin(), cand_.end(), rng);
      for (std::uint32_t c : cand_) {
        const long d = delta(c);
        if (d < 0 || (d == 0 && neutral(rng))) apply(c);
      }
      if (weight_ < best) {
        best = weight_;
        stale = 0;
      } else {
        ++stale;
      }
    }
    return weight_;
  }

  const std::vector<P2>& v() const { return v_; }

 private:
  long delta(std::uint32_t c) const {
    long d = 0;
    for (auto [q, cp] : inc_.checks[c]) d += static_cast<long>((v_[q] ^ cp) != 0) - static_cast<long>(v_[q] != 0);
    return d;
  }

  void apply(std::size_t c) {
    for (auto [q, cp] : inc_.checks[c]) {
      weight_ -= v_[q] != 0;
      v_[q] ^= cp;
      weight_ += v_[q] != 0;
    }
  }

  // Checks touching the support; only these can lower the weight.
  void gather() {
    ++epoch_;
    cand_.clear();
    for (std::size_t q = 0; q < v_.size(); ++q) {
      if (v_[q] == 0) continue;
      for (auto [c, cp] : inc_.qubits[q]) {
        if (stamp_[c] == epoch_) continue;
        stamp_[c] = epoch_;
        cand_.push_back(c);
      }
    }
  }

  const Incidence& inc_;
  const std::vector<std::vector<P2>>& pool_;
  const McDistanceConfig& cfg_;
  std::vector<P2> v_;
  std::size_t weight_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> cand_;
};

// Logicals independent modulo the stabilizers, extras first so that light
// witnesses survive.
std::vector<std::vector<P2>> logical_pool(const StabilizerCode& code, const LogicalBasis& basis,
                                          const std::vector<PauliError>& extra) {
  RowSpace space(code.symplectic_matrix());
  std::vector<std::vector<P2>> pool;
  auto offer = [&](const PauliError& e) {
    if (e.n() != code.n() || syndrome(code, e).any()) return;
    if (space.insert(e.symplectic())) pool.push_back(from_pauli(e));
  };
  for (const auto& e : extra) offer(e);
  for (const auto& e : basis.operators()) offer(e);
  return pool;
}

DistanceResult mc_distance_impl(const StabilizerCode& code, const LogicalBasis& basis, const McDistanceConfig& cfg,
                                const std::vector<PauliError>& extra, bool parallel) {
  const auto pool = logical_pool(code, basis, extra);
  if (pool.empty()) return {};
  const Incidence inc(code);

  // Seeds themselves count as restarts of weight = their own weight.
  std::size_t best_w = std::numeric_limits<std::size_t>::max();
  std::size_t best_idx = 0;
  std::vector<P2> best_v;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto w = static_cast<std::size_t>(std::count_if(pool[i].begin(), pool[i].end(), [](P2 x) { return x; }));
    if (w < best_w) {
      best_w = w;
      best_v = pool[i];
    }
  }

  const auto restarts = static_cast<std::int64_t>(cfg.restarts);
#pragma omp parallel if (parallel)
  {
    McWorker worker(inc, pool, cfg);
    std::size_t local_w = std::numeric_limits<std::size_t>::max();
    std::size_t local_idx = 0;
    std::vector<P2> local_v;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t r = 0; r < restarts; ++r) {
      const std::size_t w = worker.run(static_cast<std::size_t>(r));
      if (w < local_w) {
        local_w = w;
        local_idx = static_cast<std::size_t>(r) + 1;
        local_v = worker.v();
      }
    }
#pragma omp critical
    {
      // Ties resolve to the earliest restart, independent of scheduling.
      if (local_w < best_w || (local_w == best_w && local_idx < best_idx)) {
        best_w = local_w;
        best_idx = local_idx;
        best_v = std::move(local_v);
      }
    }
  }
  return {best_w, to_pauli(best_v)};
}

}  // namespace

DistanceResult exact_distance(const StabilizerCode& code, std::size_t w_max) {
  return exact_distance_impl(code, w_max, true);
}

DistanceResult exact_distance_serial(const StabilizerCode& code, std::size_t w_max) {
  return exact_distance_impl(code, w_max, false);
}

DistanceResult mc_distance(const StabilizerCode& code, const LogicalBasis& basis, const McDistanceConfig& config,
                           const std::vector<PauliError>& extra) {
  return mc_distance_impl(code, basis, config, extra, true);
}

DistanceResult mc_distance_serial(const StabilizerCode& code, const LogicalBasis& basis,
                                  const McDistanceConfig& config, const std::vector<PauliError>& extra) {
  return mc_distance_impl(code, basis, config, extra, false);
}

}  // namespace xyz
