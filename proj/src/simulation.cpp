#include "xyz/simulation.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "xyz/products.hpp"
#include "xyz/rng.hpp"

namespace xyz {

Interval wilson_interval(std::size_t successes, std::size_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (phat + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n)) / denom;
  return {successes == 0 ? 0.0 : std::max(0.0, centre - half), successes == trials ? 1.0 : std::min(1.0, centre + half)};
}

double per_logical_rate(double block_rate, std::size_t k) {
  if (k == 0) throw std::invalid_argument("per-logical rate needs k >= 1");
  if (!(block_rate >= 0.0 && block_rate <= 1.0)) throw std::invalid_argument("block rate must lie in [0, 1]");
  if (k == 1) return block_rate;
  // 1 - (1 - P)^(1/k) without cancellation for small P.
  return -std::expm1(std::log1p(-block_rate) / static_cast<double>(k));
}

ResidualClassifier::ResidualClassifier(const StabilizerCode& code, const LogicalBasis& basis)
    : code_(&code), logicals_(basis.operators()) {}

bool ResidualClassifier::is_logical(const PauliError& residual) const {
  if (syndrome(*code_, residual).any()) return false;
  return std::any_of(logicals_.begin(), logicals_.end(),
                     [&](const PauliError& l) { return anticommute(residual, l); });
}

bool ResidualClassifier::failure(const PauliError& residual) const {
  if (syndrome(*code_, residual).any()) return true;
  return std::any_of(logicals_.begin(), logicals_.end(),
                     [&](const PauliError& l) { return anticommute(residual, l); });
}

namespace {

TrialSummary run_trials_impl(const StabilizerCode& code, const NoiseModel& model, std::size_t trials,
                             std::uint64_t master_seed, const SimulationConfig& config,
                             std::vector<TrialRecord>* records, bool parallel) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  validate(model);
  validate(config.decoder);
  const LogicalBasis basis = extract_logical_basis(code);
  const ResidualClassifier classifier(code, basis);
  const std::string id = code.family_tag;
  std::vector<unsigned char> failed(trials, 0);
  std::vector<std::size_t> weights(records ? trials : 0);
  const int threads = config.jobs > 0 ? config.jobs : omp_get_max_threads();
  const auto count = static_cast<std::int64_t>(trials);

#pragma omp parallel num_threads(threads) if (parallel)
  {
    Decoder decoder(code, model, config.decoder);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t t = 0; t < count; ++t) {
      const auto i = static_cast<std::size_t>(t);
      std::mt19937_64 rng = stream_rng(master_seed, i);
      const PauliError error = sample(model, code.n(), rng);
      PauliError residual = error;
      if (!config.identity_decoder) residual *= decoder.decode(syndrome(code, error));
      failed[i] = classifier.failure(residual) ? 1 : 0;
      if (records) weights[i] = residual.weight();
    }
  }

  TrialSummary s;
  s.trials = trials;
  s.failures = static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));
  s.block_rate = static_cast<double>(s.failures) / static_cast<double>(trials);
  s.ci = wilson_interval(s.failures, trials);
  if (records) {
    records->clear();
    records->reserve(trials);
    for (std::size_t i = 0; i < trials; ++i)
      records->push_back({id, model.p(), model.eta(), derive_seed(master_seed, i), failed[i] != 0, weights[i]});
  }
  return s;
}

}  // namespace

TrialSummary run_trials(const StabilizerCode& code, const NoiseModel& model, std::size_t trials,
                        std::uint64_t master_seed, const SimulationConfig& config, std::vector<TrialRecord>* records) {
  return run_trials_impl(code, model, trials, master_seed, config, records, true);
}

TrialSummary run_trials_serial(const StabilizerCode& code, const NoiseModel& model, std::size_t trials,
                               std::uint64_t master_seed, const SimulationConfig& config,
                               std::vector<TrialRecord>* records) {
  return run_trials_impl(code, model, trials, master_seed, config, records, false);
}

NoiseModel NoiseSpec::at(double p) const {
  switch (kind) {
    case NoiseKind::PureX: return NoiseModel::pure(Pauli::X, p);
    case NoiseKind::PureY: return NoiseModel::pure(Pauli::Y, p);
    case NoiseKind::PureZ: return NoiseModel::pure(Pauli::Z, p);
    case NoiseKind::Biased: break;
  }
  return NoiseModel::from_bias(p, eta);
}

double NoiseSpec::eta_value() const {
  switch (kind) {
    case NoiseKind::PureX:
    case NoiseKind::PureY: return 0.0;
    case NoiseKind::PureZ: return std::numeric_limits<double>::infinity();
    case NoiseKind::Biased: break;
  }
  return eta;
}

std::string NoiseSpec::label() const {
  switch (kind) {
    case NoiseKind::PureX: return "pure-x";
    case NoiseKind::PureY: return "pure-y";
    case NoiseKind::PureZ: return "pure-z";
    case NoiseKind::Biased: break;
  }
  if (eta == 0.5) return "depolarizing";
  std::ostringstream os;
  os << "biased(eta=" << eta << ")";
  return os.str();
}

NoiseSpec parse_noise(const std::string& kind, double eta) {
  if (kind == "depolarizing") return {NoiseKind::Biased, 0.5};
  if (kind == "biased") {
    if (!(eta > 0.0)) throw std::invalid_argument("bias eta must be positive");
    return {NoiseKind::Biased, eta};
  }
  if (kind == "pure-x") return {NoiseKind::PureX, 0.0};
  if (kind == "pure-y") return {NoiseKind::PureY, 0.0};
  if (kind == "pure-z") return {NoiseKind::PureZ, 0.0};
  throw std::invalid_argument("unknown noise '" + kind + "'");
}

std::vector<double> curve_crossings(const std::vector<ScanPoint>& small, const std::vector<ScanPoint>& large) {
  if (small.size() != large.size()) throw std::invalid_argument("curves sampled on different grids");
  auto lograte = [](const ScanPoint& pt) {
    const double floor = 0.5 / static_cast<double>(std::max<std::size_t>(pt.trials, 1));
    return std::log(std::max(pt.per_logical, floor));
  };
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < small.size(); ++i) {
    const double g0 = lograte(large[i]) - lograte(small[i]);
    const double g1 = lograte(large[i + 1]) - lograte(small[i + 1]);
    const double p0 = small[i].p, p1 = small[i + 1].p;
    if (g0 == 0.0 && i == 0) out.push_back(p0);
    if (g1 == 0.0) {
      out.push_back(p1);
    } else if ((g0 < 0.0) != (g1 < 0.0) && g0 != 0.0) {
      out.push_back(p0 + (p1 - p0) * g0 / (g0 - g1));
    }
  }
  return out;
}

void estimate_threshold(ScanResult& result) {
  // Group points by size, keeping first-seen order.
  std::vector<std::vector<ScanPoint>> curves;
  std::vector<std::vector<std::size_t>> keys;
  for (const auto& pt : result.points) {
    auto it = std::find(keys.begin(), keys.end(), pt.lengths);
    if (it == keys.end()) {
      keys.push_back(pt.lengths);
      curves.emplace_back();
      it = keys.end() - 1;
    }
    curves[static_cast<std::size_t>(it - keys.begin())].push_back(pt);
  }
  result.crossings.clear();
  for (std::size_t s = 0; s + 1 < curves.size(); ++s) {
    const auto c = curve_crossings(curves[s], curves[s + 1]);
    result.crossings.insert(result.crossings.end(), c.begin(), c.end());
  }
  result.threshold.reset();
  if (result.crossings.empty()) return;
  std::vector<double> sorted = result.crossings;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  result.threshold = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
}

ScanResult threshold_scan(const std::string& family, const FamilyCtor& ctor,
                          const std::vector<std::vector<std::size_t>>& sizes, const std::vector<double>& p_grid,
                          const NoiseSpec& noise, std::size_t trials, std::uint64_t seed,
                          const SimulationConfig& config) {
  if (sizes.size() < 2) throw std::invalid_argument("threshold scan needs at least 2 sizes");
  if (p_grid.size() < 3) throw std::invalid_argument("threshold scan needs at least 3 grid points");
  if (!std::is_sorted(p_grid.begin(), p_grid.end())) throw std::invalid_argument("p grid must be increasing");
  ScanResult result;
  result.family = family;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const StabilizerCode code = ctor(sizes[si]);
    const std::size_t k = code_dimension(code);
    if (k == 0) throw std::invalid_argument("code has no logical qubits");
    for (std::size_t pi = 0; pi < p_grid.size(); ++pi) {
      const std::uint64_t point_seed = derive_seed(derive_seed(seed, si), pi);
      const NoiseModel model = noise.at(p_grid[pi]);
      const TrialSummary s = run_trials(code, model, trials, point_seed, config);
      ScanPoint pt;
      pt.lengths = sizes[si];
      pt.n = code.n();
      pt.k = k;
      pt.p = p_grid[pi];
      pt.eta = noise.eta_value();
      pt.trials = s.trials;
      pt.failures = s.failures;
      pt.block_rate = s.block_rate;
      pt.per_logical = per_logical_rate(s.block_rate, k);
      pt.ci = {per_logical_rate(s.ci.low, k), per_logical_rate(s.ci.high, k)};
      pt.seed = point_seed;
      pt.max_iters = config.decoder.max_iterations;
      result.points.push_back(pt);
    }
  }
  estimate_threshold(result);
  return result;
}

ScanResult threshold_scan(const std::string& family, const std::vector<std::vector<std::size_t>>& sizes,
                          const std::vector<double>& p_grid, const NoiseSpec& noise, std::size_t trials,
                          std::uint64_t seed, const SimulationConfig& config) {
  return threshold_scan(
      family, [&](const std::vector<std::size_t>& len) { return make_family(family, len); }, sizes, p_grid, noise,
      trials, seed, config);
}

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_rows(std::ostream& out, const std::string& family, const std::vector<ScanPoint>& points) {
  auto num = [](double v) {
    if (std::isinf(v)) return std::string("inf");
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  for (const auto& pt : points) {
    out << family;
    for (std::size_t i = 0; i < 4; ++i) {
      out << ',';
      if (i < pt.lengths.size()) out << pt.lengths[i];
    }
    out << ',' << num(pt.p) << ',' << num(pt.eta) << ',' << pt.trials << ',' << pt.failures << ','
        << num(pt.block_rate) << ',' << num(pt.per_logical) << ',' << num(pt.ci.low) << ',' << num(pt.ci.high) << ','
        << pt.seed << ',' << pt.max_iters << '\n';
  }
}

namespace {

BitMatrix cycle_matrix(const StabilizerCode& code, CycleMode mode) {
  if (mode == CycleMode::Symplectic) return hstack({code.hx, code.hz});
  BitMatrix a = code.hx;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto dst = a.row_words(r);
    auto src = code.hz.row_words(r);
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
  }
  return a;
}

std::uint64_t count_impl(const BitMatrix& h, bool parallel) {
  const std::size_t m = h.rows();
  std::vector<std::vector<std::uint32_t>> rows(m), cols(h.cols());
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c : h.row_support(r)) {
      rows[r].push_back(static_cast<std::uint32_t>(c));
      cols[c].push_back(static_cast<std::uint32_t>(r));
    }
  }
  std::uint64_t total = 0;
  const auto mm = static_cast<std::int64_t>(m);
#pragma omp parallel if (parallel) reduction(+ : total)
  {
    std::vector<std::uint32_t> shared(m, 0);
    std::vector<std::uint32_t> touched;
#pragma omp for schedule(dynamic, 32)
    for (std::int64_t ii = 0; ii < mm; ++ii) {
      const auto i = static_cast<std::uint32_t>(ii);
      touched.clear();
      for (std::uint32_t c : rows[i]) {
        for (std::uint32_t j : cols[c]) {
          if (j <= i) continue;
          if (shared[j]++ == 0) touched.push_back(j);
        }
      }
      for (std::uint32_t j : touched) {
        const std::uint64_t s = shared[j];
        total += s * (s - 1) / 2;
        shared[j] = 0;
      }
    }
  }
  return total;
}

}  // namespace

std::uint64_t count_4cycles(const StabilizerCode& code, CycleMode mode) {
  return count_impl(cycle_matrix(code, mode), true);
}

std::uint64_t count_4cycles_serial(const StabilizerCode& code, CycleMode mode) {
  return count_impl(cycle_matrix(code, mode), false);
}

std::uint64_t count_4cycles(const BitMatrix& h) { return count_impl(h, true); }

}  // namespace xyz
