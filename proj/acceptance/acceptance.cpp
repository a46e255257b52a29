// Acceptance run: one PASS/FAIL line per criterion, details indented below.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "xyz/css.hpp"
#include "xyz/decoder.hpp"
#include "xyz/distance.hpp"
#include "xyz/products.hpp"
#include "xyz/rng.hpp"
#include "xyz/simulation.hpp"

using namespace xyz;
using Lengths = std::vector<std::size_t>;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Row {
  Lengths lengths;
  std::size_t k;
  std::size_t d;
};

// Code dimension and distance per family, lengths n1..n4.
const std::vector<Row> kChamon4 = {{{2, 2, 2, 2}, 32, 4},  {{3, 3, 3, 3}, 72, 6},  {{4, 4, 4, 4}, 128, 8},
                                   {{5, 5, 5, 5}, 200, 20}, {{2, 3, 2, 3}, 8, 6},   {{3, 4, 3, 4}, 8, 12},
                                   {{4, 5, 4, 5}, 8, 20}};
const std::vector<Row> kToric4 = {{{2, 2, 2, 2}, 6, 4}, {{3, 3, 3, 3}, 6, 9}, {{4, 4, 4, 4}, 6, 16},
                                  {{5, 5, 5, 5}, 6, 25}, {{2, 3, 2, 3}, 6, 4}, {{3, 4, 3, 4}, 6, 9},
                                  {{4, 5, 4, 5}, 6, 16}};
const std::vector<Row> kXyzConcat = {{{3, 3, 3, 3}, 1, 9},  {{5, 5, 5, 5}, 1, 25}, {{7, 7, 7, 7}, 1, 49},
                                     {{3, 5, 3, 5}, 1, 15}, {{3, 7, 3, 7}, 1, 21}};
const std::vector<Row> kHomConcat = {{{3, 3, 3, 3}, 1, 9},  {{5, 5, 5, 5}, 1, 25}, {{7, 7, 7, 7}, 1, 49},
                                     {{3, 5, 3, 5}, 1, 9}, {{3, 7, 3, 7}, 1, 9}};

struct CycleRow {
  std::string family;
  Lengths lengths;
  std::uint64_t count;
};

const std::vector<CycleRow> kCycles = {
    {"chamon3", {2, 2, 2}, 240},     {"chamon3", {3, 3, 3}, 648},     {"chamon3", {4, 4, 4}, 1536},
    {"chamon3", {2, 3, 4}, 624},     {"chamon3", {3, 4, 5}, 1440},    {"toric3", {2, 2, 2}, 132},
    {"toric3", {3, 3, 3}, 324},      {"toric3", {4, 4, 4}, 768},      {"toric3", {2, 3, 4}, 201},
    {"toric3", {3, 4, 5}, 467},      {"chamon4", {2, 2, 2, 2}, 1792}, {"chamon4", {2, 3, 2, 3}, 3744},
    {"toric4", {2, 2, 2, 2}, 519},   {"toric4", {2, 3, 2, 3}, 1095},
};

std::string join(const Lengths& l, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? sep : "") + std::to_string(l[i]);
  return s;
}

std::string label(const std::string& family, const Lengths& l) { return family + "(" + join(l) + ")"; }

void detail(const std::string& line) { std::cout << "    " << line << '\n'; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(digits) << v;
  return o.str();
}

Product4Spec random_spec(testing::Rng& rng) { return {testing::random_small_css(rng), testing::random_small_css(rng)}; }

bool commutation_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t checked = 0, failed = 0;
  auto check = [&](const std::string& name, const StabilizerCode& code) {
    ++checked;
    if (!verify_commutation(code)) {
      ++failed;
      detail("anticommuting checks in " + name);
    }
  };
  for (const auto& [family, rows] : {std::pair{"chamon4", &kChamon4}, {"toric4", &kToric4},
                                      {"xyz4-concat", &kXyzConcat}, {"homprod4-concat", &kHomConcat}})
    for (const auto& r : *rows) check(label(family, r.lengths), make_family(family, r.lengths));
  for (const auto& c : kCycles) check(label(c.family, c.lengths), make_family(c.family, c.lengths));
  testing::Rng rng(kSeed);
  for (int t = 0; t < 50; ++t) {
    const Product4Spec spec = random_spec(rng);
    check("random xyz4 #" + std::to_string(t), xyz4(spec));
    check("random homological4 #" + std::to_string(t), homological4(spec));
  }
  const double secs = seconds_since(t0);
  detail(std::to_string(checked - failed) + "/" + std::to_string(checked) + " codes commute, " + fmt(secs, 1) +
         " s (limit 60 s)");
  return failed == 0 && secs < 60.0;
}

bool dimension_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (const auto& [family, rows] : {std::pair{"chamon4", &kChamon4}, {"toric4", &kToric4},
                                      {"xyz4-concat", &kXyzConcat}, {"homprod4-concat", &kHomConcat}}) {
    std::string got;
    for (const auto& r : *rows) {
      const std::size_t k = code_dimension(make_family(family, r.lengths));
      got += (got.empty() ? "" : " ") + std::to_string(k);
      if (k != r.k) {
        ok = false;
        detail(label(family, r.lengths) + ": k = " + std::to_string(k) + ", expected " + std::to_string(r.k));
      }
    }
    detail(std::string(family) + " k = {" + got + "}");
  }
  const double secs = seconds_since(t0);
  detail(fmt(secs, 1) + " s (limit 120 s)");
  return ok && secs < 120.0;
}

bool dimension_formula_check() {
  testing::Rng rng(derive_seed(kSeed, 1));
  std::size_t agree = 0;
  const std::size_t total = 100;
  for (std::size_t t = 0; t < total; ++t) {
    const Product4Spec spec = random_spec(rng);
    const StabilizerCode code = xyz4(spec);
    const std::size_t by_rank = code.n() - rank(code.symplectic_matrix());
    if (dimension_formula(spec) == by_rank)
      ++agree;
    else
      detail("spec #" + std::to_string(t) + ": formula " + std::to_string(dimension_formula(spec)) + ", rank " +
             std::to_string(by_rank));
  }
  detail(std::to_string(agree) + "/" + std::to_string(total) + " random specs agree");
  return agree == total;
}

bool toric_dimension() {
  std::size_t agree = 0, total = 0;
  for (std::size_t j = 2; j <= 6; ++j)
    for (std::size_t k = 2; k <= 6; ++k) {
      ++total;
      const std::size_t got = y_undetectable_dim(toric_2d(j, k));
      if (got == 2 * std::gcd(j, k))
        ++agree;
      else
        detail("toric_2d(" + std::to_string(j) + "," + std::to_string(k) + "): " + std::to_string(got));
    }
  detail(std::to_string(agree) + "/" + std::to_string(total) + " pairs give 2 gcd(j,k)");
  return agree == total;
}

bool distance_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  const McDistanceConfig config{100000, derive_seed(kSeed, 2), 64};
  for (const auto& [family, rows] : {std::pair{"chamon4", &kChamon4}, {"xyz4-concat", &kXyzConcat}}) {
    for (const auto& r : *rows) {
      const auto t1 = std::chrono::steady_clock::now();
      const StabilizerCode code = make_family(family, r.lengths);
      const Product4Spec spec = *family_spec(family, r.lengths);
      const DistanceResult mc =
          mc_distance(code, logical_basis_closed_form(spec), config, closed_form_operators(spec));
      const std::size_t bound = distance_upper_bound(spec);
      const std::size_t d = *mc.weight;
      const bool witness_ok = mc.witness && is_logical(code, *mc.witness) && mc.witness->weight() == d;
      bool row_ok = d == r.d && bound >= d && witness_ok;
      std::string line = label(family, r.lengths) + ": mc " + std::to_string(d) + ", expected " +
                         std::to_string(r.d) + ", bound " + std::to_string(bound);
      if (r.d <= 6) {
        const DistanceResult ex = exact_distance(code, 6);
        line += ", exact " + (ex.weight ? std::to_string(*ex.weight) : std::string("> 6"));
        row_ok = row_ok && ex.weight == d;
      }
      line += " (" + fmt(seconds_since(t1), 1) + " s)";
      if (!row_ok) line += "  <-- mismatch";
      detail(line);
      ok = ok && row_ok;
    }
  }
  const double secs = seconds_since(t0);
  detail("10^5 restarts per row, " + fmt(secs, 1) + " s (limit 1800 s)");
  return ok && secs < 1800.0;
}

bool cycle_suite() {
  bool ok = true;
  for (const auto& c : kCycles) {
    const StabilizerCode code = make_family(c.family, c.lengths);
    const std::uint64_t support = count_4cycles(code, CycleMode::PauliSupport);
    const std::uint64_t sym = count_4cycles(code, CycleMode::Symplectic);
    const bool match = support == c.count;
    ok = ok && match;
    detail(label(c.family, c.lengths) + ": pauli-support " + std::to_string(support) + ", symplectic " +
           std::to_string(sym) + ", expected " + std::to_string(c.count) + (match ? "" : "  <-- mismatch"));
  }
  return ok;
}

std::vector<StabilizerCode> decoder_families() {
  return {make_family("toric2", {3, 3}),           make_family("concat2", {3, 3}),
          make_family("chamon3", {3, 3, 3}),       make_family("toric3", {3, 3, 3}),
          make_family("chamon4", {2, 3, 2, 3}),    make_family("toric4", {2, 2, 2, 2}),
          make_family("xyz4-concat", {3, 5, 3, 5}), make_family("homprod4-concat", {3, 5, 3, 5})};
}

bool decoder_soundness() {
  bool ok = true;
  std::size_t idx = 0;
  for (const auto& code : decoder_families()) {
    const TannerGraph graph(code);
    const NoiseModel model = NoiseModel::depolarizing(0.1);
    const auto pr = priors(model, code.n());
    std::size_t match = 0;
    const std::size_t trials = 1000;
    for (std::size_t t = 0; t < trials; ++t) {
      auto rng = stream_rng(derive_seed(kSeed, 3 + idx), t);
      const BitVector s = syndrome(code, sample(model, code.n(), rng));
      const BpResult bp = bp_decode(graph, s, pr, {});
      if (graph.syndrome_of(osd0(graph, s, bp.llr)) == s) ++match;
    }
    ++idx;
    ok = ok && match == trials;
    detail(code.family_tag + "(" + join(code.lengths) + "): OSD-0 syndrome match " + std::to_string(match) + "/" +
           std::to_string(trials));
  }
  const StabilizerCode nine = StabilizerCode::from_css(concatenated_rep(3, 3));
  const ResidualClassifier cls(nine, extract_logical_basis(nine));
  std::size_t corrected = 0;
  for (std::size_t q = 0; q < 9; ++q)
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      PauliError e(9);
      e.set(q, p);
      if (!cls.failure(e * decode(nine, syndrome(nine, e), NoiseModel::depolarizing(0.05)))) ++corrected;
    }
  detail("9-qubit concatenated code: " + std::to_string(corrected) + "/27 weight-1 errors corrected");
  return ok && corrected == 27;
}

struct Experiment {
  std::string name;
  std::string family;
  std::vector<Lengths> sizes;
  NoiseSpec noise;
  double lo, hi, step;
  double window_lo, window_hi;
};

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> g;
  const int n = static_cast<int>(std::lround((hi - lo) / step));
  for (int i = 0; i <= n; ++i) g.push_back(std::round((lo + i * step) * 1e6) / 1e6);
  return g;
}

bool thresholds(std::size_t trials, const std::filesystem::path& csv_dir) {
  const NoiseSpec depol = parse_noise("depolarizing", 0.5);
  const NoiseSpec pure_z = parse_noise("pure-z", 0.5);
  const std::vector<Experiment> exps = {
      {"3D Chamon, depolarizing", "chamon3", {{3, 3, 3}, {4, 4, 4}}, depol, 0.08, 0.20, 0.02, 0.11, 0.17},
      {"4D toric, depolarizing", "toric4", {{2, 2, 2, 2}, {3, 3, 3, 3}}, depol, 0.10, 0.22, 0.02, 0.13, 0.19},
      {"4D Chamon, pure Z", "chamon4", {{2, 3, 2, 3}, {3, 4, 3, 4}}, pure_z, 0.12, 0.24, 0.02, 0.15, 0.21},
      {"4D toric, pure Z", "toric4", {{2, 3, 2, 3}, {3, 4, 3, 4}}, pure_z, 0.04, 0.16, 0.02, 0.07, 0.12},
      {"4D XYZ concatenated, pure Z", "xyz4-concat", {{3, 3, 3, 3}, {3, 5, 3, 5}}, pure_z, 0.26, 0.46, 0.04, 0.32,
       0.42},
      {"4D homological concatenated, pure Z", "homprod4-concat", {{3, 3, 3, 3}, {3, 5, 3, 5}}, pure_z, 0.06, 0.24,
       0.03, 0.12, 0.18},
  };
  std::filesystem::create_directories(csv_dir);
  bool ok = true;
  std::vector<std::optional<double>> found;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const auto& e = exps[i];
    const auto t0 = std::chrono::steady_clock::now();
    const ScanResult r =
        threshold_scan(e.family, e.sizes, grid(e.lo, e.hi, e.step), e.noise, trials, derive_seed(kSeed, 100 + i));
    const auto path = csv_dir / (e.family + "_" + e.noise.label() + ".csv");
    std::ofstream out(path);
    write_csv_header(out);
    write_csv_rows(out, r.family, r.points);
    found.push_back(r.threshold);
    const bool in = r.threshold && *r.threshold >= e.window_lo && *r.threshold <= e.window_hi;
    ok = ok && in;
    std::string crossings;
    for (double c : r.crossings) crossings += (crossings.empty() ? "" : " ") + fmt(c);
    detail(e.name + " " + join(e.sizes[0], "") + "/" + join(e.sizes[1], "") + ": " +
           (r.threshold ? "threshold " + fmt(*r.threshold) : std::string("no crossing in range")) + ", window [" +
           fmt(e.window_lo, 2) + ", " + fmt(e.window_hi, 2) + "]" + (crossings.empty() ? "" : ", crossings " + crossings) +
           " (" + fmt(seconds_since(t0), 0) + " s)" + (in ? "" : "  <-- outside"));
  }
  auto greater = [&](std::size_t a, std::size_t b) { return found[a] && found[b] && *found[a] > *found[b]; };
  const bool order1 = greater(4, 5), order2 = greater(2, 3);
  detail(std::string("ordering XYZ-concat > homological-concat (pure Z): ") + (order1 ? "holds" : "fails"));
  detail(std::string("ordering 4D Chamon > 4D toric (pure Z): ") + (order2 ? "holds" : "fails"));
  detail(std::to_string(trials) + " trials per point; CSV in " + csv_dir.string());
  return ok && order1 && order2;
}

bool overlaps(const Interval& a, const Interval& b) { return a.low <= b.high && b.low <= a.high; }

bool property_fallback(std::size_t trials) {
  bool ok = true;
  const StabilizerCode code = chamon3(3, 3, 3);
  const std::size_t k = code_dimension(code);
  std::vector<Interval> cis;
  const char* names[] = {"X", "Y", "Z"};
  for (int i = 0; i < 3; ++i) {
    const Pauli pauli = static_cast<Pauli>(i + 1);
    const TrialSummary s = run_trials(code, NoiseModel::pure(pauli, 0.10), trials, derive_seed(kSeed, 200 + i));
    const Interval ci{per_logical_rate(s.ci.low, k), per_logical_rate(s.ci.high, k)};
    cis.push_back(ci);
    detail(std::string("chamon3(3,3,3) pure ") + names[i] + " p = 0.10: per-logical " +
           fmt(per_logical_rate(s.block_rate, k)) + " CI [" + fmt(ci.low) + ", " + fmt(ci.high) + "]");
  }
  const bool overlap = overlaps(cis[0], cis[1]) && overlaps(cis[0], cis[2]) && overlaps(cis[1], cis[2]);
  detail(std::string("pairwise CI overlap: ") + (overlap ? "yes" : "no"));
  ok = ok && overlap;

  bool ident = per_logical_rate(0.0, 7) == 0.0 && std::abs(per_logical_rate(0.19, 2) - 0.1) <= 0.0005;
  for (double p : {0.0, 0.013, 0.5, 0.97, 1.0}) ident = ident && per_logical_rate(p, 1) == p;
  for (double p : {0.01, 0.2, 0.6})
    for (std::size_t kk : {2, 5, 40})
      ident = ident && std::abs(1.0 - std::pow(1.0 - per_logical_rate(p, kk), static_cast<double>(kk)) - p) < 1e-12;
  detail(std::string("per-logical identities: ") + (ident ? "hold" : "violated"));
  ok = ok && ident;

  auto render = [] {
    const ScanResult r = threshold_scan("chamon3", {{2, 2, 2}, {3, 3, 3}}, {0.06, 0.1, 0.14},
                                        parse_noise("biased", 3.0), 300, kSeed);
    std::ostringstream out;
    write_csv_header(out);
    write_csv_rows(out, r.family, r.points);
    return out.str();
  };
  const std::string a = render(), b = render();
  std::vector<TrialRecord> pr, sr;
  run_trials(code, NoiseModel::depolarizing(0.12), 500, kSeed, {}, &pr);
  run_trials_serial(code, NoiseModel::depolarizing(0.12), 500, kSeed, {}, &sr);
  bool same = pr.size() == sr.size();
  for (std::size_t i = 0; same && i < pr.size(); ++i)
    same = pr[i].failure == sr[i].failure && pr[i].residual_weight == sr[i].residual_weight && pr[i].seed == sr[i].seed;
  detail(std::string("repeated scan CSV byte-identical: ") + (a == b ? "yes" : "no") +
         std::string("; parallel and serial trial records identical: ") + (same ? "yes" : "no"));
  return ok && a == b && same;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria runner"};
  std::vector<std::string> only;
  std::string csv_dir = "acceptance_csv";
  std::size_t threshold_trials = 4000;
  std::size_t fallback_trials = 10000;
  app.add_option("--only", only, "Run only the named criteria");
  app.add_option("--csv-dir", csv_dir, "Where threshold CSV files go");
  app.add_option("--threshold-trials", threshold_trials, "Trials per threshold grid point")->check(CLI::Range(1000, 10000));
  bool list = false;
  app.add_flag("--list", list, "List criterion names");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<bool()>>> criteria = {
      {"commutation", commutation_suite},
      {"dimension", dimension_suite},
      {"dimension-formula", dimension_formula_check},
      {"toric-dimension", toric_dimension},
      {"distance", distance_suite},
      {"cycles", cycle_suite},
      {"decoder", decoder_soundness},
      {"thresholds", [&] { return thresholds(threshold_trials, csv_dir); }},
      {"fallback", [&] { return property_fallback(fallback_trials); }},
  };
  if (list) {
    for (const auto& c : criteria) std::cout << c.first << '\n';
    return 0;
  }
  const std::set<std::string> selected(only.begin(), only.end());
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    if (!selected.empty() && !selected.count(name)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream captured;
    auto* old = std::cout.rdbuf(captured.rdbuf());
    bool pass = false;
    try {
      pass = fn();
    } catch (const std::exception& e) {
      detail(std::string("exception: ") + e.what());
    }
    std::cout.rdbuf(old);
    std::cout << (pass ? "PASS " : "FAIL ") << name << " (" << fmt(seconds_since(t0), 1) << " s)\n"
              << captured.str() << std::flush;
    failures += !pass;
  }
  return failures == 0 ? 0 : 1;
}
