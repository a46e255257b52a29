#include <omp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "xyz/distance.hpp"
#include "xyz/products.hpp"
#include "xyz/rng.hpp"
#include "xyz/serialize.hpp"
#include "xyz/simulation.hpp"

using namespace xyz;

namespace {

enum Exit { kOk = 0, kUsage = 2, kValidation = 3, kIo = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> source;
  std::string out;
  std::string config;
  std::string noise;
  std::string eta = "0.5";
  std::vector<double> p;
  std::vector<std::string> sizes;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t max_iters = 32;
  double ms_scale = 0.625;
  bool no_osd = false;
  int jobs = 0;
  std::size_t restarts = 10000;
  std::size_t exact = 0;
  std::string mode = "both";
  bool sparse = false;
};

std::vector<std::size_t> parse_lengths(const std::vector<std::string>& words) {
  std::vector<std::size_t> out;
  for (const auto& w : words) {
    std::size_t used = 0;
    long v = -1;
    try {
      v = std::stol(w, &used);
    } catch (const std::exception&) {
    }
    if (used != w.size() || v < 1) throw UsageError("bad length '" + w + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::vector<std::size_t> parse_size(const std::string& text) {
  std::vector<std::string> words;
  std::stringstream ss(text);
  for (std::string w; std::getline(ss, w, ',');) words.push_back(w);
  return parse_lengths(words);
}

bool is_family(const std::string& s) {
  const auto& names = family_names();
  return std::find(names.begin(), names.end(), s) != names.end();
}

// "family l1 l2 ..." or a path written by construct. Files are checked for
// commutation unless `check` is false.
StabilizerCode load_source(const std::vector<std::string>& source, bool check = true) {
  if (source.empty()) throw UsageError("missing code: give a family with lengths or a code file");
  if (is_family(source[0])) {
    try {
      return make_family(source[0], parse_lengths({source.begin() + 1, source.end()}));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (source.size() != 1) throw UsageError("unknown family '" + source[0] + "'");
  StabilizerCode code = load_code(source[0]);
  if (check && first_anticommuting_pair(code)) throw ValidationError("checks in '" + source[0] + "' do not commute");
  return code;
}

void apply_config(CLI::App& sub, Options& o) {
  if (o.config.empty()) return;
  std::ifstream in(o.config);
  if (!in) throw std::ios_base::failure("cannot open config '" + o.config + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad config: ") + e.what());
  }
  auto unset = [&](const char* flag) {
    const CLI::Option* opt = sub.get_option_no_throw(flag);
    return opt == nullptr || opt->count() == 0;
  };
  try {
    if (j.contains("noise") && unset("--noise")) o.noise = j["noise"].get<std::string>();
    if (j.contains("eta") && unset("--eta"))
      o.eta = j["eta"].is_string() ? j["eta"].get<std::string>() : std::to_string(j["eta"].get<double>());
    if (j.contains("p") && unset("--p"))
      o.p = j["p"].is_array() ? j["p"].get<std::vector<double>>() : std::vector<double>{j["p"].get<double>()};
    if (j.contains("sizes") && unset("--sizes")) o.sizes = j["sizes"].get<std::vector<std::string>>();
    if (j.contains("trials") && unset("--trials")) o.trials = j["trials"].get<std::size_t>();
    if (j.contains("seed") && unset("--seed")) o.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("max_iters") && unset("--max-iters")) o.max_iters = j["max_iters"].get<std::size_t>();
    if (j.contains("ms_scale") && unset("--ms-scale")) o.ms_scale = j["ms_scale"].get<double>();
    if (j.contains("no_osd") && unset("--no-osd")) o.no_osd = j["no_osd"].get<bool>();
    if (j.contains("jobs") && unset("--jobs")) o.jobs = j["jobs"].get<int>();
    if (j.contains("out") && unset("--out")) o.out = j["out"].get<std::string>();
    if (j.contains("restarts") && unset("--restarts")) o.restarts = j["restarts"].get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad config value: ") + e.what());
  }
}

NoiseSpec noise_of(const Options& o) {
  const double eta = parse_eta(o.eta);
  const std::string kind = o.noise.empty() ? "biased" : o.noise;
  return parse_noise(kind, eta);
}

SimulationConfig sim_config(const Options& o) {
  SimulationConfig c;
  c.decoder.max_iterations = o.max_iters;
  c.decoder.ms_scale = o.ms_scale;
  c.decoder.osd = !o.no_osd;
  c.jobs = o.jobs;
  validate(c.decoder);
  return c;
}

void print_blocks(const StabilizerCode& code) {
  std::cout << "qubit blocks:";
  for (const auto& b : code.qubit_blocks) std::cout << ' ' << b.name << '=' << b.size;
  std::cout << "\ncheck blocks:";
  for (const auto& b : code.check_blocks) std::cout << ' ' << b.name << '=' << b.size;
  std::cout << '\n';
}

// Writes the CSV header only when the file is new or empty.
template <typename F>
void with_csv(const std::string& path, F&& body) {
  if (path.empty() || path == "-") {
    write_csv_header(std::cout);
    body(std::cout);
    return;
  }
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  if (fresh) write_csv_header(out);
  body(out);
  if (!out) throw std::ios_base::failure("write to '" + path + "' failed");
}

int cmd_construct(const Options& o) {
  if (o.source.empty() || !is_family(o.source[0])) throw UsageError("construct needs a known family and lengths");
  const StabilizerCode code = load_source(o.source);
  std::cout << "family: " << code.family_tag << "\nN=" << code.n() << " k=" << code_dimension(code) << '\n';
  print_blocks(code);
  if (!o.out.empty()) {
    if (o.sparse) {
      std::ofstream out(o.out);
      if (!out) throw std::ios_base::failure("cannot open '" + o.out + "' for writing");
      out << "Hx\n";
      write_sparse(out, code.hx);
      out << "Hz\n";
      write_sparse(out, code.hz);
    } else {
      save_code(o.out, code);
    }
  }
  return kOk;
}

int cmd_verify(const Options& o) {
  const StabilizerCode code = load_source(o.source, false);
  std::cout << "N=" << code.n() << " checks=" << code.num_checks() << '\n';
  if (const auto bad = first_anticommuting_pair(code)) {
    std::cout << "commutation: FAIL (rows " << bad->first << " and " << bad->second << " anticommute)\n";
    return kValidation;
  }
  std::cout << "commutation: PASS\n";
  const std::size_t k = code_dimension(code);
  std::cout << "k (rank): " << k << '\n';
  if (is_xyz4(code)) {
    const std::size_t k1 = dimension_formula(*code.seeds);
    std::cout << "k (closed form): " << k1 << (k1 == k ? "" : "  MISMATCH") << '\n';
    try {
      std::cout << "distance upper bound: " << distance_upper_bound(*code.seeds) << '\n';
    } catch (const std::invalid_argument& e) {
      std::cout << "distance upper bound: " << e.what() << '\n';
    }
    if (k1 != k) return kValidation;
  }
  return kOk;
}

int cmd_dimension(const Options& o) {
  const StabilizerCode code = load_source(o.source);
  std::cout << "k=" << code_dimension(code) << '\n';
  if (is_xyz4(code)) std::cout << "k (closed form)=" << dimension_formula(*code.seeds) << '\n';
  return kOk;
}

int cmd_distance(const Options& o) {
  const StabilizerCode code = load_source(o.source);
  const bool closed = is_xyz4(code);
  const LogicalBasis basis = closed ? logical_basis_closed_form(*code.seeds) : extract_logical_basis(code);
  if (basis.size() == 0) throw UsageError("code encodes no logical qubits");
  const auto extra = closed ? closed_form_operators(*code.seeds) : std::vector<PauliError>{};
  const DistanceResult mc = mc_distance(code, basis, {o.restarts, o.seed, 64}, extra);
  std::cout << "mc distance (" << o.restarts << " restarts): " << *mc.weight << '\n';
  std::cout << "witness: " << mc.witness->to_string() << '\n';
  if (closed) {
    try {
      std::cout << "upper bound: " << distance_upper_bound(*code.seeds) << '\n';
    } catch (const std::invalid_argument& e) {
      std::cout << "upper bound: " << e.what() << '\n';
    }
  }
  if (o.exact > 0) {
    const DistanceResult ex = exact_distance(code, o.exact);
    if (ex.weight)
      std::cout << "exact distance: " << *ex.weight << '\n';
    else
      std::cout << "exact distance: > " << o.exact << '\n';
  }
  return kOk;
}

int cmd_cycles(const Options& o) {
  const StabilizerCode code = load_source(o.source);
  if (o.mode != "pauli" && o.mode != "symplectic" && o.mode != "both")
    throw UsageError("mode must be pauli, symplectic or both");
  if (o.mode != "symplectic") std::cout << "4-cycles (pauli-support): " << count_4cycles(code, CycleMode::PauliSupport) << '\n';
  if (o.mode != "pauli") std::cout << "4-cycles (symplectic): " << count_4cycles(code, CycleMode::Symplectic) << '\n';
  return kOk;
}

int cmd_simulate(const Options& o) {
  if (o.p.empty()) throw UsageError("simulate needs --p");
  const StabilizerCode code = load_source(o.source);
  const NoiseSpec noise = noise_of(o);
  const SimulationConfig cfg = sim_config(o);
  const std::size_t k = code_dimension(code);
  if (k == 0) throw UsageError("code encodes no logical qubits");
  std::vector<ScanPoint> points;
  for (std::size_t i = 0; i < o.p.size(); ++i) {
    const std::uint64_t seed = derive_seed(o.seed, i);
    const TrialSummary s = run_trials(code, noise.at(o.p[i]), o.trials, seed, cfg);
    ScanPoint pt;
    pt.lengths = code.lengths;
    pt.n = code.n();
    pt.k = k;
    pt.p = o.p[i];
    pt.eta = noise.eta_value();
    pt.trials = s.trials;
    pt.failures = s.failures;
    pt.block_rate = s.block_rate;
    pt.per_logical = per_logical_rate(s.block_rate, k);
    pt.ci = {per_logical_rate(s.ci.low, k), per_logical_rate(s.ci.high, k)};
    pt.seed = seed;
    pt.max_iters = cfg.decoder.max_iterations;
    points.push_back(pt);
  }
  with_csv(o.out, [&](std::ostream& out) { write_csv_rows(out, code.family_tag, points); });
  return kOk;
}

int cmd_threshold(const Options& o) {
  if (o.source.size() != 1 || !is_family(o.source[0])) throw UsageError("threshold needs one known family");
  if (o.sizes.size() < 2) throw UsageError("threshold needs --sizes with at least 2 entries");
  if (o.p.size() < 3) throw UsageError("threshold needs --p with at least 3 grid points");
  std::vector<std::vector<std::size_t>> sizes;
  for (const auto& s : o.sizes) sizes.push_back(parse_size(s));
  const NoiseSpec noise = noise_of(o);
  ScanResult r;
  try {
    r = threshold_scan(o.source[0], sizes, o.p, noise, o.trials, o.seed, sim_config(o));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!o.out.empty()) with_csv(o.out, [&](std::ostream& out) { write_csv_rows(out, r.family, r.points); });
  std::cerr << r.family << ' ' << noise.label() << ": ";
  if (r.threshold) {
    std::cerr << "threshold " << *r.threshold << " (crossings:";
    for (double c : r.crossings) std::cerr << ' ' << c;
    std::cerr << ")\n";
  } else {
    std::cerr << "no crossing in range\n";
  }
  if (o.out.empty()) {
    write_csv_header(std::cout);
    write_csv_rows(std::cout, r.family, r.points);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct, verify and simulate XYZ-product and homological-product codes"};
  app.require_subcommand(1);
  Options o;

  auto add_source = [&](CLI::App* s) {
    s->add_option("code", o.source, "family and lengths (e.g. chamon4 2 2 2 2) or a code file")->required();
  };
  auto add_decoder = [&](CLI::App* s) {
    s->add_option("--noise", o.noise, "depolarizing | biased | pure-x | pure-y | pure-z");
    s->add_option("--eta", o.eta, "Z bias pz/(px+py); 'inf' for pure Z");
    s->add_option("--p", o.p, "physical error rate(s)");
    s->add_option("--trials", o.trials, "trials per point");
    s->add_option("--seed", o.seed, "master seed");
    s->add_option("--max-iters", o.max_iters, "BP iteration cap");
    s->add_option("--ms-scale", o.ms_scale, "min-sum scale factor");
    s->add_flag("--no-osd", o.no_osd, "disable OSD-0 post-processing");
    s->add_option("--out", o.out, "CSV output path (appended)");
    s->add_option("--config", o.config, "JSON config; command-line flags win");
  };

  auto* construct = app.add_subcommand("construct", "build a code family and write it to a file");
  add_source(construct);
  construct->add_option("-o,--out", o.out, "output path");
  construct->add_flag("--sparse", o.sparse, "write coordinate lists instead");
  auto* verify = app.add_subcommand("verify", "commutation, dimension and distance bound report");
  add_source(verify);
  auto* dimension = app.add_subcommand("dimension", "code dimension by rank and by closed form");
  add_source(dimension);
  auto* distance = app.add_subcommand("distance", "randomized (and optionally exhaustive) distance");
  add_source(distance);
  distance->add_option("--restarts", o.restarts, "randomized restarts");
  distance->add_option("--seed", o.seed, "seed");
  distance->add_option("--exact", o.exact, "also search exhaustively up to this weight");
  distance->add_option("--config", o.config, "JSON config; command-line flags win");
  auto* cycles = app.add_subcommand("cycles", "count 4-cycles of the Tanner graph");
  add_source(cycles);
  cycles->add_option("--mode", o.mode, "pauli | symplectic | both");
  auto* simulate = app.add_subcommand("simulate", "logical error rate at given p");
  add_source(simulate);
  add_decoder(simulate);
  auto* threshold = app.add_subcommand("threshold", "threshold scan over sizes and a p grid");
  threshold->add_option("family", o.source, "code family")->required();
  threshold->add_option("--sizes", o.sizes, "comma-separated lengths per size, e.g. 3,3,3,3 3,5,3,5");
  add_decoder(threshold);
  app.add_option("--jobs", o.jobs, "worker threads (0 = OpenMP default)")->envname("XYZ_JOBS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    apply_config(*sub, o);
    if (o.jobs < 0) throw UsageError("--jobs must be nonnegative");
    if (o.jobs > 0) omp_set_num_threads(o.jobs);
    if (o.trials == 0) throw UsageError("--trials must be at least 1");
    if (sub == construct) return cmd_construct(o);
    if (sub == verify) return cmd_verify(o);
    if (sub == dimension) return cmd_dimension(o);
    if (sub == distance) return cmd_distance(o);
    if (sub == cycles) return cmd_cycles(o);
    if (sub == simulate) return cmd_simulate(o);
    if (sub == threshold) return cmd_threshold(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kUsage;
}
