#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "puritydyn/bounds.hpp"
#include "puritydyn/csv.hpp"
#include "puritydyn/exact.hpp"
#include "puritydyn/lattice.hpp"
#include "puritydyn/mps.hpp"
#include "puritydyn/verify.hpp"

namespace puritydyn {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t default_seed = 20240915;

// Flat key=value run description; flags layer on top of a loaded file.
struct RunConfig {
  std::string model = "xx";          // xx | xxz | coupled-ising
  int n_sites = 0;                   // chains
  int n_rungs = 0;                   // ladder
  double delta = 0.5;                // xxz anisotropy
  double intra_coupling = 0.0;       // ladder in-chain x-x weight
  std::string initial_state = "neel";  // neel | all-down | product-updown | ghz-x | w:p
  std::string cut = "half";          // bond index | chain-split | half
  double dt = 0.01;
  double t_max = 1.0;
  double sample_interval = 0.1;
  int max_rank = 128;
  int trotter_order = 2;
  std::string engine = "mps";        // mps | dense
  std::string output_path = "run.csv";
  std::uint64_t seed = default_seed;
};

struct ScalingConfig {
  std::string state_family = "product";  // product | ghz-x | w | w:p
  int n_min = 2;
  int n_max = 8;
  double t_probe = 0.001;
  double intra_coupling = 0.0;
  std::string output_path = "scaling.csv";
  std::uint64_t seed = default_seed;
};

// --- config file ------------------------------------------------------------

inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(t.substr(0, eq)), value = trim(t.substr(eq + 1));
    if (key.empty()) throw config_error("config line " + std::to_string(line_no) + ": empty key");
    kv[key] = value;
  }
  return kv;
}

namespace detail {

inline int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int out = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw config_error(key + ": not an integer: '" + v + "'");
  }
}

inline double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw config_error(key + ": not a number: '" + v + "'");
  }
}

inline std::uint64_t to_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const std::uint64_t out = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw config_error(key + ": not a non-negative integer: '" + v + "'");
  }
}

}  // namespace detail

inline void apply_key_values(RunConfig& c, const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) {
    if (k == "model") c.model = v;
    else if (k == "n_sites") c.n_sites = detail::to_int(k, v);
    else if (k == "n_rungs") c.n_rungs = detail::to_int(k, v);
    else if (k == "delta") c.delta = detail::to_double(k, v);
    else if (k == "intra_coupling") c.intra_coupling = detail::to_double(k, v);
    else if (k == "initial_state") c.initial_state = v;
    else if (k == "cut") c.cut = v;
    else if (k == "dt") c.dt = detail::to_double(k, v);
    else if (k == "t_max") c.t_max = detail::to_double(k, v);
    else if (k == "sample_interval") c.sample_interval = detail::to_double(k, v);
    else if (k == "max_rank") c.max_rank = detail::to_int(k, v);
    else if (k == "trotter_order") c.trotter_order = detail::to_int(k, v);
    else if (k == "engine") c.engine = v;
    else if (k == "output_path") c.output_path = v;
    else if (k == "seed") c.seed = detail::to_u64(k, v);
    else throw config_error("unknown config key: " + k);
  }
}

inline void apply_key_values(ScalingConfig& c, const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) {
    if (k == "state_family") c.state_family = v;
    else if (k == "n_min") c.n_min = detail::to_int(k, v);
    else if (k == "n_max") c.n_max = detail::to_int(k, v);
    else if (k == "t_probe") c.t_probe = detail::to_double(k, v);
    else if (k == "intra_coupling") c.intra_coupling = detail::to_double(k, v);
    else if (k == "output_path") c.output_path = v;
    else if (k == "seed") c.seed = detail::to_u64(k, v);
    else throw config_error("unknown config key: " + k);
  }
}

template <typename Config>
inline void load_config_file(Config& c, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw config_error("cannot read config file: " + path);
  apply_key_values(c, parse_key_values(f));
}

// --- model / state / cut resolution ------------------------------------------

inline int total_sites(const RunConfig& c) {
  if (c.model == "coupled-ising") return 2 * c.n_rungs;
  return c.n_sites;
}

inline SpinLatticeModel model_from_config(const RunConfig& c) {
  if (c.model == "xx") return build_xx_chain(c.n_sites);
  if (c.model == "xxz") return build_xxz_chain(c.n_sites, c.delta);
  if (c.model == "coupled-ising") return build_coupled_ising_chains(c.n_rungs, c.intra_coupling);
  throw config_error("model: expected xx, xxz, or coupled-ising, got '" + c.model + "'");
}

inline Cut cut_from_config(const RunConfig& c) {
  const SpinLatticeModel probe = model_from_config(c);
  if (c.cut == "chain-split") return Cut::split_chains();
  if (c.cut == "half") {
    if (probe.geometry == Geometry::two_chain_ladder) return Cut::split_chains();
    return Cut::at_position(probe.n_sites / 2);
  }
  try {
    return Cut::at_position(detail::to_int("cut", c.cut));
  } catch (const config_error&) {
    throw config_error("cut: expected bond index, 'half', or 'chain-split', got '" + c.cut + "'");
  }
}

// initial_state string for a dense start; "w:p" carries the flip count.
inline DenseState dense_state_from_config(const RunConfig& c) {
  const int n = total_sites(c);
  const std::string& s = c.initial_state;
  if (s == "neel") return dense_neel(n);
  if (s == "all-down") return dense_all_down(n);
  if (c.model == "coupled-ising") {
    if (s == "product-updown") return dense_product_updown(c.n_rungs);
    if (s == "ghz-x") return dense_ghz_x_ladder(c.n_rungs);
    if (s.rfind("w:", 0) == 0)
      return dense_w_ladder(c.n_rungs, detail::to_int("initial_state", s.substr(2)));
  }
  throw config_error("initial_state: '" + s + "' is not available for model " + c.model);
}

inline MatrixProductState mps_state_from_config(const RunConfig& c) {
  const int n = total_sites(c);
  if (c.initial_state == "neel") return mps_neel(n);
  if (c.initial_state == "all-down") return mps_from_basis_product(std::vector<bool>(n, true));
  return mps_from_dense(dense_state_from_config(c));  // ladder families, capacity-checked
}

inline void validate_run_config(const RunConfig& c) {
  if (c.model != "xx" && c.model != "xxz" && c.model != "coupled-ising")
    throw config_error("model: expected xx, xxz, or coupled-ising, got '" + c.model + "'");
  if (c.model == "coupled-ising") {
    if (c.n_rungs < 1) throw config_error("n_rungs: must be >= 1 for coupled-ising");
  } else if (c.n_sites < 2) {
    throw config_error("n_sites: must be >= 2 for chain models");
  }
  if (!(c.dt > 0.0)) throw config_error("dt: must be positive");
  if (c.t_max < 0.0) throw config_error("t_max: must be >= 0");
  if (!(c.sample_interval > 0.0)) throw config_error("sample_interval: must be positive");
  if (c.max_rank < 1) throw config_error("max_rank: must be >= 1");
  if (c.trotter_order != 2 && c.trotter_order != 4)
    throw config_error("trotter_order: must be 2 or 4");
  if (c.engine != "mps" && c.engine != "dense")
    throw config_error("engine: expected mps or dense, got '" + c.engine + "'");
  if (c.engine == "dense" && total_sites(c) > 14)
    throw config_error("engine=dense supports at most 14 sites, got " +
                       std::to_string(total_sites(c)));
  if (c.output_path.empty()) throw config_error("output_path: must be non-empty");
}

// --- worker pool --------------------------------------------------------------

namespace detail {

// Fan tasks out over a small pool; slot-indexed results keep assembly order
// independent of scheduling. Degenerates to a serial loop on one hardware
// thread.
template <typename Fn>
inline void parallel_indexed(int n_tasks, Fn&& fn) {
  if (n_tasks <= 0) return;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(n_tasks));
  if (workers <= 1) {
    for (int i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// 1 - purity without cancellation: 2 sum_{a<b} xi_a xi_b accumulated from the
// descending-sorted weights.
inline double purity_deficit(const SchmidtSpectrum& spectrum) {
  double run = 0.0, deficit = 0.0;
  for (double x : spectrum.values()) {
    deficit += 2.0 * x * run;
    run += x;
  }
  return deficit;
}

}  // namespace detail

// --- simulate ------------------------------------------------------------------

inline const char* simulation_csv_header() {
  return "t,purity,entropy,schmidt_rank,bound_short,bound_rank,bound_long,bound_combined,"
         "trunc_weight";
}

inline CsvTable simulation_table(const RunConfig& config) {
  validate_run_config(config);
  const SpinLatticeModel model = model_from_config(config);
  const Cut cut = cut_from_config(config);
  const BoundConstants k = bound_constants_for(extract_cut_interaction(model, cut));

  CsvTable table;
  table.header = simulation_csv_header();
  auto push_row = [&](double t, double purity, double entropy, int rank, double trunc) {
    std::string row = csv_number(t);
    row += ',' + csv_number(purity);
    row += ',' + csv_number(entropy);
    row += ',' + csv_number(rank);
    row += ',' + csv_number(short_time_lower_bound(t, k.mu));
    row += ',' + csv_number(rank_refined_lower_bound(t, k.mu, std::max<std::int64_t>(k.l_max, 2)));
    row += ',' + csv_number(long_time_lower_bound(t, k.chi));
    row += ',' + csv_number(combined_lower_bound(t, k));
    row += ',' + csv_number(trunc);
    table.rows.push_back(std::move(row));
  };

  if (config.engine == "mps") {
    MatrixProductState state = mps_state_from_config(config);
    const EvolutionRecord record =
        evolve_and_sample(state, model, config.t_max, config.sample_interval,
                          TrotterScheme{config.trotter_order, config.dt},
                          TruncationPolicy{config.max_rank, 1e-12}, cut);
    for (const auto& s : record.samples)
      push_row(s.t, s.purity, s.entropy, s.schmidt_rank, s.trunc_weight);
    return table;
  }

  // dense engine: exact propagation sampled on the same grid
  DenseEvolver evolver(model);
  Eigen::VectorXcd v = dense_state_from_config(config).amplitudes;
  const int n_blocks =
      config.t_max == 0.0
          ? 0
          : static_cast<int>(std::floor(config.t_max / config.sample_interval + 1e-9));
  double t_now = 0.0;
  for (int blk = 0; blk <= n_blocks; ++blk) {
    const double t = blk * config.sample_interval;
    if (blk > 0) {
      evolver.step(v, t - t_now);
      t_now = t;
    }
    const SchmidtSpectrum spec =
        reduced_schmidt_spectrum(DenseState(v, model.n_sites), cut);
    push_row(t, spec.purity(), spec.entropy(), spec.rank(), 0.0);
  }
  return table;
}

inline void run_simulate(const RunConfig& config) {
  write_text_file(config.output_path, simulation_table(config).to_string());
}

// --- bounds ----------------------------------------------------------------------

struct BoundsReport {
  BoundConstants constants;
  CsvTable curves;

  std::string text() const {
    std::string out = "mu = " + csv_number(constants.mu);
    out += "\nchi = " + csv_number(constants.chi);
    out += "\nt1 = " + csv_number(constants.t1);
    out += '\n';
    return out;
  }
};

inline BoundsReport bounds_report(const RunConfig& config, double grid_t_max, double grid_dt) {
  if (!(grid_dt > 0.0)) throw config_error("dt: bound grid spacing must be positive");
  if (grid_t_max < 0.0) throw config_error("t_max: bound grid end must be >= 0");
  const SpinLatticeModel model = model_from_config(config);
  const Cut cut = cut_from_config(config);
  const BoundConstants k = bound_constants_for(extract_cut_interaction(model, cut));

  BoundsReport report{k, {}};
  report.curves.header = "t,bound_short,bound_rank,bound_long,bound_combined";
  const int n = static_cast<int>(std::floor(grid_t_max / grid_dt + 1e-9));
  for (int i = 0; i <= n; ++i) {
    const double t = i * grid_dt;
    std::string row = csv_number(t);
    row += ',' + csv_number(short_time_lower_bound(t, k.mu));
    row += ',' + csv_number(rank_refined_lower_bound(t, k.mu, std::max<std::int64_t>(k.l_max, 2)));
    row += ',' + csv_number(long_time_lower_bound(t, k.chi));
    row += ',' + csv_number(combined_lower_bound(t, k));
    report.curves.rows.push_back(std::move(row));
  }
  return report;
}

// --- scaling ---------------------------------------------------------------------

struct ScalingRow {
  int n_rungs = 0;
  double deficit = 0.0;  // 1 - purity at the probe time
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  double slope = 0.0;

  CsvTable table() const {
    CsvTable t;
    t.header = "n,one_minus_purity";
    for (const auto& r : rows)
      t.rows.push_back(csv_number(r.n_rungs) + ',' + csv_number(r.deficit));
    return t;
  }
};

inline void validate_scaling_config(const ScalingConfig& c) {
  const bool fixed_p = c.state_family.rfind("w:", 0) == 0;
  if (c.state_family != "product" && c.state_family != "ghz-x" && c.state_family != "w" &&
      !fixed_p)
    throw config_error("state_family: expected product, ghz-x, w, or w:p, got '" +
                       c.state_family + "'");
  if (c.n_min < 1) throw config_error("n_min: must be >= 1");
  if (c.n_max < c.n_min) throw config_error("n_max: must be >= n_min");
  if (c.n_max > 8) throw config_error("n_max: dense engine supports at most 8 rungs");
  if (!(c.t_probe > 0.0)) throw config_error("t_probe: must be positive");
}

inline ScalingResult run_scaling(const ScalingConfig& config) {
  validate_scaling_config(config);
  const int count = config.n_max - config.n_min + 1;
  std::vector<ScalingRow> rows(static_cast<std::size_t>(count));

  detail::parallel_indexed(count, [&](int idx) {
    const int n = config.n_min + idx;
    const SpinLatticeModel model = build_coupled_ising_chains(n, config.intra_coupling);
    DenseState state = dense_all_down(2 * n);
    if (config.state_family == "product") state = dense_product_updown(n);
    else if (config.state_family == "ghz-x") state = dense_ghz_x_ladder(n);
    else if (config.state_family == "w") state = dense_w_ladder(n, n / 2);
    else state = dense_w_ladder(n, detail::to_int("state_family", config.state_family.substr(2)));
    const DenseState evolved = evolve_dense(state, model, config.t_probe);
    const SchmidtSpectrum spec = reduced_schmidt_spectrum(evolved, Cut::split_chains());
    rows[static_cast<std::size_t>(idx)] = {n, detail::purity_deficit(spec)};
  });

  ScalingResult result{std::move(rows), 0.0};
  std::vector<double> xs, ys;
  for (const auto& r : result.rows) {
    xs.push_back(static_cast<double>(r.n_rungs));
    ys.push_back(r.deficit);
  }
  if (xs.size() >= 2) result.slope = detail::loglog_slope(xs, ys);
  return result;
}

// --- verify ----------------------------------------------------------------------

// suite "all" runs every suite; oracle_sites empty = no oracle runs configured.
inline std::vector<SuiteReport> run_verify(const std::string& suite, std::uint64_t seed,
                                           const std::vector<int>& oracle_sites) {
  const std::vector<std::string> names =
      suite == "all" ? std::vector<std::string>{"spectra", "rate", "oracle", "bounds"}
                     : std::vector<std::string>{suite};
  std::vector<SuiteReport> reports(names.size());
  detail::parallel_indexed(static_cast<int>(names.size()), [&](int i) {
    const std::string& name = names[static_cast<std::size_t>(i)];
    if (name == "spectra") reports[static_cast<std::size_t>(i)] = run_spectra_suite(seed);
    else if (name == "rate") reports[static_cast<std::size_t>(i)] = run_rate_suite(seed);
    else if (name == "oracle") reports[static_cast<std::size_t>(i)] = run_oracle_suite(seed, oracle_sites);
    else if (name == "bounds") reports[static_cast<std::size_t>(i)] = run_bounds_suite(seed);
    else throw config_error("suite: expected spectra, rate, oracle, bounds, or all, got '" +
                            name + "'");
  });
  return reports;
}

inline std::string verify_report_text(const std::vector<SuiteReport>& reports) {
  std::string out;
  for (const auto& rep : reports)
    for (const auto& p : rep.properties) {
      out += rep.suite + '.' + p.name + ' ' + (p.passed ? "PASS" : "FAIL") + ' ' + p.detail;
      out.push_back('\n');
    }
  return out;
}

// --- plot scripts -------------------------------------------------------------------

inline std::string simulation_gnuplot_script(const std::string& csv_path) {
  std::string s;
  s += "set datafile separator ','\n";
  s += "set key autotitle columnhead\n";
  s += "set xlabel 't'\n";
  s += "set ylabel 'purity'\n";
  s += "set logscale y\n";
  s += "plot '" + csv_path + "' using 1:2 with lines lw 2, \\\n";
  s += "     '' using 1:5 with lines dt 2, \\\n";
  s += "     '' using 1:6 with lines dt 3, \\\n";
  s += "     '' using 1:7 with lines dt 4, \\\n";
  s += "     '' using 1:8 with lines lw 1\n";
  return s;
}

inline std::string scaling_gnuplot_script(const std::string& csv_path) {
  std::string s;
  s += "set datafile separator ','\n";
  s += "set key autotitle columnhead\n";
  s += "set xlabel 'N'\n";
  s += "set ylabel '1 - purity'\n";
  s += "set logscale xy\n";
  s += "plot '" + csv_path + "' using 1:2 with linespoints\n";
  return s;
}

}  // namespace puritydyn
