// Command-line front end: simulate / bounds / scaling / verify subcommands
// over the header-only library. Exit codes: 0 success, 1 property failure,
// 2 usage or configuration error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "puritydyn/cli.hpp"

namespace pd = puritydyn;

namespace {

// The config file must be loaded before CLI11 assigns parsed flags, so the
// flags-override-file precedence falls out of binding order. Scan argv by
// hand for the subcommand name and --config value.
std::string prescan_subcommand(int argc, char** argv) {
  for (int i = 1; i < argc; ++i)
    if (argv[i][0] != '-') return argv[i];
  return {};
}

std::string prescan_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return {};
}

std::vector<int> parse_site_list(const std::string& csv) {
  std::vector<int> out;
  if (csv.empty() || csv == "none") return out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string tok = csv.substr(start, comma == std::string::npos ? comma : comma - start);
    out.push_back(pd::detail::to_int("oracle-sites", tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void add_model_options(CLI::App* cmd, pd::RunConfig& cfg) {
  cmd->add_option("--model", cfg.model, "xx | xxz | coupled-ising");
  cmd->add_option("--n-sites", cfg.n_sites, "chain length");
  cmd->add_option("--n-rungs", cfg.n_rungs, "ladder rung count");
  cmd->add_option("--delta", cfg.delta, "xxz anisotropy");
  cmd->add_option("--intra-coupling", cfg.intra_coupling, "ladder in-chain x-x weight");
  cmd->add_option("--cut", cfg.cut, "bond index | half | chain-split");
}

int run_cli(int argc, char** argv) {
  CLI::App app{"bipartite entanglement growth: simulation, analytic bounds, scaling sweeps"};
  app.require_subcommand(1);

  pd::RunConfig run_cfg;
  pd::ScalingConfig scaling_cfg;

  const std::string sub = prescan_subcommand(argc, argv);
  const std::string config_path = prescan_config_path(argc, argv);
  if (!config_path.empty()) {
    if (sub == "simulate" || sub == "bounds") pd::load_config_file(run_cfg, config_path);
    else if (sub == "scaling") pd::load_config_file(scaling_cfg, config_path);
    else throw pd::config_error("--config applies to the simulate, bounds, and scaling commands");
  }

  std::string config_dummy, gnuplot_path, bounds_out, suite = "all", oracle_sites = "14";

  CLI::App* simulate = app.add_subcommand("simulate", "evolve a configured system, write CSV");
  add_model_options(simulate, run_cfg);
  simulate->add_option("--initial-state", run_cfg.initial_state,
                       "neel | all-down | product-updown | ghz-x | w:p");
  simulate->add_option("--dt", run_cfg.dt, "Trotter step");
  simulate->add_option("--t-max", run_cfg.t_max, "evolution end time");
  simulate->add_option("--sample-interval", run_cfg.sample_interval, "time between CSV rows");
  simulate->add_option("--max-rank", run_cfg.max_rank, "retained Schmidt rank cap");
  simulate->add_option("--trotter-order", run_cfg.trotter_order, "2 or 4");
  simulate->add_option("--engine", run_cfg.engine, "mps | dense");
  simulate->add_option("--out", run_cfg.output_path, "CSV output path");
  simulate->add_option("--seed", run_cfg.seed, "run seed recorded in the config");
  simulate->add_option("--config", config_dummy, "key=value config file");
  simulate->add_option("--gnuplot", gnuplot_path, "also write a gnuplot script here");

  CLI::App* bounds = app.add_subcommand("bounds", "print cut constants, write bound curves");
  add_model_options(bounds, run_cfg);
  bounds->add_option("--t-max", run_cfg.t_max, "curve grid end time");
  bounds->add_option("--dt", run_cfg.dt, "curve grid spacing");
  bounds->add_option("--out", bounds_out, "optional CSV path for the curves");
  bounds->add_option("--config", config_dummy, "key=value config file");

  CLI::App* scaling = app.add_subcommand("scaling", "rung sweep of 1 - purity at a probe time");
  scaling->add_option("--family", scaling_cfg.state_family, "product | ghz-x | w | w:p");
  scaling->add_option("--n-min", scaling_cfg.n_min, "smallest rung count");
  scaling->add_option("--n-max", scaling_cfg.n_max, "largest rung count (<= 8)");
  scaling->add_option("--t-probe", scaling_cfg.t_probe, "probe time");
  scaling->add_option("--intra-coupling", scaling_cfg.intra_coupling, "ladder in-chain x-x weight");
  scaling->add_option("--out", scaling_cfg.output_path, "CSV output path");
  scaling->add_option("--seed", scaling_cfg.seed, "run seed recorded in the config");
  scaling->add_option("--config", config_dummy, "key=value config file");
  scaling->add_option("--gnuplot", gnuplot_path, "also write a gnuplot script here");

  CLI::App* verify = app.add_subcommand("verify", "run property suites, one line per property");
  verify->add_option("--suite", suite, "spectra | rate | oracle | bounds | all");
  verify->add_option("--seed", run_cfg.seed, "suite random seed");
  verify->add_option("--oracle-sites", oracle_sites,
                     "comma-separated chain lengths for the engine cross-check; 'none' disables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or diagnostic
    return code == 0 ? 0 : 2;
  }

  if (simulate->parsed()) {
    pd::run_simulate(run_cfg);
    std::cout << "wrote " << run_cfg.output_path << "\n";
    if (!gnuplot_path.empty())
      pd::write_text_file(gnuplot_path, pd::simulation_gnuplot_script(run_cfg.output_path));
    return 0;
  }
  if (bounds->parsed()) {
    const pd::BoundsReport report = pd::bounds_report(run_cfg, run_cfg.t_max, run_cfg.dt);
    std::cout << report.text();
    if (!bounds_out.empty()) pd::write_text_file(bounds_out, report.curves.to_string());
    return 0;
  }
  if (scaling->parsed()) {
    const pd::ScalingResult result = pd::run_scaling(scaling_cfg);
    pd::write_text_file(scaling_cfg.output_path, result.table().to_string());
    std::cout << "slope = " << pd::csv_number(result.slope) << "\n";
    if (!gnuplot_path.empty())
      pd::write_text_file(gnuplot_path, pd::scaling_gnuplot_script(scaling_cfg.output_path));
    return 0;
  }
  // verify
  const auto reports = pd::run_verify(suite, run_cfg.seed, parse_site_list(oracle_sites));
  std::cout << pd::verify_report_text(reports);
  for (const auto& r : reports)
    if (!r.all_passed()) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
