#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "puritydyn/cli.hpp"

namespace fs = std::filesystem;
using Catch::Approx;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("pd_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

CliResult run_cli(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt", err = work_dir() / "stderr.txt";
  const std::string cmd =
      std::string(CLI_BIN) + " " + args + " > " + out.string() + " 2> " + err.string();
  const int raw = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<double> parse_row(const std::string& line) {
  std::vector<double> vals;
  std::istringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
  return vals;
}

}  // namespace

TEST_CASE("simulate writes the exact schema") {
  const fs::path csv = work_dir() / "still.csv";
  const auto r = run_cli("simulate --model xx --n-sites 6 --cut 3 --engine dense --t-max 0 "
                         "--sample-interval 0.1 --out " + csv.string());
  REQUIRE(r.code == 0);
  const auto lines = lines_of(slurp(csv));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "t,purity,entropy,schmidt_rank,bound_short,bound_rank,bound_long,bound_combined,"
        "trunc_weight");
  const auto row = parse_row(lines[1]);
  REQUIRE(row.size() == 9);
  CHECK(row[0] == 0.0);                       // t
  CHECK(row[1] == Approx(1.0).margin(1e-12)); // purity
  for (int c : {4, 5, 6, 7}) CHECK(row[static_cast<std::size_t>(c)] == 1.0);  // all bounds
}

TEST_CASE("simulate output is byte deterministic") {
  const fs::path a = work_dir() / "det_a.csv", b = work_dir() / "det_b.csv";
  const std::string common = "simulate --model xxz --n-sites 8 --delta 0.5 --cut 4 "
                             "--engine dense --t-max 0.5 --sample-interval 0.1 --out ";
  REQUIRE(run_cli(common + a.string()).code == 0);
  REQUIRE(run_cli(common + b.string()).code == 0);
  const std::string bytes = slurp(a);
  CHECK(bytes == slurp(b));
  CHECK((bytes.find("e-") != std::string::npos || bytes.find("0.") != std::string::npos));
  CHECK(bytes.find(',') != std::string::npos);
  CHECK(bytes.find(';') == std::string::npos);  // no locale separators
}

TEST_CASE("engines agree through the cli") {
  const fs::path dense_csv = work_dir() / "eng_dense.csv", mps_csv = work_dir() / "eng_mps.csv";
  const std::string shared =
      " --model xx --n-sites 10 --cut 5 --t-max 0.6 --sample-interval 0.2 --dt 0.01 "
      "--trotter-order 4 --max-rank 32 ";
  REQUIRE(run_cli("simulate" + shared + "--engine dense --out " + dense_csv.string()).code == 0);
  REQUIRE(run_cli("simulate" + shared + "--engine mps --out " + mps_csv.string()).code == 0);
  const auto dl = lines_of(slurp(dense_csv)), ml = lines_of(slurp(mps_csv));
  REQUIRE(dl.size() == ml.size());
  for (std::size_t i = 1; i < dl.size(); ++i) {
    const auto d = parse_row(dl[i]), m = parse_row(ml[i]);
    CHECK(d[0] == m[0]);
    CHECK(d[1] == Approx(m[1]).margin(1e-6));  // purity
    CHECK(d[2] == Approx(m[2]).margin(1e-6));  // entropy
  }
}

TEST_CASE("config file with flag overrides") {
  const fs::path cfg = work_dir() / "run.cfg";
  const fs::path csv_a = work_dir() / "cfg_a.csv", csv_b = work_dir() / "cfg_b.csv";
  {
    std::ofstream f(cfg);
    f << "# comment line\n"
      << "model = xx\n"
      << "n_sites = 6   # trailing comment\n"
      << "cut = 3\n"
      << "engine = dense\n"
      << "t_max = 0\n"
      << "sample_interval = 0.1\n"
      << "output_path = " << csv_a.string() << "\n";
  }
  REQUIRE(run_cli("simulate --config " + cfg.string()).code == 0);
  CHECK(lines_of(slurp(csv_a)).size() == 2);  // t_max 0: single row

  // flag overrides the file's t_max and output path
  REQUIRE(run_cli("simulate --config " + cfg.string() + " --t-max 0.3 --out " +
                  csv_b.string()).code == 0);
  CHECK(lines_of(slurp(csv_b)).size() == 5);  // header + 4 samples

  const auto bad = run_cli("simulate --config " + (work_dir() / "missing.cfg").string());
  CHECK(bad.code == 2);
  CHECK(!bad.err.empty());
}

TEST_CASE("bounds reports the cut constants") {
  const auto xx = run_cli("bounds --model xx --n-sites 8 --cut 4");
  REQUIRE(xx.code == 0);
  CHECK(xx.out.find("mu = 2\n") != std::string::npos);
  CHECK(xx.out.find("chi = 1.41421356237\n") != std::string::npos);
  CHECK(xx.out.find("t1 = 0.339836909454\n") != std::string::npos);

  const auto xxz = run_cli("bounds --model xxz --n-sites 8 --delta 0.5 --cut 4");
  REQUIRE(xxz.code == 0);
  CHECK(xxz.out.find("chi = 1.76776695297\n") != std::string::npos);

  const auto ladder = run_cli("bounds --model coupled-ising --n-rungs 5 --cut chain-split");
  REQUIRE(ladder.code == 0);
  CHECK(ladder.out.find("mu = 10\n") != std::string::npos);

  const fs::path curves = work_dir() / "curves.csv";
  const auto with_csv =
      run_cli("bounds --model xx --n-sites 8 --cut 4 --t-max 1 --dt 0.5 --out " + curves.string());
  REQUIRE(with_csv.code == 0);
  const auto lines = lines_of(slurp(curves));
  REQUIRE(lines.size() == 4);  // header + t = 0, 0.5, 1
  CHECK(lines[0] == "t,bound_short,bound_rank,bound_long,bound_combined");

  CHECK(run_cli("bounds --model xx --n-sites 8 --cut 8").code == 2);
}

TEST_CASE("scaling sweep emits rows and slope") {
  const fs::path csv = work_dir() / "scal.csv";
  const auto r = run_cli("scaling --family product --n-min 2 --n-max 5 --t-probe 0.001 --out " +
                         csv.string());
  REQUIRE(r.code == 0);
  REQUIRE(r.out.rfind("slope = ", 0) == 0);
  const double slope = std::stod(r.out.substr(8));
  CHECK(slope == Approx(1.0).margin(0.05));

  const auto lines = lines_of(slurp(csv));
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "n,one_minus_purity");
  CHECK(parse_row(lines[1])[0] == 2.0);

  CHECK(run_cli("scaling --family product --n-min 2 --n-max 9").code == 2);
  CHECK(run_cli("scaling --family nope --n-min 2 --n-max 4").code == 2);
}

TEST_CASE("verify emits one line per property") {
  const auto r = run_cli("verify --suite bounds");
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  CHECK(lines.size() >= 8);
  for (const auto& line : lines) {
    CHECK(line.rfind("bounds.", 0) == 0);
    CHECK(line.find(" PASS ") != std::string::npos);
  }

  const auto vacuous = run_cli("verify --suite oracle --oracle-sites none");
  CHECK(vacuous.code == 0);
  CHECK(vacuous.out.empty());

  CHECK(run_cli("verify --suite nonsense").code == 2);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("simulate --model unobtainium --n-sites 4 --cut 2").code == 2);
  CHECK(run_cli("simulate --model xx --cut 2").code == 2);              // n_sites missing
  CHECK(run_cli("simulate --model xx --n-sites 20 --cut 10 --engine dense").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("simulate --no-such-flag 3").code == 2);
  CHECK(run_cli("--help").code == 0);

  const fs::path cfg = work_dir() / "badkey.cfg";
  { std::ofstream f(cfg); f << "modle = xx\n"; }
  CHECK(run_cli("simulate --config " + cfg.string()).code == 2);
}

TEST_CASE("gnuplot script references the csv") {
  const fs::path csv = work_dir() / "plot.csv", gp = work_dir() / "plot.gp";
  const auto r = run_cli("simulate --model xx --n-sites 6 --cut 3 --engine dense --t-max 0.2 "
                         "--sample-interval 0.1 --out " + csv.string() + " --gnuplot " +
                         gp.string());
  REQUIRE(r.code == 0);
  const std::string script = slurp(gp);
  CHECK(script.find(csv.string()) != std::string::npos);
  CHECK(script.find("plot") != std::string::npos);
}
