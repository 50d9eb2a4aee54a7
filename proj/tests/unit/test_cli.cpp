#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "support.hpp"

using namespace allspeed;

namespace {

namespace fs = std::filesystem;

struct Result {
  int status;
  std::string out;
};

Result cli(const std::string& args) {
  const fs::path log = fs::temp_directory_path() / "allspeed_cli_log.txt";
  const std::string cmd = std::string(ALLSPEED_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  std::ifstream is(log);
  std::stringstream ss;
  ss << is.rdbuf();
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, ss.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("allspeed_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

CsvTable csv_at(const fs::path& p) {
  std::ifstream is(p);
  return read_csv(is);
}

}  // namespace

TEST(Cli, NeedsSubcommand) {
  EXPECT_NE(cli("").status, 0);
  EXPECT_NE(cli("frobnicate").status, 0);
  EXPECT_EQ(cli("--help").status, 0);
}

TEST(Cli, RunWritesOutputs) {
  const fs::path dir = scratch("run");
  const Result r = cli("run --problem gresho --scheme lp-multid --nx 12 --ny 12 --eps 0.1 --t-end 0.01 --out " +
                       dir.string());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("max Mach"), std::string::npos);
  const CsvTable d = csv_at(dir / "diagnostics.csv");
  EXPECT_EQ(d.columns.front(), "time");
  EXPECT_EQ(d.rows.back()[0], 0.01);
  const Field last = read_dump((dir / "dump_0001.txt").string());
  EXPECT_EQ(last.spec.nx, 12);
  EXPECT_EQ(last.time, 0.01);
}

TEST(Cli, RunFromConfigWithOverride) {
  const fs::path dir = scratch("cfg");
  const fs::path cfg = dir / "x.cfg";
  std::ofstream(cfg) << "[run]\nproblem = radial-sod\nscheme = relax-multid\nnx = 16\nny = 16\nt_end = 0.02\n";
  const Result r = cli("run --config " + cfg.string() + " --nx 20 --out " + (dir / "o").string());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("20x16"), std::string::npos) << r.out;
  const CsvTable radial = csv_at(dir / "o" / "radial.csv");
  EXPECT_EQ(radial.columns, (std::vector<std::string>{"r", "rho", "vrad", "p"}));
  EXPECT_EQ(radial.rows.size(), 320u);
}

TEST(Cli, RunReportsConfigErrors) {
  const Result r = cli("run --problem gresho --scheme bogus --nx 10 --ny 10 --t-end 1");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("unknown scheme 'bogus'"), std::string::npos) << r.out;
  const Result m = cli("run --problem gresho");
  EXPECT_EQ(m.status, 1);
  EXPECT_NE(m.out.find("missing required keys"), std::string::npos) << m.out;
  EXPECT_EQ(cli("run --config /nonexistent.cfg").status, 1);
}

TEST(Cli, StabilityScan) {
  const fs::path dir = scratch("scan");
  const Result r = cli("stability-scan --cfl 1 --n 9 --out " + (dir / "s.csv").string());
  ASSERT_EQ(r.status, 0) << r.out;
  const CsvTable t = csv_at(dir / "s.csv");
  EXPECT_EQ(t.columns, (std::vector<std::string>{"beta_x", "beta_y", "spectral_radius"}));
  EXPECT_EQ(t.rows.size(), 81u);
  for (const auto& row : t.rows) EXPECT_LE(row[2], 1.0 + 1e-12);
}

TEST(Cli, Toy) {
  const fs::path dir = scratch("toy");
  const Result r = cli("toy --tau 0.5 --eps 0.01 --n 20 --out " + (dir / "t.csv").string());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("half-life"), std::string::npos);
  const CsvTable t = csv_at(dir / "t.csv");
  EXPECT_EQ(t.columns, (std::vector<std::string>{"n", "t", "q"}));
  EXPECT_EQ(t.rows.size(), 21u);
  EXPECT_EQ(t.rows[1][2], 0.5);
  const Result w = cli("toy --tau 2.5 --n 5 --out " + (dir / "u.csv").string());
  EXPECT_EQ(w.status, 0);
  EXPECT_NE(w.out.find("unstable"), std::string::npos);
  EXPECT_NE(cli("toy --tau -1").status, 0);
}

TEST(Cli, SampleNullspace) {
  const fs::path dir = scratch("ns");
  const Result r = cli("sample-nullspace --nx 6 --ny 5 --seed 3 --out " + (dir / "n.csv").string());
  ASSERT_EQ(r.status, 0) << r.out;
  const CsvTable t = csv_at(dir / "n.csv");
  EXPECT_EQ(t.columns, (std::vector<std::string>{"i", "j", "u", "v"}));
  EXPECT_EQ(t.rows.size(), 30u);
  EXPECT_NE(cli("sample-nullspace --nx 40").status, 0);
}

TEST(Cli, Riemann) {
  const Result r = cli("riemann");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("p* = 0.30313"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("u* = 0.92745"), std::string::npos) << r.out;
  EXPECT_EQ(cli("riemann --left 1,2").status, 1);
}
