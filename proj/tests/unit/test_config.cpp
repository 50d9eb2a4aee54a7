#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace allspeed;

namespace {

int error_line(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string error_text(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

constexpr const char* kMinimal = "problem = gresho\nscheme = lp-multid\nnx = 20\nny = 20\nt_end = 1\n";

}  // namespace

TEST(Config, FullExample) {
  const RunConfig c = parse_config(R"(# vortex
[run]
problem = gresho
scheme = relax-split
nx = 40
ny = 30
eps = 1e-3   # low Mach
cfl = 0.45
gamma = 1.4
a_safety = 1.2
t_end = 0.5
[output]
out = results/x
dump_every = 0.1
diag_every = 0.01
[oracle]
seed = 42
)");
  EXPECT_EQ(c.problem.name, "gresho");
  EXPECT_EQ(c.scheme.scheme, Scheme::relax_split);
  EXPECT_EQ(c.problem.nx, 40);
  EXPECT_EQ(c.problem.ny, 30);
  EXPECT_EQ(c.problem.eps, 1e-3);
  EXPECT_EQ(c.scheme.eps_report, 1e-3);
  EXPECT_EQ(c.scheme.cfl, 0.45);
  EXPECT_EQ(c.scheme.a_safety, 1.2);
  EXPECT_EQ(c.scheme.t_end, 0.5);
  EXPECT_EQ(c.out_dir, "results/x");
  EXPECT_EQ(c.scheme.dump_every, 0.1);
  EXPECT_EQ(c.scheme.diag_every, 0.01);
  EXPECT_EQ(c.seed, 42u);
}

TEST(Config, Defaults) {
  const RunConfig c = parse_config(kMinimal);
  EXPECT_EQ(c.scheme.cfl, 0.9);
  EXPECT_EQ(c.problem.eps, 1e-2);
  EXPECT_EQ(c.scheme.gamma, kDefaultGamma);
  EXPECT_EQ(c.out_dir, "out");
}

TEST(Config, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("problem = gresho\nnx = abc\n"), 2);
  EXPECT_EQ(error_line("[run]\nout = x\n"), 2);
  EXPECT_EQ(error_line("[nope]\n"), 1);
  EXPECT_EQ(error_line("problem gresho\n"), 1);
  EXPECT_EQ(error_line("nx = 10\nnx = 12\n"), 2);
  EXPECT_EQ(error_line("colour = red\n"), 1);
  EXPECT_EQ(error_line("problem =\n"), 1);
  EXPECT_EQ(error_line("[run\n"), 1);
  EXPECT_EQ(error_line("nx = 2\n"), 1);
  EXPECT_EQ(error_line("eps = -1\n"), 1);
  EXPECT_EQ(error_line("cfl = 0\n"), 1);
  EXPECT_EQ(error_line("\n\nproblem = vortex\n"), 3);
}

TEST(Config, MessagesAreSpecific) {
  EXPECT_NE(error_text("scheme = bogus\n").find("valid: lp-split"), std::string::npos);
  EXPECT_NE(error_text("nx = 20\n").find("missing required keys: problem, scheme, ny, t_end"),
            std::string::npos);
  EXPECT_NE(error_text("[output]\nnx = 5\n").find("belongs in [run]"), std::string::npos);
  EXPECT_NE(error_text(std::string(kMinimal) + "gamma = 0.5\n").find("gamma"), std::string::npos);
}

TEST(Config, KeysBeforeSectionsAreAccepted) {
  const RunConfig c = parse_config(std::string(kMinimal) + "out = here\ndiag_every = 0.5\n");
  EXPECT_EQ(c.out_dir, "here");
}

TEST(Config, ShippedConfigsParse) {
  const std::filesystem::path dir = std::filesystem::path(ALLSPEED_SOURCE_DIR) / "configs";
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".cfg") continue;
    std::ifstream is(entry.path());
    std::stringstream ss;
    ss << is.rdbuf();
    EXPECT_NO_THROW((void)parse_config(ss.str())) << entry.path();
    const RunConfig c = parse_config(ss.str());
    EXPECT_NO_THROW((void)make_problem(c.problem)) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 4);
}
