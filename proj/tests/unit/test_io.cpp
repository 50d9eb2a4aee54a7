#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "support.hpp"

using namespace allspeed;

namespace {

std::vector<std::string> header_of(const CsvTable& t) { return t.columns; }

}  // namespace

TEST(Dump, RoundTripIsExact) {
  const GridSpec g = GridSpec::uniform(7, 5, 1.3, 0.7, -0.2, 0.1);
  Field f = fixtures::random_field(g, 99);
  f.time = 0.123456789012345678;
  std::stringstream ss;
  write_dump(ss, f);
  const Field r = read_dump(ss);
  EXPECT_EQ(r.spec, g);
  EXPECT_EQ(r.time, f.time);
  EXPECT_TRUE(r.data == f.data);
}

TEST(Dump, Layout) {
  const GridSpec g = GridSpec::uniform(3, 3, 3.0, 3.0);
  Field f(g);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) f(i, j) = {1.0 + i, 0.5 * j, 0.0, 4.0};
  std::stringstream ss;
  write_dump(ss, f);
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "3 3 1 1 0 0 0");
  std::getline(ss, line);
  EXPECT_EQ(line, "0 0 1 0 0 4");
  std::getline(ss, line);
  EXPECT_EQ(line, "1 0 2 0 0 4");
  for (int k = 0; k < 3; ++k) std::getline(ss, line);
  EXPECT_EQ(line, "1 1 2 0.5 0 4");
}

TEST(Dump, RejectsBadInput) {
  std::stringstream a("3 3 1 1 0");
  EXPECT_THROW((void)read_dump(a), std::runtime_error);
  std::stringstream b("3 3 1 1 0 0 0\n0 0 1 0 0 4\n");
  EXPECT_THROW((void)read_dump(b), std::runtime_error);
  std::stringstream c("3 3 1 1 0 0 0\n5 0 1 0 0 4\n");
  EXPECT_THROW((void)read_dump(c), std::runtime_error);
  EXPECT_THROW((void)read_dump("/nonexistent/dump.txt"), std::runtime_error);
}

TEST(Csv, RoundTrip) {
  const CsvTable t{{"a", "b"}, {{1.0, -2.5e-300}, {0.1, 3.0}}};
  std::stringstream ss;
  write_csv(ss, t);
  EXPECT_EQ(ss.str(), "a,b\n1,-2.5e-300\n0.10000000000000001,3\n");
  const CsvTable r = read_csv(ss);
  EXPECT_EQ(r.columns, t.columns);
  EXPECT_EQ(r.rows, t.rows);
  EXPECT_EQ(r.column("b"), 1u);
  EXPECT_THROW((void)r.column("c"), std::out_of_range);
}

TEST(Csv, RejectsBadInput) {
  std::stringstream a("x,y\n1,2,3\n");
  EXPECT_THROW((void)read_csv(a), std::runtime_error);
  std::stringstream b("x,y\n1,abc\n");
  EXPECT_THROW((void)read_csv(b), std::runtime_error);
  std::stringstream c("");
  EXPECT_THROW((void)read_csv(c), std::runtime_error);
}

TEST(Csv, Schemas) {
  EXPECT_EQ(header_of(diagnostics_table({})),
            (std::vector<std::string>{"time", "l1_gradp_x", "l1_gradp_y", "l1_div_multid",
                                      "l1_div_central", "l1_d2u", "mass", "mom_x", "mom_y", "energy",
                                      "max_mach"}));
  EXPECT_EQ(header_of(radial_table({})), (std::vector<std::string>{"r", "rho", "vrad", "p"}));
  EXPECT_EQ(header_of(stability_table({})),
            (std::vector<std::string>{"beta_x", "beta_y", "spectral_radius"}));
  EXPECT_EQ(header_of(toy_table({}, 1.0)), (std::vector<std::string>{"n", "t", "q"}));
}

TEST(Csv, TablesCarryTheirRecords) {
  const Field f = gresho(8, 8, 0.1);
  const DiagnosticsRecord d = measure(f, 0.1);
  const CsvTable t = diagnostics_table({d, d});
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1][t.column("max_mach")], d.max_mach);
  EXPECT_EQ(t.rows[0][t.column("energy")], d.totals.e);
  const CsvTable toy = toy_table({1.0, 0.5}, 0.25);
  EXPECT_EQ(toy.rows[1], (std::vector<double>{1.0, 0.25, 0.5}));
  const CsvTable st = stability_table(stability_scan({}, 1.0, 3));
  EXPECT_EQ(st.rows.size(), 9u);
  EXPECT_EQ(st.rows[4][0], 0.0);
}

TEST(Files, WriteAndReadBack) {
  const auto dir = std::filesystem::temp_directory_path() / "allspeed_io_test";
  std::filesystem::create_directories(dir);
  const std::string csv = (dir / "t.csv").string(), dump = (dir / "d.txt").string();
  write_csv(csv, toy_table({1.0, 0.75, 0.5}, 0.1));
  std::ifstream is(csv);
  EXPECT_EQ(read_csv(is).rows.size(), 3u);
  const Field f = gresho(6, 6, 0.5);
  write_dump(dump, f);
  EXPECT_TRUE(read_dump(dump).data == f.data);
  std::filesystem::remove_all(dir);
}
