#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "allspeed/allspeed.hpp"
#include "allspeed/oracles/exact_riemann.hpp"
#include "allspeed/oracles/nullspace.hpp"

namespace {

using namespace allspeed;

struct RunFlags {
  std::string config;
  std::optional<std::string> problem, scheme, out;
  std::optional<int> nx, ny;
  std::optional<double> eps, cfl, t_end, dump_every, diag_every;
};

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

template <class T>
void override_entry(ConfigEntries& e, const std::string& key, const std::optional<T>& v) {
  if (!v) return;
  if constexpr (std::is_same_v<T, std::string>)
    e[key] = {*v, 0};
  else if constexpr (std::is_integral_v<T>)
    e[key] = {std::to_string(*v), 0};
  else
    e[key] = {format_number(*v), 0};
}

int cmd_run(const RunFlags& fl) {
  ConfigEntries entries;
  if (!fl.config.empty()) entries = parse_config_entries(read_file(fl.config));
  override_entry(entries, "problem", fl.problem);
  override_entry(entries, "scheme", fl.scheme);
  override_entry(entries, "out", fl.out);
  override_entry(entries, "nx", fl.nx);
  override_entry(entries, "ny", fl.ny);
  override_entry(entries, "eps", fl.eps);
  override_entry(entries, "cfl", fl.cfl);
  override_entry(entries, "t_end", fl.t_end);
  override_entry(entries, "dump_every", fl.dump_every);
  override_entry(entries, "diag_every", fl.diag_every);
  const RunConfig cfg = resolve_config(entries);

  const Field initial = make_problem(cfg.problem);
  std::printf("%s on %dx%d, scheme %s, eps %g, cfl %g, t_end %g -> %s\n", cfg.problem.name.c_str(),
              initial.spec.nx, initial.spec.ny, to_string(cfg.scheme.scheme).c_str(), cfg.problem.eps,
              cfg.scheme.cfl, cfg.scheme.t_end, cfg.out_dir.c_str());
  const RunRecord rec = run(cfg.scheme, initial, cfg.out_dir);
  if (cfg.problem.name == "radial-sod") {
    const GridSpec& g = rec.final_field.spec;
    const double xc = g.x0 + 0.5 * g.nx * g.dx, yc = g.y0 + 0.5 * g.ny * g.dy;
    write_csv((std::filesystem::path(cfg.out_dir) / "radial.csv").string(),
              radial_table(radial_scatter(rec.final_field, xc, yc, cfg.scheme.gamma)));
  }
  const DiagnosticsRecord& first = rec.diagnostics.front();
  const DiagnosticsRecord& last = rec.diagnostics.back();
  std::printf("steps %ld, dt halvings %ld, wall %.2f s, t = %.17g\n", rec.steps, rec.dt_halvings,
              rec.wall_seconds, last.time);
  std::printf("max Mach %.6g -> %.6g\n", first.max_mach, last.max_mach);
  if (rec.failed) {
    std::fprintf(stderr, "run failed: %s\n", rec.failure.c_str());
    return 2;
  }
  return 0;
}

int cmd_stability(double cfl, int n, const std::string& out) {
  const AcousticParams prm{1.0, 1.0, 1.0, 1.0, BoundaryKind::periodic, BoundaryKind::periodic};
  const auto probes = stability_scan(prm, cfl, n);
  double rmax = 0.0;
  const AmplificationProbe* worst = &probes.front();
  for (const auto& p : probes)
    if (p.spectral_radius > rmax) {
      rmax = p.spectral_radius;
      worst = &p;
    }
  write_csv(out, stability_table(probes));
  std::printf("cfl %g, %dx%d beta grid: max spectral radius %.17g at (%.6g, %.6g) -> %s\n", cfl, n, n,
              rmax, worst->beta_x, worst->beta_y, out.c_str());
  return 0;
}

int cmd_toy(const ToyRun& r, bool implicit, const std::string& out) {
  if (!implicit && !(r.tau > 0.0 && r.tau < 2.0))
    std::fprintf(stderr, "warning: explicit iteration is unstable for tau = %g\n", r.tau);
  const std::vector<double> q = implicit ? toy_implicit(r) : toy_explicit(r);
  write_csv(out, toy_table(q, r.dt()));
  std::printf("%s, tau %g, eps %g, dt %g -> %s\n", implicit ? "implicit" : "explicit", r.tau, r.eps,
              r.dt(), out.c_str());
  try {
    std::printf("half-life %.10g", half_life(q, r.a, r.dt()));
    if (!implicit) std::printf(" (formula %.10g)", toy_half_life_formula(r.eps, r.tau));
    std::printf("\n");
  } catch (const std::invalid_argument& e) {
    std::printf("half-life: %s\n", e.what());
  }
  return 0;
}

int cmd_nullspace(int nx, int ny, std::uint64_t seed, const std::string& out) {
  const auto s = oracles::divergence_nullspace_sample(nx, ny, 1.0 / nx, 1.0 / ny, seed);
  CsvTable t{{"i", "j", "u", "v"}, {}};
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) t.rows.push_back({double(i), double(j), s.u(i, j), s.v(i, j)});
  write_csv(out, t);
  std::printf("%dx%d periodic grid: null space dimension %d, divergence residual %.3g -> %s\n", nx, ny,
              s.dimension, s.residual, out.c_str());
  return 0;
}

PrimitiveState parse_state(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  if (v.size() != 3) throw std::invalid_argument("state must be 'rho,u,p', got '" + text + "'");
  return {v[0], v[1], 0.0, v[2]};
}

int cmd_riemann(const std::string& left, const std::string& right, double t, int n,
                const std::string& out, double gamma) {
  const PrimitiveState wL = parse_state(left), wR = parse_state(right);
  const oracles::RiemannSolution s = oracles::exact_riemann_star(wL, wR, gamma);
  std::printf("p* = %.12g, u* = %.12g, rho*L = %.12g, rho*R = %.12g\n", s.p_star, s.u_star,
              s.rho_star_L, s.rho_star_R);
  if (out.empty()) return 0;
  CsvTable tab{{"x", "rho", "u", "p"}, {}};
  for (int k = 0; k < n; ++k) {
    const double x = (k + 0.5) / n;
    const PrimitiveState w = oracles::exact_riemann_1d(wL, wR, gamma, (x - 0.5) / t);
    tab.rows.push_back({x, w.rho, w.u, w.p});
  }
  write_csv(out, tab);
  std::printf("sampled %d cells on [0, 1] at t = %g -> %s\n", n, t, out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"All-speed finite volume schemes for the Euler equations"};
  app.require_subcommand(1);

  RunFlags rf;
  auto* run_cmd = app.add_subcommand("run", "Run a problem with one scheme");
  run_cmd->add_option("--config", rf.config, "Config file");
  run_cmd->add_option("--problem", rf.problem, "Problem name");
  run_cmd->add_option("--scheme", rf.scheme, "Scheme name");
  run_cmd->add_option("--nx", rf.nx, "Cells in x");
  run_cmd->add_option("--ny", rf.ny, "Cells in y");
  run_cmd->add_option("--eps", rf.eps, "Mach scaling parameter");
  run_cmd->add_option("--cfl", rf.cfl, "CFL number");
  run_cmd->add_option("--t-end", rf.t_end, "Final time");
  run_cmd->add_option("--out", rf.out, "Output directory");
  run_cmd->add_option("--dump-every", rf.dump_every, "Field dump interval");
  run_cmd->add_option("--diag-every", rf.diag_every, "Diagnostics interval");

  double scan_cfl = 1.0;
  int scan_n = 64;
  std::string scan_out = "stability.csv";
  auto* scan_cmd = app.add_subcommand("stability-scan", "Spectral radius over a beta grid");
  scan_cmd->add_option("--cfl", scan_cfl, "CFL number")->capture_default_str();
  scan_cmd->add_option("--n", scan_n, "Grid points per beta axis")->capture_default_str()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--out", scan_out, "CSV output")->capture_default_str();

  ToyRun toy;
  bool toy_implicit_flag = false;
  std::string toy_out = "toy.csv";
  auto* toy_cmd = app.add_subcommand("toy", "Scalar relaxation model");
  toy_cmd->add_option("--tau", toy.tau, "dt / eps")->capture_default_str()->check(CLI::PositiveNumber);
  toy_cmd->add_option("--eps", toy.eps, "eps")->capture_default_str()->check(CLI::PositiveNumber);
  toy_cmd->add_option("--q0", toy.q0, "Initial value")->capture_default_str();
  toy_cmd->add_option("--a", toy.a, "Attractor")->capture_default_str();
  toy_cmd->add_option("--n", toy.n, "Steps")->capture_default_str()->check(CLI::PositiveNumber);
  toy_cmd->add_flag("--implicit", toy_implicit_flag, "Implicit iteration");
  toy_cmd->add_option("--out", toy_out, "CSV output")->capture_default_str();

  int ns_nx = 12, ns_ny = 12;
  std::uint64_t ns_seed = 1;
  std::string ns_out = "nullspace.csv";
  auto* ns_cmd = app.add_subcommand("sample-nullspace", "Random discretely divergence-free field");
  ns_cmd->add_option("--nx", ns_nx, "Cells in x")->capture_default_str()->check(CLI::Range(3, 16));
  ns_cmd->add_option("--ny", ns_ny, "Cells in y")->capture_default_str()->check(CLI::Range(3, 16));
  ns_cmd->add_option("--seed", ns_seed, "Random seed")->capture_default_str();
  ns_cmd->add_option("--out", ns_out, "CSV output")->capture_default_str();

  std::string rl = "1,0,1", rr = "0.125,0,0.1", r_out;
  double r_t = 0.2, r_gamma = kDefaultGamma;
  int r_n = 400;
  auto* r_cmd = app.add_subcommand("riemann", "Exact Riemann solution");
  r_cmd->add_option("--left", rl, "Left state rho,u,p")->capture_default_str();
  r_cmd->add_option("--right", rr, "Right state rho,u,p")->capture_default_str();
  r_cmd->add_option("--t", r_t, "Sample time")->capture_default_str()->check(CLI::PositiveNumber);
  r_cmd->add_option("--n", r_n, "Sample cells")->capture_default_str()->check(CLI::PositiveNumber);
  r_cmd->add_option("--gamma", r_gamma, "Ratio of specific heats")->capture_default_str();
  r_cmd->add_option("--out", r_out, "CSV output of the sampled solution");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return cmd_run(rf);
    if (*scan_cmd) return cmd_stability(scan_cfl, scan_n, scan_out);
    if (*toy_cmd) return cmd_toy(toy, toy_implicit_flag, toy_out);
    if (*ns_cmd) return cmd_nullspace(ns_nx, ns_ny, ns_seed, ns_out);
    if (*r_cmd) return cmd_riemann(rl, rr, r_t, r_n, r_out, r_gamma);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
