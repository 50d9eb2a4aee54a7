#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "allspeed/grid.hpp"

namespace allspeed {

/// Named problem with the Mach-control parameter and grid size.
struct ProblemSpec {
  std::string name = "gresho";
  double eps = 1e-2;
  int nx = 50;
  int ny = 50;
  double gamma = kDefaultGamma;
};

/// Background pressure that makes the vortex peak Mach number equal eps.
inline double gresho_background_pressure(double eps, double gamma = kDefaultGamma) {
  return 1.0 / (gamma * eps * eps) - 0.5;
}

/// Angular velocity profile of the vortex.
inline double gresho_vphi(double r) {
  if (r < 0.2) return 5.0 * r;
  if (r < 0.4) return 2.0 - 5.0 * r;
  return 0.0;
}

inline double gresho_pressure(double r, double p0) {
  if (r < 0.2) return p0 + 12.5 * r * r;
  if (r < 0.4) return p0 + 4.0 * std::log(5.0 * r) + 4.0 - 20.0 * r + 12.5 * r * r;
  return p0 + 4.0 * std::log(2.0) - 2.0;
}

/// Primitive vortex state at (x, y) for a vortex centred at (xc, yc).
inline PrimitiveState gresho_state(double x, double y, double xc, double yc, double p0) {
  const double dx = x - xc, dy = y - yc;
  const double r = std::hypot(dx, dy);
  const double vphi = gresho_vphi(r);
  const double u = r > 0.0 ? -vphi * dy / r : 0.0;
  const double v = r > 0.0 ? vphi * dx / r : 0.0;
  return {1.0, u, v, gresho_pressure(r, p0)};
}

namespace detail {

template <class Fn>
Field sample_cells(const GridSpec& g, double gamma, Fn&& prim_at) {
  Field f(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) f(i, j) = prim_to_cons(prim_at(g.xc(i), g.yc(j)), gamma);
  fill_ghosts(f);
  return f;
}

}  // namespace detail

/// Gresho vortex on the periodic unit square, centred at (0.5, 0.5).
inline Field gresho(int nx, int ny, double eps, double gamma = kDefaultGamma) {
  const GridSpec g = GridSpec::uniform(nx, ny, 1.0, 1.0);
  const double p0 = gresho_background_pressure(eps, gamma);
  return detail::sample_cells(g, gamma,
                              [&](double x, double y) { return gresho_state(x, y, 0.5, 0.5, p0); });
}

struct SoundWave {
  double amplitude = 300.0;
  double x_peak = 0.2;
  double width = 0.02;
  double rho_inf = 1.0;
  double c_inf = 0.0;

  [[nodiscard]] double dp(double x) const {
    const double s = (x - x_peak) / width;
    return amplitude * std::exp(-s * s);
  }
};

/// Right-moving acoustic pulse matched to the vortex far field.
inline SoundWave gresho_sound_wave(double eps, double gamma = kDefaultGamma) {
  SoundWave w;
  w.c_inf = std::sqrt(gamma * gresho_pressure(1.0, gresho_background_pressure(eps, gamma)) / w.rho_inf);
  return w;
}

/**
 * @brief Vortex at (1, 0.5) on [0, 2]^2 with zero-gradient boundaries plus a
 * right-moving Gaussian pressure pulse; the pulse is added in primitive
 * variables (dp, dp / c^2, dp / (rho c)).
 */
inline Field gresho_with_sound_wave(int nx = 100, int ny = 100, double eps = 1e-2,
                                    double gamma = kDefaultGamma) {
  const GridSpec g = GridSpec::uniform(nx, ny, 2.0, 2.0, 0.0, 0.0, BoundaryKind::zero_gradient,
                                       BoundaryKind::zero_gradient);
  const double p0 = gresho_background_pressure(eps, gamma);
  const SoundWave wave = gresho_sound_wave(eps, gamma);
  return detail::sample_cells(g, gamma, [&](double x, double y) {
    PrimitiveState s = gresho_state(x, y, 1.0, 0.5, p0);
    const double dp = wave.dp(x);
    s.p += dp;
    s.rho += dp / (wave.c_inf * wave.c_inf);
    s.u += dp / (wave.rho_inf * wave.c_inf);
    return s;
  });
}

inline constexpr PrimitiveState kSodLeft{1.0, 0.0, 0.0, 1.0};
inline constexpr PrimitiveState kSodRight{0.125, 0.0, 0.0, 0.1};

/// Cylindrical Sod problem on [0, 1]^2: high state inside r < 0.3 around (0.5, 0.5).
inline Field radial_sod(int nx, int ny, double gamma = kDefaultGamma) {
  const GridSpec g = GridSpec::uniform(nx, ny, 1.0, 1.0, 0.0, 0.0, BoundaryKind::zero_gradient,
                                       BoundaryKind::zero_gradient);
  return detail::sample_cells(g, gamma, [](double x, double y) {
    return std::hypot(x - 0.5, y - 0.5) < 0.3 ? kSodLeft : kSodRight;
  });
}

/**
 * @brief Shear layer on the periodic [0, 2] x [0, 1]: the strip 0.25 <= y <= 0.75
 * moves left at 0.1 with density 1.01, the rest moves right at 0.1. Pressure
 * 1/gamma puts the sound speed at about 1.
 */
inline Field kelvin_helmholtz(int nx, int ny, double gamma = kDefaultGamma) {
  const GridSpec g = GridSpec::uniform(nx, ny, 2.0, 1.0);
  return detail::sample_cells(g, gamma, [gamma](double x, double y) {
    const bool strip = y >= 0.25 && y <= 0.75;
    const double v = 1e-3 * std::sin(2.0 * std::numbers::pi * x / 0.25);
    return PrimitiveState{strip ? 1.01 : 1.0, strip ? -0.1 : 0.1, v, 1.0 / gamma};
  });
}

/// Sod shock tube along x on [0, 1], three y-invariant rows, jump at x = 0.5.
inline Field sod_1d(int n_cells, double gamma = kDefaultGamma) {
  GridSpec g{n_cells, 3, 1.0 / n_cells, 1.0 / n_cells, 0.0, 0.0, BoundaryKind::zero_gradient,
             BoundaryKind::periodic};
  g.validate();
  return detail::sample_cells(g, gamma,
                              [](double x, double) { return x < 0.5 ? kSodLeft : kSodRight; });
}

inline const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names{"gresho", "gresho-sound-wave", "radial-sod",
                                              "kelvin-helmholtz", "sod-1d"};
  return names;
}

/// Initial field by name; sod-1d uses nx only.
inline Field make_problem(const ProblemSpec& p) {
  if (p.name == "gresho") return gresho(p.nx, p.ny, p.eps, p.gamma);
  if (p.name == "gresho-sound-wave") return gresho_with_sound_wave(p.nx, p.ny, p.eps, p.gamma);
  if (p.name == "radial-sod") return radial_sod(p.nx, p.ny, p.gamma);
  if (p.name == "kelvin-helmholtz") return kelvin_helmholtz(p.nx, p.ny, p.gamma);
  if (p.name == "sod-1d") return sod_1d(p.nx, p.gamma);
  std::string known;
  for (const auto& n : problem_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown problem '" + p.name + "' (known: " + known + ")");
}

}  // namespace allspeed
