#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

#include "allspeed/allspeed.hpp"

namespace allspeed::fixtures {

/// Smooth-ish random primitive field: rho in [0.5, 1.5], |u|, |v| <= 0.5, p in [0.5, 1.5].
inline Field random_field(const GridSpec& g, std::uint64_t seed, double gamma = kDefaultGamma) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Field f(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      f(i, j) = prim_to_cons({0.5 + unit(rng), unit(rng) - 0.5, unit(rng) - 0.5, 0.5 + unit(rng)}, gamma);
  fill_ghosts(f);
  return f;
}

/// Random data that depends on x only.
inline Field random_y_invariant_field(const GridSpec& g, std::uint64_t seed,
                                      double gamma = kDefaultGamma) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Field f(g);
  for (int i = 0; i < g.nx; ++i) {
    const ConservedState q =
        prim_to_cons({0.5 + unit(rng), unit(rng) - 0.5, unit(rng) - 0.5, 0.5 + unit(rng)}, gamma);
    for (int j = 0; j < g.ny; ++j) f(i, j) = q;
  }
  fill_ghosts(f);
  return f;
}

/// Field from a primitive-state function of the cell centre.
inline Field field_from(const GridSpec& g, const std::function<PrimitiveState(double, double)>& w,
                        double gamma = kDefaultGamma) {
  Field f(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) f(i, j) = prim_to_cons(w(g.xc(i), g.yc(j)), gamma);
  fill_ghosts(f);
  return f;
}

/// Max componentwise |a - b| over interior cells.
inline double max_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (int j = 0; j < a.spec.ny; ++j)
    for (int i = 0; i < a.spec.nx; ++i)
      for (int c = 0; c < 4; ++c) m = std::max(m, std::abs(a(i, j)[c] - b(i, j)[c]));
  return m;
}

inline double max_abs(const Array2D<double>& a, int i0, int i1, int j0, int j1) {
  double m = 0.0;
  for (int j = j0; j < j1; ++j)
    for (int i = i0; i < i1; ++i) m = std::max(m, std::abs(a(i, j)));
  return m;
}

inline GridSpec periodic_grid(int nx, int ny, double lx = 1.0, double ly = 1.0) {
  return GridSpec::uniform(nx, ny, lx, ly);
}

}  // namespace allspeed::fixtures
