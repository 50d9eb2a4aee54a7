#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "allspeed/euler_common.hpp"
#include "allspeed/grid.hpp"
#include "allspeed/stencil.hpp"

namespace allspeed {

struct DiagnosticsRecord {
  double time = 0.0;
  double l1_gradp_x = 0.0;  // (1/N) sum |eps^2 [p]_{i+-1} / 2|
  double l1_gradp_y = 0.0;
  double l1_div_multid = 0.0;   // dx (1/N) sum |D_{i+1/2,j+1/2}|
  double l1_div_central = 0.0;  // (1/N) sum |[u]_{i+-1}/2 + [v]_{j+-1}/2|
  double l1_d2u = 0.0;          // (1/N) sum |[[u]]_{i+-1/2}|
  ConservedState totals;        // sum q dx dy
  double max_mach = 0.0;
};

/**
 * @brief The low Mach norms of a ghost-filled field.
 *
 * `eps_report` only scales the pressure-gradient channels; the solver itself
 * never sees it.
 */
inline DiagnosticsRecord measure(const Field& f, double eps_report, double gamma = kDefaultGamma) {
  using namespace stencil;
  const PrimitiveFields w = primitive_fields(f, gamma);
  const int nx = f.spec.nx, ny = f.spec.ny;
  const double n = static_cast<double>(nx) * ny, eps2 = eps_report * eps_report;
  const VertexScalarField div = discrete_divergence(w.u, w.v, f.spec.dx, f.spec.dy);
  const auto U = cells(w.u), V = cells(w.v), P = cells(w.p);
  DiagnosticsRecord d;
  d.time = f.time;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      d.l1_gradp_x += std::abs(eps2 * diff_wide<Axis::x>(P)(i, j) / 2.0);
      d.l1_gradp_y += std::abs(eps2 * diff_wide<Axis::y>(P)(i, j) / 2.0);
      d.l1_div_multid += std::abs(div(i, j));
      d.l1_div_central +=
          std::abs(diff_wide<Axis::x>(U)(i, j) / 2.0 + diff_wide<Axis::y>(V)(i, j) / 2.0);
      d.l1_d2u += std::abs(second_diff<Axis::x>(U)(i, j));
      d.totals += f(i, j);
      const double c = std::sqrt(gamma * w.p(i, j) / w.rho(i, j));
      d.max_mach = std::max(d.max_mach, std::hypot(w.u(i, j), w.v(i, j)) / c);
    }
  d.l1_gradp_x /= n;
  d.l1_gradp_y /= n;
  d.l1_div_multid *= f.spec.dx / n;
  d.l1_div_central /= n;
  d.l1_d2u /= n;
  d.totals *= f.spec.dx * f.spec.dy;
  return d;
}

struct RadialRecord {
  double r, rho, vrad, p;
};

/// One record per interior cell: distance to (xc, yc), density, |radial velocity|, pressure.
inline std::vector<RadialRecord> radial_scatter(const Field& f, double xc, double yc,
                                                double gamma = kDefaultGamma) {
  std::vector<RadialRecord> out;
  out.reserve(f.spec.cells());
  for (int j = 0; j < f.spec.ny; ++j)
    for (int i = 0; i < f.spec.nx; ++i) {
      const PrimitiveState s = cons_to_prim(f(i, j), gamma, i, j);
      const double dx = f.spec.xc(i) - xc, dy = f.spec.yc(j) - yc;
      const double r = std::hypot(dx, dy);
      const double vr = r > 0.0 ? (s.u * dx + s.v * dy) / r : 0.0;
      out.push_back({r, s.rho, std::abs(vr), s.p});
    }
  return out;
}

/// Least-squares slope of log(norm) against log(eps).
inline double slope_fit(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2) throw std::invalid_argument("slope_fit needs at least two pairs");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [e, v] : pairs) {
    if (!(e > 0.0) || !(v > 0.0)) throw std::invalid_argument("slope_fit needs positive values");
    const double x = std::log(e), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(pairs.size());
  const double den = m * sxx - sx * sx;
  if (!(std::abs(den) > 0.0)) throw std::invalid_argument("slope_fit needs distinct eps values");
  return (m * sxy - sx * sy) / den;
}

}  // namespace allspeed
