#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "allspeed/grid.hpp"

/**
 * @file radial_reference.hpp
 * @brief Fine-grid solution of the radially symmetric Euler equations
 *
 *   d_t (r q) + d_r (r F(q)) = (0, p, 0),   q = (rho, rho u, E)
 *
 * with a compact first-order relaxation flux. The area-weighted update keeps
 * sum rho_k r_k dr exactly. `planar` drops the weights and the source.
 */
namespace allspeed::oracles {

struct RadialReferenceParams {
  int n_fine = 4000;
  double length = 0.75;
  double r_jump = 0.3;
  PrimitiveState inner{1.0, 0.0, 0.0, 1.0};  // u is the radial velocity
  PrimitiveState outer{0.125, 0.0, 0.0, 0.1};
  double t_end = 0.1;
  double cfl = 0.9;
  double gamma = kDefaultGamma;
  bool planar = false;
};

struct RadialSample {
  double r, rho, u, p;
};

struct RadialProfile {
  double dr = 0.0;
  double time = 0.0;
  long steps = 0;
  std::vector<RadialSample> cells;

  /// Linear interpolation of the density between cell centres.
  [[nodiscard]] double density_at(double r) const {
    const double s = r / dr - 0.5;
    if (s <= 0.0) return cells.front().rho;
    const auto k = static_cast<std::size_t>(s);
    if (k + 1 >= cells.size()) return cells.back().rho;
    const double t = s - static_cast<double>(k);
    return (1.0 - t) * cells[k].rho + t * cells[k + 1].rho;
  }
};

namespace detail {

struct Cons1 {
  double m, mu, E;  // rho, rho u, total energy
};

struct Prim1 {
  double rho, u, p;
};

inline Prim1 to_prim(const Cons1& q, double gamma) {
  const double u = q.mu / q.m;
  return {q.m, u, (gamma - 1.0) * (q.E - 0.5 * q.mu * u)};
}

inline Cons1 to_cons(const Prim1& w, double gamma) {
  return {w.rho, w.rho * w.u, w.p / (gamma - 1.0) + 0.5 * w.rho * w.u * w.u};
}

/// Relaxation flux in Lagrangian star form (specific volume and energy).
inline Cons1 relaxation_flux(const Prim1& l, const Prim1& r, double gamma) {
  auto euler = [gamma](const Prim1& w) {
    const double E = w.p / (gamma - 1.0) + 0.5 * w.rho * w.u * w.u;
    return Cons1{w.rho * w.u, w.rho * w.u * w.u + w.p, w.u * (E + w.p)};
  };
  double a = 1.01 * std::max(std::sqrt(gamma * l.p * l.rho), std::sqrt(gamma * r.p * r.rho));
  for (int attempt = 0; attempt < 20; ++attempt, a *= 2.0) {
    const double us = 0.5 * (l.u + r.u) - 0.5 * (r.p - l.p) / a;
    const double ps = 0.5 * (l.p + r.p) - 0.5 * a * (r.u - l.u);
    const double tau_l = 1.0 / l.rho + (us - l.u) / a;
    const double tau_r = 1.0 / r.rho + (r.u - us) / a;
    if (!(tau_l > 0.0) || !(tau_r > 0.0)) continue;
    if (l.u - a / l.rho >= 0.0) return euler(l);
    if (r.u + a / r.rho <= 0.0) return euler(r);
    const Prim1& side = us >= 0.0 ? l : r;
    const double tau = us >= 0.0 ? tau_l : tau_r;
    const double spec_e = (side.p / (gamma - 1.0) / side.rho + 0.5 * side.u * side.u) +
                          (us >= 0.0 ? -(ps * us - side.p * side.u) : (ps * us - side.p * side.u)) / a;
    const double m = us / tau;
    return {m, m * us + ps, m * spec_e + ps * us};
  }
  throw std::runtime_error("radial reference: relaxation speed did not settle");
}

}  // namespace detail

inline RadialProfile radial_reference_1d(const RadialReferenceParams& prm) {
  using namespace detail;
  const int n = prm.n_fine;
  if (n < 10) throw std::invalid_argument("radial reference needs at least 10 cells");
  const double dr = prm.length / n, gamma = prm.gamma;
  auto rc = [&](int k) { return (k + 0.5) * dr; };
  auto rf = [&](int k) { return prm.planar ? 1.0 : (k + 1) * dr; };  // face k+1/2
  auto rw = [&](int k) { return prm.planar ? 1.0 : rc(k); };

  std::vector<Cons1> q(n);
  for (int k = 0; k < n; ++k) {
    const PrimitiveState& s = rc(k) < prm.r_jump ? prm.inner : prm.outer;
    q[k] = to_cons({s.rho, s.u, s.p}, gamma);
  }
  RadialProfile out;
  out.dr = dr;
  std::vector<Prim1> w(n + 2);
  std::vector<Cons1> flux(n + 1);  // flux[k] at face k-1/2
  double t = 0.0;
  while (t < prm.t_end * (1.0 - 1e-14)) {
    double smax = 0.0;
    for (int k = 0; k < n; ++k) {
      w[k + 1] = to_prim(q[k], gamma);
      if (!(w[k + 1].rho > 0.0) || !(w[k + 1].p > 0.0))
        throw std::runtime_error("radial reference: invalid state");
      smax = std::max(smax, std::abs(w[k + 1].u) + std::sqrt(gamma * w[k + 1].p / w[k + 1].rho));
    }
    w[0] = {w[1].rho, -w[1].u, w[1].p};
    w[n + 1] = w[n];
    const double dt = std::min(prm.cfl * dr / smax, prm.t_end - t);
    for (int k = 0; k <= n; ++k) flux[k] = relaxation_flux(w[k], w[k + 1], gamma);
    for (int k = 0; k < n; ++k) {
      const double r_lo = k == 0 ? (prm.planar ? 1.0 : 0.0) : rf(k - 1), r_hi = rf(k);
      const double s = dt / (rw(k) * dr);
      q[k].m -= s * (r_hi * flux[k + 1].m - r_lo * flux[k].m);
      q[k].mu -= s * (r_hi * flux[k + 1].mu - r_lo * flux[k].mu);
      q[k].E -= s * (r_hi * flux[k + 1].E - r_lo * flux[k].E);
      if (!prm.planar) q[k].mu += dt * w[k + 1].p / rc(k);
    }
    t += dt;
    ++out.steps;
  }
  out.time = t;
  out.cells.reserve(n);
  for (int k = 0; k < n; ++k) {
    const Prim1 s = to_prim(q[k], gamma);
    out.cells.push_back({rc(k), s.rho, s.u, s.p});
  }
  return out;
}

/// sum rho_k r_k dr (or sum rho_k dr in the planar case).
inline double radial_mass(const RadialProfile& p, bool planar = false) {
  double m = 0.0;
  for (const auto& c : p.cells) m += c.rho * (planar ? 1.0 : c.r) * p.dr;
  return m;
}

}  // namespace allspeed::oracles
