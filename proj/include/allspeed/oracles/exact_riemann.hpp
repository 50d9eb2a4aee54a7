#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "allspeed/grid.hpp"

/**
 * @file exact_riemann.hpp
 * @brief Exact solution of the 1D Euler Riemann problem for an ideal gas.
 *
 * Star pressure by Newton iteration on the pressure function, then sampling
 * of the self-similar fan. `u` is the normal velocity; `v` is passively
 * carried across the contact.
 */
namespace allspeed::oracles {

enum class WaveKind { shock, rarefaction };

struct RiemannSolution {
  double p_star = 0.0;
  double u_star = 0.0;
  double rho_star_L = 0.0;
  double rho_star_R = 0.0;
  WaveKind left = WaveKind::rarefaction;
  WaveKind right = WaveKind::rarefaction;
};

class VacuumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct PressureFunction {
  double value, slope;
};

/// f_K(p) and f_K'(p) for one side.
inline PressureFunction side_function(double p, const PrimitiveState& w, double gamma) {
  const double c = std::sqrt(gamma * w.p / w.rho);
  if (p > w.p) {
    const double A = 2.0 / ((gamma + 1.0) * w.rho);
    const double B = (gamma - 1.0) / (gamma + 1.0) * w.p;
    const double s = std::sqrt(A / (p + B));
    return {(p - w.p) * s, s * (1.0 - 0.5 * (p - w.p) / (B + p))};
  }
  const double pr = p / w.p;
  const double expo = (gamma - 1.0) / (2.0 * gamma);
  return {2.0 * c / (gamma - 1.0) * (std::pow(pr, expo) - 1.0),
          1.0 / (w.rho * c) * std::pow(pr, -(gamma + 1.0) / (2.0 * gamma))};
}

inline double star_density(double p, const PrimitiveState& w, double gamma) {
  const double pr = p / w.p;
  if (p > w.p) {
    const double g = (gamma - 1.0) / (gamma + 1.0);
    return w.rho * (pr + g) / (g * pr + 1.0);
  }
  return w.rho * std::pow(pr, 1.0 / gamma);
}

}  // namespace detail

inline RiemannSolution exact_riemann_star(const PrimitiveState& wL, const PrimitiveState& wR,
                                          double gamma = kDefaultGamma) {
  const double cL = std::sqrt(gamma * wL.p / wL.rho), cR = std::sqrt(gamma * wR.p / wR.rho);
  const double du = wR.u - wL.u;
  if (2.0 * (cL + cR) / (gamma - 1.0) <= du) throw VacuumError("Riemann data generate vacuum");

  // two-rarefaction guess, clipped away from zero
  const double expo = (gamma - 1.0) / (2.0 * gamma);
  double p = std::pow((cL + cR - 0.5 * (gamma - 1.0) * du) /
                          (cL / std::pow(wL.p, expo) + cR / std::pow(wR.p, expo)),
                      1.0 / expo);
  p = std::max(p, 1e-12 * std::min(wL.p, wR.p));
  for (int it = 0; it < 200; ++it) {
    const auto fL = detail::side_function(p, wL, gamma), fR = detail::side_function(p, wR, gamma);
    double next = p - (fL.value + fR.value + du) / (fL.slope + fR.slope);
    if (next <= 0.0) next = 0.5 * p;
    const double change = 2.0 * std::abs(next - p) / (next + p);
    p = next;
    if (change < 1e-15) break;
  }
  RiemannSolution s;
  s.p_star = p;
  const auto fL = detail::side_function(p, wL, gamma), fR = detail::side_function(p, wR, gamma);
  s.u_star = 0.5 * (wL.u + wR.u) + 0.5 * (fR.value - fL.value);
  s.left = p > wL.p ? WaveKind::shock : WaveKind::rarefaction;
  s.right = p > wR.p ? WaveKind::shock : WaveKind::rarefaction;
  s.rho_star_L = detail::star_density(p, wL, gamma);
  s.rho_star_R = detail::star_density(p, wR, gamma);
  return s;
}

/// Left shock speed (valid when s.left is a shock); the right one mirrors it.
inline double shock_speed_left(const RiemannSolution& s, const PrimitiveState& wL, double gamma) {
  const double cL = std::sqrt(gamma * wL.p / wL.rho);
  return wL.u - cL * std::sqrt((gamma + 1.0) / (2.0 * gamma) * s.p_star / wL.p +
                               (gamma - 1.0) / (2.0 * gamma));
}

inline double shock_speed_right(const RiemannSolution& s, const PrimitiveState& wR, double gamma) {
  const double cR = std::sqrt(gamma * wR.p / wR.rho);
  return wR.u + cR * std::sqrt((gamma + 1.0) / (2.0 * gamma) * s.p_star / wR.p +
                               (gamma - 1.0) / (2.0 * gamma));
}

/// State at xi = x / t.
inline PrimitiveState exact_riemann_1d(const PrimitiveState& wL, const PrimitiveState& wR,
                                       double gamma, double xi) {
  const RiemannSolution s = exact_riemann_star(wL, wR, gamma);
  const double g1 = gamma - 1.0, g2 = gamma + 1.0;
  if (xi <= s.u_star) {
    const double cL = std::sqrt(gamma * wL.p / wL.rho);
    if (s.left == WaveKind::shock) {
      if (xi <= shock_speed_left(s, wL, gamma)) return wL;
      return {s.rho_star_L, s.u_star, wL.v, s.p_star};
    }
    const double c_star = cL * std::pow(s.p_star / wL.p, g1 / (2.0 * gamma));
    if (xi <= wL.u - cL) return wL;
    if (xi >= s.u_star - c_star) return {s.rho_star_L, s.u_star, wL.v, s.p_star};
    const double c = 2.0 / g2 * (cL + 0.5 * g1 * (wL.u - xi));
    const double u = 2.0 / g2 * (cL + 0.5 * g1 * wL.u + xi);
    const double rho = wL.rho * std::pow(c / cL, 2.0 / g1);
    return {rho, u, wL.v, wL.p * std::pow(c / cL, 2.0 * gamma / g1)};
  }
  const double cR = std::sqrt(gamma * wR.p / wR.rho);
  if (s.right == WaveKind::shock) {
    if (xi >= shock_speed_right(s, wR, gamma)) return wR;
    return {s.rho_star_R, s.u_star, wR.v, s.p_star};
  }
  const double c_star = cR * std::pow(s.p_star / wR.p, g1 / (2.0 * gamma));
  if (xi >= wR.u + cR) return wR;
  if (xi <= s.u_star + c_star) return {s.rho_star_R, s.u_star, wR.v, s.p_star};
  const double c = 2.0 / g2 * (cR - 0.5 * g1 * (wR.u - xi));
  const double u = 2.0 / g2 * (-cR + 0.5 * g1 * wR.u + xi);
  const double rho = wR.rho * std::pow(c / cR, 2.0 / g1);
  return {rho, u, wR.v, wR.p * std::pow(c / cR, 2.0 * gamma / g1)};
}

}  // namespace allspeed::oracles
