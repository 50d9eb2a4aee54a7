#pragma once

#include <cmath>
#include <string>

#include "allspeed/euler_common.hpp"

/**
 * @file euler_relax.hpp
 * @brief Suliciu-type relaxation solver with a four-state fan
 * {q_L, q*_L, q*_R, q_R} separated by sigma_L, u*, sigma_R.
 *
 * All quantities are in the face-normal frame: `un` is the velocity normal to
 * the face and `ut` the tangential one.
 */
namespace allspeed {

/// Star-density denominator <= 0, i.e. a is too small for the data.
class SubcharacteristicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Interface flux (mass, x-momentum, y-momentum, energy).
using FluxVector = ConservedState;

struct RelaxEdgeStates {
  double u_star = 0.0, p_star = 0.0;
  double rho_star_L = 0.0, rho_star_R = 0.0;
  double spec_e_star_L = 0.0, spec_e_star_R = 0.0;  // e*/rho*
  double v_star_L = 0.0, v_star_R = 0.0;
  double a = 0.0;
  double sigma_L = 0.0, sigma_R = 0.0;
};

/// Star states of the relaxation fan from face moments (see FaceMoments).
inline RelaxEdgeStates relax_star(const PrimitiveState& wL, const PrimitiveState& wR,
                                  const FaceMoments& m, double a, double gamma = kDefaultGamma) {
  RelaxEdgeStates s;
  s.a = a;
  s.u_star = m.avg_un - m.jump_p / (2.0 * a);
  s.p_star = m.avg_p - 0.5 * a * m.jump_un;
  const double denom_L = 1.0 + wL.rho * m.jump_un / (2.0 * a) - wL.rho * m.jump_p / (2.0 * a * a);
  const double denom_R = 1.0 + wR.rho * m.jump_un / (2.0 * a) + wR.rho * m.jump_p / (2.0 * a * a);
  if (!(denom_L > 0.0) || !(denom_R > 0.0))
    throw SubcharacteristicError("relaxation speed a = " + std::to_string(a) +
                                 " gives a non-positive star density");
  s.rho_star_L = wL.rho / denom_L;
  s.rho_star_R = wR.rho / denom_R;
  const double eL = wL.p / (gamma - 1.0) + 0.5 * wL.rho * (wL.u * wL.u + wL.v * wL.v);
  const double eR = wR.p / (gamma - 1.0) + 0.5 * wR.rho * (wR.u * wR.u + wR.v * wR.v);
  s.spec_e_star_L = eL / wL.rho + (wL.p * wL.u - s.p_star * s.u_star) / a;
  s.spec_e_star_R = eR / wR.rho + (s.p_star * s.u_star - wR.p * wR.u) / a;
  s.v_star_L = wL.v;
  s.v_star_R = wR.v;
  s.sigma_L = wL.u - a / wL.rho;
  s.sigma_R = wR.u + a / wR.rho;
  return s;
}

/// One-dimensional star states; `u` is the normal and `v` the tangential velocity.
inline RelaxEdgeStates relax_star_1d(const PrimitiveState& wL, const PrimitiveState& wR, double a,
                                     double gamma = kDefaultGamma) {
  const FaceMoments m{0.5 * (wL.u + wR.u), wR.u - wL.u, 0.5 * (wL.p + wR.p), wR.p - wL.p};
  return relax_star(wL, wR, m, a, gamma);
}

/**
 * @brief Flux of the relaxation system at x/t = 0.
 *
 * The state is q_L for 0 <= sigma_L, q*_L for sigma_L < 0 < u*, q*_R for
 * u* <= 0 < sigma_R and q_R otherwise; its flux is
 * (rho un, rho un^2 + pi, rho un ut, un (e + pi)) with pi = p outside the fan
 * and pi = p* inside.
 */
inline FluxVector relax_interface_flux(const RelaxEdgeStates& s, const PrimitiveState& wL,
                                       const PrimitiveState& wR, double gamma = kDefaultGamma) {
  auto outer = [gamma](const PrimitiveState& w) {
    const double e = w.p / (gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
    const double mass = w.rho * w.u;
    return FluxVector{mass, mass * w.u + w.p, mass * w.v, w.u * (e + w.p)};
  };
  auto star = [&s](double rho_star, double spec_e, double ut) {
    const double mass = rho_star * s.u_star;
    return FluxVector{mass, mass * s.u_star + s.p_star, mass * ut,
                      mass * spec_e + s.u_star * s.p_star};
  };
  if (s.sigma_L >= 0.0) return outer(wL);
  if (s.u_star > 0.0) return star(s.rho_star_L, s.spec_e_star_L, s.v_star_L);
  if (s.sigma_R > 0.0) return star(s.rho_star_R, s.spec_e_star_R, s.v_star_R);
  return outer(wR);
}

/// Which face: axis and the lower cell index (the face is i+1/2 or j+1/2).
struct FaceIndex {
  stencil::Axis axis;
  int i, j;
};

namespace detail {

inline PrimitiveState normal_frame(const PrimitiveFields& w, stencil::Axis axis, int i, int j) {
  if (axis == stencil::Axis::x) return {w.rho(i, j), w.u(i, j), w.v(i, j), w.p(i, j)};
  return {w.rho(i, j), w.v(i, j), w.u(i, j), w.p(i, j)};
}

template <stencil::Axis A>
RelaxEdgeStates relax_star_at(const PrimitiveFields& w, Variant variant, const GridSpec& g, int i,
                              int j, double a, double gamma) {
  const int di = A == stencil::Axis::x ? 1 : 0, dj = 1 - di;
  return relax_star(normal_frame(w, A, i, j), normal_frame(w, A, i + di, j + dj),
                    face_moments<A>(w, variant, g.dx, g.dy, i, j), a, gamma);
}

inline constexpr int kMaxSpeedDoublings = 5;

/// Face flux in the Cartesian frame, doubling a on subcharacteristic violations.
template <stencil::Axis A>
FluxVector relax_face_flux(const PrimitiveFields& w, Variant variant, const GridSpec& g, int i,
                           int j, double gamma, double safety) {
  const int di = A == stencil::Axis::x ? 1 : 0, dj = 1 - di;
  double a = relaxation_speed<A>(w, variant, safety, i, j);
  for (int attempt = 0;; ++attempt) {
    try {
      const RelaxEdgeStates s = relax_star_at<A>(w, variant, g, i, j, a, gamma);
      const FluxVector fn = relax_interface_flux(s, normal_frame(w, A, i, j),
                                                 normal_frame(w, A, i + di, j + dj), gamma);
      if constexpr (A == stencil::Axis::x)
        return fn;
      else
        return {fn.rho, fn.rho_v, fn.rho_u, fn.e};
    } catch (const SubcharacteristicError&) {
      if (attempt == kMaxSpeedDoublings)
        throw StepFailure("subcharacteristic condition still violated after doubling a at face (" +
                          std::to_string(i) + ", " + std::to_string(j) + ")");
      a *= 2.0;
    }
  }
}

}  // namespace detail

/// Star states at one face of a ghost-filled field, using the all-speed moments.
inline RelaxEdgeStates relax_star_multid(const Field& f, const FaceIndex& face, double a,
                                         double gamma = kDefaultGamma) {
  const PrimitiveFields w = primitive_fields(f, gamma);
  if (face.axis == stencil::Axis::x)
    return detail::relax_star_at<stencil::Axis::x>(w, Variant::multid, f.spec, face.i, face.j, a,
                                                   gamma);
  return detail::relax_star_at<stencil::Axis::y>(w, Variant::multid, f.spec, face.i, face.j, a,
                                                 gamma);
}

/// Conservative update q - dt/dx [F_x] - dt/dy [F_y] with relaxation fluxes.
inline Field relax_step(const Field& f, const PrimitiveFields& w, double dt, Variant variant,
                        double gamma = kDefaultGamma,
                        double safety = kDefaultRelaxationSafety) {
  using stencil::Axis;
  const int nx = f.spec.nx, ny = f.spec.ny;
  const double rx = dt / f.spec.dx, ry = dt / f.spec.dy;
  Array2D<FluxVector> fx(nx, ny, 1), fy(nx, ny, 1);
  parallel_rows(-1, ny, nx + 1, [&](int j) {
    for (int i = -1; i < nx; ++i) {
      if (j >= 0) fx(i, j) = detail::relax_face_flux<Axis::x>(w, variant, f.spec, i, j, gamma, safety);
      if (i >= 0) fy(i, j) = detail::relax_face_flux<Axis::y>(w, variant, f.spec, i, j, gamma, safety);
    }
  });
  Field out(f.spec);
  out.time = f.time + dt;
  parallel_rows(0, ny, nx, [&](int j) {
    for (int i = 0; i < nx; ++i) {
      ConservedState q = f(i, j);
      q -= rx * (fx(i, j) - fx(i - 1, j));
      q -= ry * (fy(i, j) - fy(i, j - 1));
      out(i, j) = q;
    }
  });
  require_valid_interior(out, gamma);
  fill_ghosts(out);
  return out;
}

inline Field relax_step(const Field& f, double dt, Variant variant, double gamma = kDefaultGamma,
                        double safety = kDefaultRelaxationSafety) {
  return relax_step(f, primitive_fields(f, gamma), dt, variant, gamma, safety);
}

}  // namespace allspeed
