#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "allspeed/grid.hpp"
#include "allspeed/stencil.hpp"

/**
 * @file acoustics.hpp
 * @brief Linear acoustics dt v + grad p / eps^2 = 0, dt p + c^2 div v = 0.
 *
 * Two semi-discretisations: the dimensionally split one built from the 1D
 * Riemann solver, and the 9-point stationarity preserving one whose
 * stationary states are exactly constant pressure with vanishing vertex
 * divergence. Also the von Neumann analysis of the latter.
 */
namespace allspeed {

struct AcousticParams {
  double c = 1.0;
  double eps = 1.0;
  double dx = 1.0;
  double dy = 1.0;
  BoundaryKind bc_x = BoundaryKind::periodic;
  BoundaryKind bc_y = BoundaryKind::periodic;
};

struct AcousticState {
  CellScalarField u, v, p;

  AcousticState() = default;
  AcousticState(int nx, int ny)
      : u(nx, ny, kGhostWidth), v(nx, ny, kGhostWidth), p(nx, ny, kGhostWidth) {}
  [[nodiscard]] int nx() const { return u.nx(); }
  [[nodiscard]] int ny() const { return u.ny(); }
};

inline void fill_ghosts(AcousticState& s, const AcousticParams& prm) {
  fill_ghosts(s.u, prm.bc_x, prm.bc_y, -1.0, 1.0);
  fill_ghosts(s.v, prm.bc_x, prm.bc_y, 1.0, -1.0);
  fill_ghosts(s.p, prm.bc_x, prm.bc_y);
}

/// Time derivative of the dimensionally split scheme (interior cells).
inline AcousticState acoustic_rhs_split(const AcousticState& s, const AcousticParams& prm) {
  using namespace stencil;
  const auto U = cells(s.u), V = cells(s.v), P = cells(s.p);
  const double eps2 = prm.eps * prm.eps, diff = prm.c / prm.eps, c2 = prm.c * prm.c;
  AcousticState r(s.nx(), s.ny());
  for (int j = 0; j < s.ny(); ++j)
    for (int i = 0; i < s.nx(); ++i) {
      r.u(i, j) = -diff_wide<Axis::x>(P)(i, j) / (2.0 * prm.dx * eps2) +
                  diff * second_diff<Axis::x>(U)(i, j) / (2.0 * prm.dx);
      r.v(i, j) = -diff_wide<Axis::y>(P)(i, j) / (2.0 * prm.dy * eps2) +
                  diff * second_diff<Axis::y>(V)(i, j) / (2.0 * prm.dy);
      r.p(i, j) = -c2 * (diff_wide<Axis::x>(U)(i, j) / (2.0 * prm.dx) +
                         diff_wide<Axis::y>(V)(i, j) / (2.0 * prm.dy)) +
                  diff * (second_diff<Axis::x>(P)(i, j) / (2.0 * prm.dx) +
                          second_diff<Axis::y>(P)(i, j) / (2.0 * prm.dy));
    }
  return r;
}

/// Time derivative of the 9-point stationarity preserving scheme (interior cells).
inline AcousticState acoustic_rhs_multid(const AcousticState& s, const AcousticParams& prm) {
  using namespace stencil;
  constexpr Axis X = Axis::x, Y = Axis::y;
  const auto U = cells(s.u), V = cells(s.v), P = cells(s.p);
  const double eps2 = prm.eps * prm.eps, diff = prm.c / prm.eps, c2 = prm.c * prm.c;
  const double hx = 8.0 * prm.dx, hy = 8.0 * prm.dy;
  const auto dpx = second_sum<Y>(diff_wide<X>(P));
  const auto dpy = diff_wide<Y>(second_sum<X>(P));
  const auto dux = second_sum<Y>(diff_wide<X>(U));
  const auto dvy = diff_wide<Y>(second_sum<X>(V));
  const auto cross_u = diff_wide<Y>(diff_wide<X>(U));
  const auto cross_v = diff_wide<Y>(diff_wide<X>(V));
  const auto uxx = second_sum<Y>(second_diff<X>(U));
  const auto vyy = second_diff<Y>(second_sum<X>(V));
  const auto pxx = second_sum<Y>(second_diff<X>(P));
  const auto pyy = second_diff<Y>(second_sum<X>(P));
  AcousticState r(s.nx(), s.ny());
  for (int j = 0; j < s.ny(); ++j)
    for (int i = 0; i < s.nx(); ++i) {
      r.u(i, j) = -dpx(i, j) / (hx * eps2) + diff * (uxx(i, j) / hx + cross_v(i, j) / hy);
      r.v(i, j) = -dpy(i, j) / (hy * eps2) + diff * (cross_u(i, j) / hx + vyy(i, j) / hy);
      r.p(i, j) = -c2 * (dux(i, j) / hx + dvy(i, j) / hy) + diff * (pxx(i, j) / hx + pyy(i, j) / hy);
    }
  return r;
}

/// Forward Euler step; the result has its halo refreshed.
inline AcousticState acoustic_step(const AcousticState& s, const AcousticParams& prm, double dt,
                                   bool multid) {
  const AcousticState r = multid ? acoustic_rhs_multid(s, prm) : acoustic_rhs_split(s, prm);
  AcousticState out(s.nx(), s.ny());
  for (int j = 0; j < s.ny(); ++j)
    for (int i = 0; i < s.nx(); ++i) {
      out.u(i, j) = s.u(i, j) + dt * r.u(i, j);
      out.v(i, j) = s.v(i, j) + dt * r.v(i, j);
      out.p(i, j) = s.p(i, j) + dt * r.p(i, j);
    }
  fill_ghosts(out, prm);
  return out;
}

/// Largest stable dt of the 9-point scheme scaled by cfl: cfl * min(dx, dy) * eps / c.
inline double acoustic_dt(const AcousticParams& prm, double cfl) {
  return cfl * std::min(prm.dx, prm.dy) * prm.eps / prm.c;
}

// ---------------------------------------------------------------------------
// von Neumann analysis
// ---------------------------------------------------------------------------

using Matrix3c = Eigen::Matrix3cd;

struct AmplificationProbe {
  double beta_x = 0.0;
  double beta_y = 0.0;
  double dt = 0.0;
  double spectral_radius = 0.0;
  std::array<std::complex<double>, 3> eigenvalues{};
};

/// Acoustic Jacobians in symmetric variables (u, v, p/c) and their sign matrices.
struct AcousticJacobians {
  Matrix3c jx, jy, sign_x, sign_y;
};

inline AcousticJacobians acoustic_jacobians(double speed) {
  AcousticJacobians j;
  j.jx.setZero();
  j.jy.setZero();
  j.jx(0, 2) = j.jx(2, 0) = speed;
  j.jy(1, 2) = j.jy(2, 1) = speed;
  j.sign_x = j.jx / speed;
  j.sign_y = j.jy / speed;
  return j;
}

/// Fourier factors of the 9-point scheme: dt q^ + f D q^ = 0.
struct FourierFactors {
  Matrix3c f, D;
};

/**
 * @brief f and D separately. f has (1 + t) denominators and is singular on
 * the lines beta_x = +-pi or beta_y = +-pi.
 */
inline FourierFactors fourier_factors(double beta_x, double beta_y, const AcousticParams& prm) {
  using cd = std::complex<double>;
  const cd tx = std::polar(1.0, beta_x), ty = std::polar(1.0, beta_y);
  const AcousticJacobians jac = acoustic_jacobians(prm.c / prm.eps);
  const cd ax = (tx - 1.0) * (tx + 1.0) / (2.0 * tx * prm.dx) * (1.0 + ty) * (1.0 + ty) / (4.0 * ty);
  const cd ay = (ty - 1.0) * (ty + 1.0) / (2.0 * ty * prm.dy) * (1.0 + tx) * (1.0 + tx) / (4.0 * tx);
  FourierFactors out;
  out.D = jac.jx * ax + jac.jy * ay;
  out.f = Matrix3c::Identity() - jac.sign_x * ((tx - 1.0) / (tx + 1.0)) -
          jac.sign_y * ((ty - 1.0) / (ty + 1.0));
  return out;
}

/**
 * @brief The product f D with the (1 + t) factors cancelled analytically.
 *
 * Finite for every beta; equals fourier_factors().f * D off the singular lines.
 */
inline Matrix3c evolution_symbol(double beta_x, double beta_y, const AcousticParams& prm) {
  using cd = std::complex<double>;
  const cd tx = std::polar(1.0, beta_x), ty = std::polar(1.0, beta_y);
  const AcousticJacobians jac = acoustic_jacobians(prm.c / prm.eps);
  const cd den_x = 8.0 * tx * ty * prm.dx, den_y = 8.0 * tx * ty * prm.dy;
  const cd ax = (tx - 1.0) * (tx + 1.0) * (1.0 + ty) * (1.0 + ty) / den_x;
  const cd ay = (ty - 1.0) * (ty + 1.0) * (1.0 + tx) * (1.0 + tx) / den_y;
  // (t_x - 1)/(t_x + 1) and (t_y - 1)/(t_y + 1) times ax, ay with (1 + t) cancelled
  const cd bxx = (tx - 1.0) * (tx - 1.0) * (1.0 + ty) * (1.0 + ty) / den_x;
  const cd bxy = (tx - 1.0) * (ty - 1.0) * (ty + 1.0) * (1.0 + tx) / den_y;
  const cd byx = (ty - 1.0) * (tx - 1.0) * (tx + 1.0) * (1.0 + ty) / den_x;
  const cd byy = (ty - 1.0) * (ty - 1.0) * (1.0 + tx) * (1.0 + tx) / den_y;
  return jac.jx * ax + jac.jy * ay - jac.sign_x * (jac.jx * bxx + jac.jy * bxy) -
         jac.sign_y * (jac.jx * byx + jac.jy * byy);
}

/// Fills probe.dt (from cfl), the eigenvalues of A = 1 - dt f D and its spectral radius.
inline AmplificationProbe amplification_matrix(AmplificationProbe probe, const AcousticParams& prm,
                                               double cfl) {
  probe.dt = acoustic_dt(prm, cfl);
  const Matrix3c A =
      Matrix3c::Identity() - probe.dt * evolution_symbol(probe.beta_x, probe.beta_y, prm);
  Eigen::ComplexEigenSolver<Matrix3c> solver(A, /*computeEigenvectors=*/false);
  const auto& ev = solver.eigenvalues();
  probe.spectral_radius = 0.0;
  for (int k = 0; k < 3; ++k) {
    probe.eigenvalues[k] = ev(k);
    probe.spectral_radius = std::max(probe.spectral_radius, std::abs(ev(k)));
  }
  return probe;
}

/// 4 / (3 + cos bx + cos by - cos bx cos by); +infinity where the denominator vanishes.
inline double stability_bound_f(double beta_x, double beta_y) {
  const double cx = std::cos(beta_x), cy = std::cos(beta_y);
  const double den = 3.0 + cx + cy - cx * cy;
  if (!(den > 0.0)) return std::numeric_limits<double>::infinity();
  return 4.0 / den;
}

/// Probes on an n x n grid of [-pi, pi]^2 (endpoints included), row-major in beta_y.
inline std::vector<AmplificationProbe> stability_scan(const AcousticParams& prm, double cfl, int n) {
  std::vector<AmplificationProbe> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  const double pi = std::numbers::pi;
  auto beta = [&](int k) { return n == 1 ? 0.0 : -pi + 2.0 * pi * k / (n - 1); };
  for (int ky = 0; ky < n; ++ky)
    for (int kx = 0; kx < n; ++kx) {
      AmplificationProbe p;
      p.beta_x = beta(kx);
      p.beta_y = beta(ky);
      out.push_back(amplification_matrix(p, prm, cfl));
    }
  return out;
}

}  // namespace allspeed
