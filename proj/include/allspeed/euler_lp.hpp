#pragma once

#include <string>

#include "allspeed/euler_common.hpp"

/**
 * @file euler_lp.hpp
 * @brief Lagrange-Projection scheme: acoustic star states, a Lagrangian
 * compression predictor and a donor-cell advection step.
 *
 * The acoustic step uses relaxation star states on every face,
 *   u* = avg_un - jump_p / (2a),   p* = avg_p - (a/2) jump_un,
 * with the split or all-speed face moments from euler_common.hpp. The
 * predictor divides by the compression factor
 *   L = 1 + dt/dx [u*]_{i+-1/2} + dt/dy [v*]_{j+-1/2},
 * and the advection step transports the predicted states with u*, v*.
 */
namespace allspeed {

/**
 * Face star values. x-faces (index i = face i+1/2) are filled for
 * i in [-2, nx], j in [-1, ny]; y-faces for i in [-1, nx], j in [-2, ny].
 */
struct LpStarFaces {
  Array2D<double> u_star, p_star_x;
  Array2D<double> v_star, p_star_y;
};

struct LpPredictor {
  Array2D<double> L;
  Array2D<ConservedState> q_minus;
};

namespace detail {

inline Box lp_x_faces(const GridSpec& g) { return {-2, g.nx + 1, -1, g.ny + 1}; }
inline Box lp_y_faces(const GridSpec& g) { return {-1, g.nx + 1, -2, g.ny + 1}; }

template <stencil::Axis A>
void lp_star_family(const PrimitiveFields& w, Variant variant, const GridSpec& g,
                    const Array2D<double>& a, const Box& box, Array2D<double>& un_star,
                    Array2D<double>& p_star) {
  parallel_rows(box.j0, box.j1, box.i1 - box.i0, [&](int j) {
    for (int i = box.i0; i < box.i1; ++i) {
      const FaceMoments m = face_moments<A>(w, variant, g.dx, g.dy, i, j);
      const double af = a(i, j);
      un_star(i, j) = m.avg_un - m.jump_p / (2.0 * af);
      p_star(i, j) = m.avg_p - 0.5 * af * m.jump_un;
    }
  });
}

inline LpStarFaces lp_stars(const PrimitiveFields& w, Variant variant, const GridSpec& g,
                            const FaceSpeeds& a) {
  const int nx = g.nx, ny = g.ny;
  LpStarFaces s{Array2D<double>(nx, ny, kGhostWidth), Array2D<double>(nx, ny, kGhostWidth),
                Array2D<double>(nx, ny, kGhostWidth), Array2D<double>(nx, ny, kGhostWidth)};
  lp_star_family<stencil::Axis::x>(w, variant, g, a.x, lp_x_faces(g), s.u_star, s.p_star_x);
  lp_star_family<stencil::Axis::y>(w, variant, g, a.y, lp_y_faces(g), s.v_star, s.p_star_y);
  return s;
}

inline FaceSpeeds lp_face_speeds(const PrimitiveFields& w, Variant variant, const GridSpec& g,
                                 double safety) {
  FaceSpeeds s{Array2D<double>(g.nx, g.ny, kGhostWidth), Array2D<double>(g.nx, g.ny, kGhostWidth)};
  const Box bx = lp_x_faces(g), by = lp_y_faces(g);
  for (int j = bx.j0; j < bx.j1; ++j)
    for (int i = bx.i0; i < bx.i1; ++i)
      s.x(i, j) = relaxation_speed<stencil::Axis::x>(w, variant, safety, i, j);
  for (int j = by.j0; j < by.j1; ++j)
    for (int i = by.i0; i < by.i1; ++i)
      s.y(i, j) = relaxation_speed<stencil::Axis::y>(w, variant, safety, i, j);
  return s;
}

}  // namespace detail

/// Dimensionally split acoustic stars: u* = {u}/2 - [p]/(2a), p* = {p}/2 - (a/2)[u].
inline LpStarFaces lp_star_split(const Field& f, const FaceSpeeds& a,
                                 double gamma = kDefaultGamma) {
  return detail::lp_stars(primitive_fields(f, gamma), Variant::split, f.spec, a);
}

/// All-speed stars with transverse averaging and the divergence-completed p*.
inline LpStarFaces lp_star_multid(const Field& f, const FaceSpeeds& a,
                                  double gamma = kDefaultGamma) {
  return detail::lp_stars(primitive_fields(f, gamma), Variant::multid, f.spec, a);
}

/**
 * @brief Lagrangian predictor on cells [-1, nx] x [-1, ny].
 *
 * Throws StepFailure when some L <= 0; the caller must shrink dt.
 */
inline LpPredictor lp_predictor(const Field& f, const LpStarFaces& s, double dt) {
  const int nx = f.spec.nx, ny = f.spec.ny;
  const double rx = dt / f.spec.dx, ry = dt / f.spec.dy;
  LpPredictor pred{Array2D<double>(nx, ny, kGhostWidth),
                   Array2D<ConservedState>(nx, ny, kGhostWidth)};
  parallel_rows(-1, ny + 1, nx + 2, [&](int j) {
    for (int i = -1; i <= nx; ++i) {
      const double L = 1.0 + rx * (s.u_star(i, j) - s.u_star(i - 1, j)) +
                       ry * (s.v_star(i, j) - s.v_star(i, j - 1));
      if (!(L > 0.0))
        throw StepFailure("non-positive compression factor L = " + std::to_string(L) +
                          " at cell (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      const ConservedState& q = f(i, j);
      const double work = rx * (s.u_star(i, j) * s.p_star_x(i, j) -
                                s.u_star(i - 1, j) * s.p_star_x(i - 1, j)) +
                          ry * (s.v_star(i, j) * s.p_star_y(i, j) -
                                s.v_star(i, j - 1) * s.p_star_y(i, j - 1));
      pred.L(i, j) = L;
      pred.q_minus(i, j) = {q.rho / L,
                            (q.rho_u - rx * (s.p_star_x(i, j) - s.p_star_x(i - 1, j))) / L,
                            (q.rho_v - ry * (s.p_star_y(i, j) - s.p_star_y(i, j - 1))) / L,
                            (q.e - work) / L};
    }
  });
  return pred;
}

/**
 * @brief Advection step q^{n+1} = q^- L - dt/dx [f^adv]_x - dt/dy [f^adv]_y.
 *
 * Evaluated in the equivalent flux form q^n - dt/dx [F]_x - dt/dy [F]_y with
 * F_x = u* q^-_upwind + (0, p*, 0, u* p*), so each component telescopes.
 * Ghosts of the result are refreshed; throws StepFailure on an invalid state.
 */
inline Field lp_advect_and_update(const Field& f, const LpStarFaces& s, const LpPredictor& pred,
                                  double dt, double gamma = kDefaultGamma) {
  const int nx = f.spec.nx, ny = f.spec.ny;
  const double rx = dt / f.spec.dx, ry = dt / f.spec.dy;
  Array2D<ConservedState> fx(nx, ny, kGhostWidth), fy(nx, ny, kGhostWidth);
  parallel_rows(0, ny + 1, nx + 1, [&](int j) {
    for (int i = -1; i < nx; ++i) {
      if (j < ny) {
        const double us = s.u_star(i, j), ps = s.p_star_x(i, j);
        const ConservedState& up = us >= 0.0 ? pred.q_minus(i, j) : pred.q_minus(i + 1, j);
        fx(i, j) = {us * up.rho, us * up.rho_u + ps, us * up.rho_v, us * up.e + us * ps};
      }
      if (i >= 0) {
        const double vs = s.v_star(i, j - 1), ps = s.p_star_y(i, j - 1);
        const ConservedState& up = vs >= 0.0 ? pred.q_minus(i, j - 1) : pred.q_minus(i, j);
        fy(i, j - 1) = {vs * up.rho, vs * up.rho_u, vs * up.rho_v + ps, vs * up.e + vs * ps};
      }
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

/// One forward-Euler LP step of a ghost-filled field, reusing its primitive fields.
inline Field lp_step(const Field& f, const PrimitiveFields& w, double dt, Variant variant,
                     double gamma = kDefaultGamma, double safety = kDefaultRelaxationSafety) {
  const FaceSpeeds a = detail::lp_face_speeds(w, variant, f.spec, safety);
  const LpStarFaces stars = detail::lp_stars(w, variant, f.spec, a);
  const LpPredictor pred = lp_predictor(f, stars, dt);
  return lp_advect_and_update(f, stars, pred, dt, gamma);
}

inline Field lp_step(const Field& f, double dt, Variant variant, double gamma = kDefaultGamma,
                     double safety = kDefaultRelaxationSafety) {
  return lp_step(f, primitive_fields(f, gamma), dt, variant, gamma, safety);
}

}  // namespace allspeed
