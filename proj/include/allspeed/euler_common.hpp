#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "allspeed/grid.hpp"
#include "allspeed/parallel.hpp"
#include "allspeed/stencil.hpp"

namespace allspeed {

/// Dimensionally split baseline or the all-speed 9-point extension.
enum class Variant { split, multid };

inline constexpr double kDefaultRelaxationSafety = 1.01;

/// A time step that cannot be completed at the requested dt.
class StepFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cell-wise primitive variables and acoustic impedance rho*c, halo included.
struct PrimitiveFields {
  CellScalarField rho, u, v, p, impedance;
  double max_signal_speed = 0.0;  // max over interior cells of max(|u|, |v|) + c
};

inline PrimitiveFields primitive_fields(const Field& f, double gamma) {
  const int nx = f.spec.nx, ny = f.spec.ny, g = kGhostWidth;
  PrimitiveFields w{CellScalarField(nx, ny, g), CellScalarField(nx, ny, g),
                    CellScalarField(nx, ny, g), CellScalarField(nx, ny, g),
                    CellScalarField(nx, ny, g)};
  std::vector<double> row_speed(ny + 2 * g, 0.0);
  parallel_rows(-g, ny + g, nx + 2 * g, [&](int j) {
    double smax = 0.0;
    for (int i = -g; i < nx + g; ++i) {
      const PrimitiveState s = cons_to_prim(f(i, j), gamma, i, j);
      const double c = std::sqrt(gamma * s.p / s.rho);
      w.rho(i, j) = s.rho;
      w.u(i, j) = s.u;
      w.v(i, j) = s.v;
      w.p(i, j) = s.p;
      w.impedance(i, j) = s.rho * c;
      if (i >= 0 && i < nx && j >= 0 && j < ny)
        smax = std::max(smax, std::max(std::abs(s.u), std::abs(s.v)) + c);
    }
    row_speed[j + g] = smax;
  });
  w.max_signal_speed = *std::max_element(row_speed.begin(), row_speed.end());
  return w;
}

/// Per-face values for one face family; index i along the normal axis is face i+1/2.
struct FaceArrays {
  Array2D<double> a;        // relaxation speed
  Array2D<double> avg_un;   // averaged normal velocity ({u}/2 in 1D)
  Array2D<double> jump_un;  // velocity jump entering p* ([u] in 1D, divergence-completed in multi-d)
  Array2D<double> avg_p;    // averaged pressure ({p}/2 in 1D)
  Array2D<double> jump_p;   // pressure jump ([p] in 1D, transversally averaged in multi-d)

  FaceArrays() = default;
  FaceArrays(int nx, int ny)
      : a(nx, ny, kGhostWidth), avg_un(nx, ny, kGhostWidth), jump_un(nx, ny, kGhostWidth),
        avg_p(nx, ny, kGhostWidth), jump_p(nx, ny, kGhostWidth) {}
};

/// Index box [i0, i1) x [j0, j1).
struct Box {
  int i0, i1, j0, j1;
};

namespace detail {

template <stencil::Axis A>
constexpr stencil::Axis transverse() {
  return A == stencil::Axis::x ? stencil::Axis::y : stencil::Axis::x;
}

}  // namespace detail

/// The four face moments at one face, normal axis A.
struct FaceMoments {
  double avg_un, jump_un, avg_p, jump_p;
};

/**
 * @brief Face moments of the split or all-speed star states.
 *
 * In the multi-d variant the 1D jumps/averages gain transverse {{.}} averaging
 * and the normal velocity jump is completed to the 9-point divergence, e.g.
 * on x-faces
 *   jump_un = {{[u]_{i+1/2}}}_{j+-1/2}/4 + (dx/dy) [{v}_{i+1/2}]_{j+-1}/4.
 */
template <stencil::Axis A>
inline FaceMoments face_moments(const PrimitiveFields& w, Variant variant, double dx, double dy,
                                int i, int j) {
  using namespace stencil;
  constexpr Axis B = detail::transverse<A>();
  const auto& normal = A == Axis::x ? w.u : w.v;
  const auto& tangential = A == Axis::x ? w.v : w.u;
  const auto un = cells(normal);
  const auto p = cells(w.p);
  if (variant == Variant::split) {
    return {0.5 * sum_half<A>(un)(i, j), diff_half<A>(un)(i, j), 0.5 * sum_half<A>(p)(i, j),
            diff_half<A>(p)(i, j)};
  }
  const double ratio = A == Axis::x ? dx / dy : dy / dx;
  const auto ut = cells(tangential);
  return {0.125 * second_sum<B>(sum_half<A>(un))(i, j),
          0.25 * second_sum<B>(diff_half<A>(un))(i, j) +
              0.25 * ratio * diff_wide<B>(sum_half<A>(ut))(i, j),
          0.125 * second_sum<B>(sum_half<A>(p))(i, j),
          0.25 * second_sum<B>(diff_half<A>(p))(i, j)};
}

/**
 * @brief Relaxation speed a = K max(rho c) over the cells feeding the face.
 *
 * Split faces see their two neighbours; multi-d faces see the 2x3 block.
 */
template <stencil::Axis A>
inline double relaxation_speed(const PrimitiveFields& w, Variant variant, double safety, int i,
                               int j) {
  using stencil::Axis;
  const int di = A == Axis::x ? 1 : 0, dj = A == Axis::y ? 1 : 0;
  double m = std::max(w.impedance(i, j), w.impedance(i + di, j + dj));
  if (variant == Variant::multid) {
    const int ti = A == Axis::y ? 1 : 0, tj = A == Axis::x ? 1 : 0;
    for (int s : {-1, 1}) {
      m = std::max(m, w.impedance(i + s * ti, j + s * tj));
      m = std::max(m, w.impedance(i + di + s * ti, j + dj + s * tj));
    }
  }
  return safety * m;
}

/// Fills moments and relaxation speeds for face family A over `box`.
template <stencil::Axis A>
inline void fill_face_arrays(const PrimitiveFields& w, Variant variant, double safety, double dx,
                             double dy, const Box& box, FaceArrays& out) {
  parallel_rows(box.j0, box.j1, box.i1 - box.i0, [&](int j) {
    for (int i = box.i0; i < box.i1; ++i) {
      const FaceMoments m = face_moments<A>(w, variant, dx, dy, i, j);
      out.avg_un(i, j) = m.avg_un;
      out.jump_un(i, j) = m.jump_un;
      out.avg_p(i, j) = m.avg_p;
      out.jump_p(i, j) = m.jump_p;
      out.a(i, j) = relaxation_speed<A>(w, variant, safety, i, j);
    }
  });
}

/// Per-face relaxation speeds for both face families.
struct FaceSpeeds {
  Array2D<double> x, y;
};

inline FaceSpeeds relaxation_speeds(const Field& f, Variant variant, double gamma,
                                    double safety = kDefaultRelaxationSafety) {
  const PrimitiveFields w = primitive_fields(f, gamma);
  const int nx = f.spec.nx, ny = f.spec.ny;
  FaceSpeeds s{Array2D<double>(nx, ny, kGhostWidth), Array2D<double>(nx, ny, kGhostWidth)};
  for (int j = -1; j <= ny; ++j)
    for (int i = -2; i <= nx; ++i) s.x(i, j) = relaxation_speed<stencil::Axis::x>(w, variant, safety, i, j);
  for (int j = -2; j <= ny; ++j)
    for (int i = -1; i <= nx; ++i) s.y(i, j) = relaxation_speed<stencil::Axis::y>(w, variant, safety, i, j);
  return s;
}

/// Checks every interior cell of `f`; throws StepFailure naming the first bad cell.
inline void require_valid_interior(const Field& f, double gamma) {
  for (int j = 0; j < f.spec.ny; ++j)
    for (int i = 0; i < f.spec.nx; ++i) {
      try {
        (void)cons_to_prim(f(i, j), gamma, i, j);
      } catch (const InvalidStateError& e) {
        throw StepFailure(e.what());
      }
      const auto& q = f(i, j);
      if (!std::isfinite(q.rho_u) || !std::isfinite(q.rho_v) || !std::isfinite(q.e))
        throw StepFailure("non-finite state at cell (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
    }
}

}  // namespace allspeed
