#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "allspeed/array2d.hpp"

namespace allspeed {

inline constexpr double kDefaultGamma = 1.4;
/// Halo width: the 9-point star stencils plus one ring for the LP predictor.
inline constexpr int kGhostWidth = 2;

enum class BoundaryKind { periodic, zero_gradient, wall };

inline std::string_view to_string(BoundaryKind bc) {
  switch (bc) {
    case BoundaryKind::periodic: return "periodic";
    case BoundaryKind::zero_gradient: return "zero-gradient";
    case BoundaryKind::wall: return "wall";
  }
  return "?";
}

/// A state that violates rho > 0 or p > 0; carries the offending cell.
class InvalidStateError : public std::runtime_error {
 public:
  InvalidStateError(int i, int j, const std::string& what)
      : std::runtime_error("invalid state at cell (" + std::to_string(i) + ", " +
                           std::to_string(j) + "): " + what),
        i_(i), j_(j) {}
  [[nodiscard]] int i() const { return i_; }
  [[nodiscard]] int j() const { return j_; }

 private:
  int i_, j_;
};

struct GridSpec {
  int nx = 0;
  int ny = 0;
  double dx = 0.0;
  double dy = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  BoundaryKind bc_x = BoundaryKind::periodic;
  BoundaryKind bc_y = BoundaryKind::periodic;

  /// Uniform grid covering [x0, x0 + lx] x [y0, y0 + ly].
  static GridSpec uniform(int nx, int ny, double lx, double ly, double x0 = 0.0,
                          double y0 = 0.0, BoundaryKind bc_x = BoundaryKind::periodic,
                          BoundaryKind bc_y = BoundaryKind::periodic) {
    GridSpec g{nx, ny, lx / nx, ly / ny, x0, y0, bc_x, bc_y};
    g.validate();
    return g;
  }

  void validate() const {
    if (nx < 3 || ny < 3) throw std::invalid_argument("grid needs nx, ny >= 3");
    if (!(dx > 0.0) || !(dy > 0.0)) throw std::invalid_argument("grid needs dx, dy > 0");
  }

  [[nodiscard]] double xc(int i) const { return x0 + (i + 0.5) * dx; }
  [[nodiscard]] double yc(int j) const { return y0 + (j + 0.5) * dy; }
  [[nodiscard]] int cells() const { return nx * ny; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct ConservedState {
  double rho = 0.0;
  double rho_u = 0.0;
  double rho_v = 0.0;
  double e = 0.0;

  ConservedState& operator+=(const ConservedState& o) {
    rho += o.rho; rho_u += o.rho_u; rho_v += o.rho_v; e += o.e;
    return *this;
  }
  ConservedState& operator-=(const ConservedState& o) {
    rho -= o.rho; rho_u -= o.rho_u; rho_v -= o.rho_v; e -= o.e;
    return *this;
  }
  ConservedState& operator*=(double s) {
    rho *= s; rho_u *= s; rho_v *= s; e *= s;
    return *this;
  }
  friend ConservedState operator+(ConservedState a, const ConservedState& b) { return a += b; }
  friend ConservedState operator-(ConservedState a, const ConservedState& b) { return a -= b; }
  friend ConservedState operator*(double s, ConservedState a) { return a *= s; }
  friend bool operator==(const ConservedState&, const ConservedState&) = default;

  [[nodiscard]] double operator[](int k) const {
    switch (k) {
      case 0: return rho;
      case 1: return rho_u;
      case 2: return rho_v;
      default: return e;
    }
  }
};

struct PrimitiveState {
  double rho = 0.0;
  double u = 0.0;
  double v = 0.0;
  double p = 0.0;
  friend bool operator==(const PrimitiveState&, const PrimitiveState&) = default;
};

/// Ideal-gas inversion e = p/(gamma-1) + rho|v|^2/2. Throws on rho <= 0 or p <= 0.
inline PrimitiveState cons_to_prim(const ConservedState& q, double gamma = kDefaultGamma,
                                   int i = 0, int j = 0) {
  if (!(q.rho > 0.0)) throw InvalidStateError(i, j, "non-positive density");
  const double u = q.rho_u / q.rho;
  const double v = q.rho_v / q.rho;
  const double p = (gamma - 1.0) * (q.e - 0.5 * (q.rho_u * u + q.rho_v * v));
  if (!(p > 0.0)) throw InvalidStateError(i, j, "non-positive pressure");
  return {q.rho, u, v, p};
}

inline ConservedState prim_to_cons(const PrimitiveState& w, double gamma = kDefaultGamma) {
  if (!(w.rho > 0.0) || !(w.p > 0.0))
    throw InvalidStateError(0, 0, "primitive state needs rho > 0 and p > 0");
  return {w.rho, w.rho * w.u, w.rho * w.v,
          w.p / (gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v)};
}

struct SoundSpeedMach {
  double c;
  double mach;
};

inline SoundSpeedMach sound_speed_and_mach(const PrimitiveState& w, double gamma = kDefaultGamma) {
  const double c = std::sqrt(gamma * w.p / w.rho);
  return {c, std::hypot(w.u, w.v) / c};
}

/// Exact Euler flux in the x direction (normal velocity u).
inline ConservedState euler_flux_x(const PrimitiveState& w, double gamma = kDefaultGamma) {
  const ConservedState q = prim_to_cons(w, gamma);
  return {q.rho_u, q.rho_u * w.u + w.p, q.rho_v * w.u, w.u * (q.e + w.p)};
}

/// Cell-centred conserved states with a ghost halo of width kGhostWidth.
struct Field {
  GridSpec spec;
  Array2D<ConservedState> data;
  double time = 0.0;

  Field() = default;
  explicit Field(const GridSpec& s) : spec(s), data(s.nx, s.ny, kGhostWidth) { s.validate(); }

  ConservedState& operator()(int i, int j) { return data(i, j); }
  const ConservedState& operator()(int i, int j) const { return data(i, j); }

  [[nodiscard]] ConservedState total() const {
    ConservedState s;
    for_each_interior(data, [&](int i, int j) { s += data(i, j); });
    return s;
  }
};

namespace detail {

/// Source index for ghost `k` along an axis of length n (k < 0 or k >= n).
inline int ghost_source(int k, int n, BoundaryKind bc) {
  switch (bc) {
    case BoundaryKind::periodic: return ((k % n) + n) % n;
    case BoundaryKind::zero_gradient: return k < 0 ? 0 : n - 1;
    case BoundaryKind::wall: return k < 0 ? -k - 1 : 2 * n - 1 - k;
  }
  return 0;
}

}  // namespace detail

/**
 * @brief Fills the halo of `a` from its interior.
 *
 * `reflect_x` / `reflect_y` are applied to values copied through a wall in
 * the respective direction (e.g. negating the normal momentum). The x halo is
 * filled first over interior rows, then the y halo over full rows so that the
 * corners are consistent.
 */
template <class T, class ReflectX, class ReflectY>
void fill_ghosts(Array2D<T>& a, BoundaryKind bc_x, BoundaryKind bc_y, ReflectX reflect_x,
                 ReflectY reflect_y) {
  const int nx = a.nx(), ny = a.ny(), g = a.ghost();
  for (int j = 0; j < ny; ++j) {
    for (int k = 1; k <= g; ++k) {
      for (int i : {-k, nx - 1 + k}) {
        T value = a(detail::ghost_source(i, nx, bc_x), j);
        if (bc_x == BoundaryKind::wall) value = reflect_x(value);
        a(i, j) = value;
      }
    }
  }
  for (int k = 1; k <= g; ++k) {
    for (int j : {-k, ny - 1 + k}) {
      const int src = detail::ghost_source(j, ny, bc_y);
      for (int i = -g; i < nx + g; ++i) {
        T value = a(i, src);
        if (bc_y == BoundaryKind::wall) value = reflect_y(value);
        a(i, j) = value;
      }
    }
  }
}

/// Scalar fields: `parity_x` / `parity_y` multiply values mirrored through walls.
inline void fill_ghosts(Array2D<double>& a, BoundaryKind bc_x, BoundaryKind bc_y,
                        double parity_x = 1.0, double parity_y = 1.0) {
  fill_ghosts(
      a, bc_x, bc_y, [=](double v) { return parity_x * v; },
      [=](double v) { return parity_y * v; });
}

inline void fill_ghosts(Field& f) {
  fill_ghosts(
      f.data, f.spec.bc_x, f.spec.bc_y,
      [](ConservedState q) { q.rho_u = -q.rho_u; return q; },
      [](ConservedState q) { q.rho_v = -q.rho_v; return q; });
}

}  // namespace allspeed
