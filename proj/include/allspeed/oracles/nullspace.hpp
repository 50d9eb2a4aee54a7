#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "allspeed/grid.hpp"
#include "allspeed/stencil.hpp"

/**
 * @file nullspace.hpp
 * @brief Random velocity fields in the kernel of the vertex divergence on a
 * periodic grid, by dense Gauss-Jordan elimination.
 *
 * The divergence is assembled here from its corner formula
 *   D = (u_{i+1,j} - u_{i,j} + u_{i+1,j+1} - u_{i,j+1}) / (2 dx)
 *     + (v_{i,j+1} - v_{i,j} + v_{i+1,j+1} - v_{i+1,j}) / (2 dy)
 * without going through the stencil library.
 */
namespace allspeed::oracles {

inline constexpr int kMaxNullspaceGrid = 16;

/// Dense row-major matrix of the periodic vertex divergence; unknowns (u, v), k = j nx + i.
struct DivergenceMatrix {
  int nx, ny, rows, cols;
  std::vector<double> a;

  DivergenceMatrix(int nx_, int ny_, double dx, double dy)
      : nx(nx_), ny(ny_), rows(nx_ * ny_), cols(2 * nx_ * ny_),
        a(static_cast<std::size_t>(rows) * cols, 0.0) {
    auto cell = [&](int i, int j) { return ((j + ny) % ny) * nx + (i + nx) % nx; };
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        double* row = &a[static_cast<std::size_t>(cell(i, j)) * cols];
        const double sx = 0.5 / dx, sy = 0.5 / dy;
        row[cell(i + 1, j)] += sx;
        row[cell(i, j)] -= sx;
        row[cell(i + 1, j + 1)] += sx;
        row[cell(i, j + 1)] -= sx;
        const int off = nx * ny;
        row[off + cell(i, j + 1)] += sy;
        row[off + cell(i, j)] -= sy;
        row[off + cell(i + 1, j + 1)] += sy;
        row[off + cell(i + 1, j)] -= sy;
      }
  }

  [[nodiscard]] std::vector<double> apply(const std::vector<double>& x) const {
    std::vector<double> y(rows, 0.0);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) y[r] += a[static_cast<std::size_t>(r) * cols + c] * x[c];
    return y;
  }
};

/// Reduced row echelon form: pivot column per row and the reduced matrix.
struct Rref {
  int cols = 0;
  std::vector<int> pivot_cols;
  std::vector<double> r;  // rank x cols
  std::vector<int> free_cols;
};

inline Rref reduce(DivergenceMatrix m) {
  const int rows = m.rows, cols = m.cols;
  auto at = [&](int r, int c) -> double& { return m.a[static_cast<std::size_t>(r) * cols + c]; };
  double scale = 0.0;
  for (double x : m.a) scale = std::max(scale, std::abs(x));
  const double tol = 1e-10 * scale;
  Rref out;
  out.cols = cols;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int best = rank;
    for (int r = rank + 1; r < rows; ++r)
      if (std::abs(at(r, c)) > std::abs(at(best, c))) best = r;
    if (std::abs(at(best, c)) <= tol) continue;
    for (int k = 0; k < cols; ++k) std::swap(at(best, k), at(rank, k));
    const double piv = at(rank, c);
    for (int k = 0; k < cols; ++k) at(rank, k) /= piv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || at(r, c) == 0.0) continue;
      const double factor = at(r, c);
      for (int k = 0; k < cols; ++k) at(r, k) -= factor * at(rank, k);
    }
    out.pivot_cols.push_back(c);
    ++rank;
  }
  out.r.assign(m.a.begin(), m.a.begin() + static_cast<std::ptrdiff_t>(rank) * cols);
  std::vector<bool> is_pivot(cols, false);
  for (int c : out.pivot_cols) is_pivot[c] = true;
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[c]) out.free_cols.push_back(c);
  return out;
}

/// Kernel vector with the given free-variable values.
inline std::vector<double> kernel_vector(const Rref& e, const std::vector<double>& free_values) {
  std::vector<double> x(e.cols, 0.0);
  for (std::size_t k = 0; k < e.free_cols.size(); ++k) x[e.free_cols[k]] = free_values[k];
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
    double s = 0.0;
    for (int f : e.free_cols) s += e.r[r * e.cols + f] * x[f];
    x[e.pivot_cols[r]] = -s;
  }
  return x;
}

inline int nullspace_dimension(int nx, int ny, double dx, double dy) {
  return static_cast<int>(reduce(DivergenceMatrix(nx, ny, dx, dy)).free_cols.size());
}

struct NullspaceSample {
  CellScalarField u, v;  // halo filled periodically
  double residual = 0.0;  // max |D| from the assembled matrix
  int dimension = 0;
};

/// Random combination of kernel vectors, scaled to max |component| = 1.
inline NullspaceSample divergence_nullspace_sample(int nx, int ny, double dx, double dy,
                                                   std::uint64_t seed) {
  if (nx > kMaxNullspaceGrid || ny > kMaxNullspaceGrid || nx < 3 || ny < 3)
    throw std::invalid_argument("null-space sampler supports 3..16 cells per direction");
  const DivergenceMatrix m(nx, ny, dx, dy);
  const Rref e = reduce(m);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> c(e.free_cols.size());
  for (double& x : c) x = normal(rng);
  std::vector<double> x = kernel_vector(e, c);
  double mx = 0.0;
  for (double xi : x) mx = std::max(mx, std::abs(xi));
  for (double& xi : x) xi /= mx;

  NullspaceSample s{CellScalarField(nx, ny, kGhostWidth), CellScalarField(nx, ny, kGhostWidth), 0.0,
                    static_cast<int>(e.free_cols.size())};
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      s.u(i, j) = x[j * nx + i];
      s.v(i, j) = x[nx * ny + j * nx + i];
    }
  fill_ghosts(s.u, BoundaryKind::periodic, BoundaryKind::periodic);
  fill_ghosts(s.v, BoundaryKind::periodic, BoundaryKind::periodic);
  for (double y : m.apply(x)) s.residual = std::max(s.residual, std::abs(y));
  return s;
}

}  // namespace allspeed::oracles
