#pragma once

#include <concepts>

#include "allspeed/array2d.hpp"

/**
 * @file stencil.hpp
 * @brief Composable bracket/brace finite-difference operators.
 *
 * A grid function is any callable g(i, j) -> double. Operators take a grid
 * function and an axis and return a new grid function, so stencils like
 * {{ [u]_{i+1/2} }}_{j+-1/2} are spelled
 *
 *     second_sum<Axis::y>(diff_half<Axis::x>(cells(u)))
 *
 * Index conventions along the operator's axis:
 *  - diff_half / sum_half map cell values to faces; the result at index i is
 *    the face i+1/2.
 *  - diff_faces / sum_faces map face values (face i+1/2 stored at i) back to
 *    cells: [f]_{i+-1/2} = f_{i+1/2} - f_{i-1/2}.
 *  - diff_wide, second_diff and second_sum are centred on the input index.
 */
namespace allspeed::stencil {

enum class Axis { x, y };

template <class G>
concept GridFunction = requires(const G& g, int i, int j) {
  { g(i, j) } -> std::convertible_to<double>;
};

/// Value of g shifted by k along axis A.
template <Axis A, GridFunction G>
inline double shifted(const G& g, int i, int j, int k) {
  if constexpr (A == Axis::x)
    return g(i + k, j);
  else
    return g(i, j + k);
}

/// Read-only grid function view of an array.
inline auto cells(const Array2D<double>& a) {
  return [p = &a](int i, int j) { return (*p)(i, j); };
}

/// [q]_{i+1/2} = q_{i+1} - q_i
template <Axis A, GridFunction G>
auto diff_half(G g) {
  return [g](int i, int j) { return shifted<A>(g, i, j, 1) - g(i, j); };
}

/// {q}_{i+1/2} = q_{i+1} + q_i
template <Axis A, GridFunction G>
auto sum_half(G g) {
  return [g](int i, int j) { return shifted<A>(g, i, j, 1) + g(i, j); };
}

/// [q]_{i+-1} = q_{i+1} - q_{i-1}
template <Axis A, GridFunction G>
auto diff_wide(G g) {
  return [g](int i, int j) { return shifted<A>(g, i, j, 1) - shifted<A>(g, i, j, -1); };
}

/// [[q]]_{i+-1/2} = q_{i+1} - 2 q_i + q_{i-1}
template <Axis A, GridFunction G>
auto second_diff(G g) {
  return [g](int i, int j) {
    return shifted<A>(g, i, j, 1) - 2.0 * g(i, j) + shifted<A>(g, i, j, -1);
  };
}

/// {{q}}_{i+-1/2} = q_{i+1} + 2 q_i + q_{i-1}
template <Axis A, GridFunction G>
auto second_sum(G g) {
  return [g](int i, int j) {
    return shifted<A>(g, i, j, 1) + 2.0 * g(i, j) + shifted<A>(g, i, j, -1);
  };
}

/// [f]_{i+-1/2} for a face function f
template <Axis A, GridFunction G>
auto diff_faces(G f) {
  return [f](int i, int j) { return f(i, j) - shifted<A>(f, i, j, -1); };
}

/// {f}_{i+-1/2} for a face function f
template <Axis A, GridFunction G>
auto sum_faces(G f) {
  return [f](int i, int j) { return f(i, j) + shifted<A>(f, i, j, -1); };
}

template <GridFunction G>
auto scaled(G g, double s) {
  return [g, s](int i, int j) { return s * g(i, j); };
}

template <GridFunction G, GridFunction H>
auto plus(G g, H h) {
  return [g, h](int i, int j) { return g(i, j) + h(i, j); };
}

/// Writes g into out over [i0, i1) x [j0, j1).
template <GridFunction G>
void evaluate(const G& g, Array2D<double>& out, int i0, int i1, int j0, int j1) {
  for (int j = j0; j < j1; ++j)
    for (int i = i0; i < i1; ++i) out(i, j) = g(i, j);
}

}  // namespace allspeed::stencil

namespace allspeed {

/// Cell-centred scalars with the same halo as the owning Field.
using CellScalarField = Array2D<double>;
/**
 * Vertex scalars: index (i, j) holds the corner (i+1/2, j+1/2). Operators
 * producing vertex fields fill i in [-1, nx), j in [-1, ny).
 */
using VertexScalarField = Array2D<double>;

/**
 * @brief The 9-point vertex divergence
 * D_{i+1/2,j+1/2} = {[u]_{i+1/2}}_{j+1/2}/(2dx) + [{v}_{i+1/2}]_{j+1/2}/(2dy).
 *
 * Inputs need a valid halo of width >= 1.
 */
inline VertexScalarField discrete_divergence(const CellScalarField& u, const CellScalarField& v,
                                             double dx, double dy) {
  using namespace stencil;
  VertexScalarField out(u.nx(), u.ny(), 1);
  const auto div = plus(scaled(sum_half<Axis::y>(diff_half<Axis::x>(cells(u))), 0.5 / dx),
                        scaled(diff_half<Axis::y>(sum_half<Axis::x>(cells(v))), 0.5 / dy));
  evaluate(div, out, -1, u.nx(), -1, u.ny());
  return out;
}

/// [u]_{i+-1}/(2dx) + [v]_{j+-1}/(2dy), on interior cells.
inline CellScalarField central_divergence(const CellScalarField& u, const CellScalarField& v,
                                          double dx, double dy) {
  using namespace stencil;
  CellScalarField out(u.nx(), u.ny(), u.ghost());
  const auto div = plus(scaled(diff_wide<Axis::x>(cells(u)), 0.5 / dx),
                        scaled(diff_wide<Axis::y>(cells(v)), 0.5 / dy));
  evaluate(div, out, 0, u.nx(), 0, u.ny());
  return out;
}

}  // namespace allspeed
