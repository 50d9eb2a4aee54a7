#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace allspeed;
using fixtures::max_diff;

namespace {

double relative_drift(const ConservedState& a, const ConservedState& b, const ConservedState& scale) {
  double m = 0.0;
  for (int c = 0; c < 4; ++c) m = std::max(m, std::abs(a[c] - b[c]) / std::max(std::abs(scale[c]), 1.0));
  return m;
}

}  // namespace

class LpVariants : public ::testing::TestWithParam<Variant> {};

TEST_P(LpVariants, UniformFlowIsPreserved) {
  const GridSpec g = GridSpec::uniform(7, 9, 1.0, 2.0);
  const Field f = fixtures::field_from(g, [](double, double) { return PrimitiveState{1.3, 0.4, -0.7, 2.0}; });
  const double dt = compute_dt(f, 0.5);
  const Field n = lp_step(f, dt, GetParam());
  EXPECT_LT(max_diff(f, n), 1e-13);
  EXPECT_DOUBLE_EQ(n.time, dt);
}

TEST_P(LpVariants, ConservesOnPeriodicGrid) {
  const GridSpec g = GridSpec::uniform(12, 10, 1.0, 1.0);
  Field f = fixtures::random_field(g, 11);
  const ConservedState t0 = f.total();
  for (int k = 0; k < 5; ++k) f = lp_step(f, compute_dt(f, 0.2), GetParam());
  EXPECT_LT(relative_drift(f.total(), t0, t0), 1e-13);
}

TEST_P(LpVariants, MirrorSymmetry) {
  // reflecting x -> -x maps the solution onto itself with u negated
  const GridSpec g = GridSpec::uniform(10, 8, 1.0, 1.0);
  const Field f = fixtures::random_field(g, 5);
  Field m(g);
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 10; ++i) {
      ConservedState q = f(9 - i, j);
      q.rho_u = -q.rho_u;
      m(i, j) = q;
    }
  fill_ghosts(m);
  const double dt = 0.2 * compute_dt(f, 1.0);
  const Field a = lp_step(f, dt, GetParam()), b = lp_step(m, dt, GetParam());
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 10; ++i) {
      const ConservedState& p = a(9 - i, j);
      const ConservedState& q = b(i, j);
      EXPECT_NEAR(p.rho, q.rho, 1e-13);
      EXPECT_NEAR(p.rho_u, -q.rho_u, 1e-13);
      EXPECT_NEAR(p.rho_v, q.rho_v, 1e-13);
      EXPECT_NEAR(p.e, q.e, 1e-13);
    }
}

TEST_P(LpVariants, TransposeSymmetry) {
  // swapping x and y (and u and v) on a square grid commutes with the step
  const GridSpec g = GridSpec::uniform(9, 9, 1.0, 1.0);
  const Field f = fixtures::random_field(g, 8);
  Field t(g);
  for (int j = 0; j < 9; ++j)
    for (int i = 0; i < 9; ++i) {
      const ConservedState& q = f(j, i);
      t(i, j) = {q.rho, q.rho_v, q.rho_u, q.e};
    }
  fill_ghosts(t);
  const double dt = 0.2 * compute_dt(f, 1.0);
  const Field a = lp_step(f, dt, GetParam()), b = lp_step(t, dt, GetParam());
  for (int j = 0; j < 9; ++j)
    for (int i = 0; i < 9; ++i) {
      EXPECT_NEAR(a(j, i).rho_u, b(i, j).rho_v, 1e-13);
      EXPECT_NEAR(a(j, i).e, b(i, j).e, 1e-13);
    }
}

INSTANTIATE_TEST_SUITE_P(Both, LpVariants, ::testing::Values(Variant::split, Variant::multid));

TEST(LpStars, SplitFormula) {
  const GridSpec g = GridSpec::uniform(6, 4, 1.0, 1.0);
  const Field f = fixtures::field_from(g, [](double x, double) {
    return x < 0.5 ? PrimitiveState{1.0, 0.2, 0.1, 1.0} : PrimitiveState{0.5, -0.3, 0.0, 0.4};
  });
  FaceSpeeds a{Array2D<double>(6, 4, kGhostWidth, 2.0), Array2D<double>(6, 4, kGhostWidth, 2.0)};
  const LpStarFaces s = lp_star_split(f, a);
  // face between cells 2 and 3
  EXPECT_NEAR(s.u_star(2, 1), 0.5 * (0.2 - 0.3) - (0.4 - 1.0) / 4.0, 1e-15);
  EXPECT_NEAR(s.p_star_x(2, 1), 0.5 * (1.0 + 0.4) - 1.0 * (-0.3 - 0.2), 1e-15);
  // y-faces see no jump, so the star state is the cell state
  EXPECT_NEAR(s.v_star(2, 1), 0.1, 1e-15);
  EXPECT_NEAR(s.p_star_y(2, 1), 1.0, 1e-15);
}

TEST(LpStars, MultidJumpCarriesTransverseDivergence) {
  // u = 0, v = y on a uniform-pressure field: x-face p* sees {v} jumps along y
  const GridSpec g = GridSpec::uniform(6, 6, 1.0, 1.0);
  const Field f = fixtures::field_from(g, [](double, double y) { return PrimitiveState{1.0, 0.0, y, 1.0}; });
  FaceSpeeds a{Array2D<double>(6, 6, kGhostWidth, 2.0), Array2D<double>(6, 6, kGhostWidth, 2.0)};
  const LpStarFaces split = lp_star_split(f, a), multid = lp_star_multid(f, a);
  EXPECT_NEAR(split.p_star_x(2, 2), 1.0, 1e-15);
  // jump_un = (dx/dy) [{v}]_{j+-1} / 4 = 4 dy / 4 = dy; p* = 1 - a/2 dy
  EXPECT_NEAR(multid.p_star_x(2, 2), 1.0 - g.dy, 1e-14);
}

TEST(LpPredictor, RejectsOvercompression) {
  const GridSpec g = GridSpec::uniform(8, 4, 1.0, 1.0, 0.0, 0.0, BoundaryKind::zero_gradient,
                                       BoundaryKind::periodic);
  const Field f = fixtures::field_from(g, [](double x, double) {
    return PrimitiveState{1.0, x < 0.5 ? 2.0 : -2.0, 0.0, 1.0};
  });
  EXPECT_THROW((void)lp_step(f, 10.0 * compute_dt(f, 1.0), Variant::split), StepFailure);
  EXPECT_NO_THROW((void)lp_step(f, compute_dt(f, 0.4), Variant::split));
}
