#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace allspeed;

TEST(Gresho, PeakMachEqualsEps) {
  for (double eps : {1e-1, 1e-2, 1e-4}) {
    const Field f = gresho(40, 40, eps);
    EXPECT_NEAR(measure(f, eps).max_mach, eps, 0.03 * eps);
    const double p0 = gresho_background_pressure(eps);
    EXPECT_DOUBLE_EQ(p0, 1.0 / (1.4 * eps * eps) - 0.5);
  }
}

TEST(Gresho, Profiles) {
  EXPECT_DOUBLE_EQ(gresho_vphi(0.1), 0.5);
  EXPECT_DOUBLE_EQ(gresho_vphi(0.3), 0.5);
  EXPECT_DOUBLE_EQ(gresho_vphi(0.5), 0.0);
  // pressure is continuous at both kinks and balances the centrifugal force
  for (double r : {0.2, 0.4})
    EXPECT_NEAR(gresho_pressure(r - 1e-12, 0.0), gresho_pressure(r + 1e-12, 0.0), 1e-9);
  for (double r : {0.1, 0.25, 0.35}) {
    const double h = 1e-6;
    const double dp = (gresho_pressure(r + h, 0.0) - gresho_pressure(r - h, 0.0)) / (2.0 * h);
    EXPECT_NEAR(dp, gresho_vphi(r) * gresho_vphi(r) / r, 1e-6);
  }
}

TEST(Gresho, StateIsRotational) {
  const PrimitiveState w = gresho_state(0.6, 0.5, 0.5, 0.5, 10.0);
  EXPECT_DOUBLE_EQ(w.u, 0.0);
  EXPECT_DOUBLE_EQ(w.v, 0.5);
  EXPECT_DOUBLE_EQ(w.rho, 1.0);
}

TEST(Problems, RadialSod) {
  const Field f = radial_sod(20, 20);
  EXPECT_EQ(f.spec.bc_x, BoundaryKind::zero_gradient);
  const GridSpec& g = f.spec;
  const double xc = g.x0 + 0.5 * g.nx * g.dx, yc = g.y0 + 0.5 * g.ny * g.dy;
  for (int j = 0; j < 20; ++j)
    for (int i = 0; i < 20; ++i) {
      const bool inside = std::hypot(g.xc(i) - xc, g.yc(j) - yc) < 0.3;
      EXPECT_EQ(f(i, j), prim_to_cons(inside ? kSodLeft : kSodRight));
    }
}

TEST(Problems, KelvinHelmholtz) {
  const Field f = kelvin_helmholtz(40, 20);
  EXPECT_DOUBLE_EQ(f.spec.dx, 2.0 / 40);
  EXPECT_DOUBLE_EQ(f.spec.dy, 1.0 / 20);
  const PrimitiveState inner = cons_to_prim(f(0, 10)), outer = cons_to_prim(f(0, 1));
  EXPECT_DOUBLE_EQ(inner.rho, 1.01);
  EXPECT_DOUBLE_EQ(inner.u, -0.1);
  EXPECT_DOUBLE_EQ(outer.rho, 1.0);
  EXPECT_DOUBLE_EQ(outer.u, 0.1);
  EXPECT_NEAR(inner.p, 1.0 / 1.4, 1e-15);
  EXPECT_NEAR(sound_speed_and_mach(outer).c, 1.0, 1e-15);
}

TEST(Problems, Sod1d) {
  const Field f = sod_1d(100);
  EXPECT_EQ(f.spec.ny, 3);
  EXPECT_EQ(f(49, 0), prim_to_cons(kSodLeft));
  EXPECT_EQ(f(50, 2), prim_to_cons(kSodRight));
}

TEST(Problems, SoundWave) {
  const double eps = 0.1;
  const Field f = gresho_with_sound_wave(40, 40, eps);
  EXPECT_DOUBLE_EQ(f.spec.dx, 0.05);
  EXPECT_EQ(f.spec.bc_y, BoundaryKind::zero_gradient);
  const SoundWave wave = gresho_sound_wave(eps);
  // far from the vortex the pulse is a simple right-going wave: du = dp / (rho c), drho = dp / c^2
  const int i = 3, j = 38;
  const PrimitiveState w = cons_to_prim(f(i, j));
  const double dp = wave.dp(f.spec.xc(i));
  EXPECT_GT(dp, 1.0);
  EXPECT_NEAR(w.u, dp / wave.c_inf, 1e-12);
  EXPECT_NEAR(w.rho, 1.0 + dp / (wave.c_inf * wave.c_inf), 1e-12);
  EXPECT_NEAR(w.p - dp, gresho_pressure(1.0, gresho_background_pressure(eps)), 1e-9);
}

TEST(Problems, ByName) {
  for (const auto& name : problem_names()) {
    const Field f = make_problem({name, 0.1, 16, 16});
    EXPECT_GT(f.spec.cells(), 0) << name;
  }
  EXPECT_THROW((void)make_problem({"nope", 0.1, 16, 16}), std::invalid_argument);
}
