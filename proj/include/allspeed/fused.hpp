#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "allspeed/euler_common.hpp"
#include "allspeed/euler_lp.hpp"
#include "allspeed/euler_relax.hpp"

/**
 * @file fused.hpp
 * @brief Allocation-free, branch-free versions of lp_step and relax_step.
 *
 * Same arithmetic in the same order as the composed stencil versions, so the
 * results agree bit for bit as long as the compiler does not contract
 * multiply-adds (-ffp-contract=off). The row kernels below run over
 * contiguous cells on structure-of-arrays scratch so they vectorise; error
 * conditions come back as flags and are turned into exceptions afterwards.
 */
namespace allspeed {

namespace fused_detail {

inline double max2(double a, double b) { return a < b ? b : a; }

/// Face moments on raw arrays; `n` steps across the face, `t` along it.
template <bool Multid>
[[gnu::always_inline]] inline FaceMoments moments(const double* __restrict un, const double* __restrict ut,
                           const double* __restrict p, long k, long n, long t, double ratio) {
  if constexpr (!Multid) {
    return {0.5 * (un[k + n] + un[k]), un[k + n] - un[k], 0.5 * (p[k + n] + p[k]), p[k + n] - p[k]};
  } else {
    const long up = k + t, dn = k - t;
    return {0.125 * ((un[up + n] + un[up]) + 2.0 * (un[k + n] + un[k]) + (un[dn + n] + un[dn])),
            0.25 * ((un[up + n] - un[up]) + 2.0 * (un[k + n] - un[k]) + (un[dn + n] - un[dn])) +
                0.25 * ratio * ((ut[up + n] + ut[up]) - (ut[dn + n] + ut[dn])),
            0.125 * ((p[up + n] + p[up]) + 2.0 * (p[k + n] + p[k]) + (p[dn + n] + p[dn])),
            0.25 * ((p[up + n] - p[up]) + 2.0 * (p[k + n] - p[k]) + (p[dn + n] - p[dn]))};
  }
}

template <bool Multid>
[[gnu::always_inline]] inline double speed(const double* __restrict z, long k, long n, long t, double safety) {
  double m = max2(z[k], z[k + n]);
  if constexpr (Multid) {
    m = max2(m, z[k - t]);
    m = max2(m, z[k + n - t]);
    m = max2(m, z[k + t]);
    m = max2(m, z[k + n + t]);
  }
  return safety * m;
}

/// Structure-of-arrays row of conserved quantities or fluxes.
struct SoaRow {
  std::vector<double> rho, mu, mv, e;
  explicit SoaRow(std::size_t n = 0) : rho(n), mu(n), mv(n), e(n) {}
};

/// Primitive variables of `count` cells; returns nonzero if any cell is invalid.
[[gnu::noinline]] inline int prim_row(const ConservedState* __restrict q, double* __restrict rho,
                    double* __restrict u, double* __restrict v, double* __restrict p,
                    double* __restrict z, double* __restrict sp, int count, double gamma) {
  const double gm1 = gamma - 1.0;
  int bad = 0;
  for (int i = 0; i < count; ++i) {
    const double r = q[i].rho;
    const double ui = q[i].rho_u / r, vi = q[i].rho_v / r;
    const double pi = gm1 * (q[i].e - 0.5 * (q[i].rho_u * ui + q[i].rho_v * vi));
    const double c = std::sqrt(gamma * pi / r);
    bad |= !(r > 0.0) | !(pi > 0.0);
    rho[i] = r;
    u[i] = ui;
    v[i] = vi;
    p[i] = pi;
    z[i] = r * c;
    sp[i] = max2(std::abs(ui), std::abs(vi)) + c;
  }
  return bad;
}

/// LP star values u*, p* on `count` faces starting at raw index k0.
template <bool Multid>
[[gnu::noinline]] inline void star_row(const double* __restrict un, const double* __restrict ut,
                     const double* __restrict p, const double* __restrict z,
                     double* __restrict us, double* __restrict ps, long k0, int count, long n,
                     long t, double ratio, double safety) {
  for (int i = 0; i < count; ++i) {
    const long k = k0 + i;
    const FaceMoments m = moments<Multid>(un, ut, p, k, n, t, ratio);
    const double a = speed<Multid>(z, k, n, t, safety);
    us[k] = m.avg_un - m.jump_p / (2.0 * a);
    ps[k] = m.avg_p - 0.5 * a * m.jump_un;
  }
}

/// LP predictor for `count` cells from raw index k0; `q` points at the first cell.
/// Returns nonzero if some L <= 0.
[[gnu::noinline]] inline int predictor_row(const ConservedState* __restrict q, const double* __restrict us,
                         const double* __restrict psx, const double* __restrict vs,
                         const double* __restrict psy, double* __restrict mr,
                         double* __restrict mu, double* __restrict mv, double* __restrict me,
                         long k0, int count, long S, double rx, double ry) {
  int bad = 0;
  for (int i = 0; i < count; ++i) {
    const long k = k0 + i;
    const double L = 1.0 + rx * (us[k] - us[k - 1]) + ry * (vs[k] - vs[k - S]);
    bad |= !(L > 0.0);
    const double work = rx * (us[k] * psx[k] - us[k - 1] * psx[k - 1]) +
                        ry * (vs[k] * psy[k] - vs[k - S] * psy[k - S]);
    mr[k] = q[i].rho / L;
    mu[k] = (q[i].rho_u - rx * (psx[k] - psx[k - 1])) / L;
    mv[k] = (q[i].rho_v - ry * (psy[k] - psy[k - S])) / L;
    me[k] = (q[i].e - work) / L;
  }
  return bad;
}

/// Donor-cell LP fluxes on `count` faces from raw index k0, neighbour offset n.
[[gnu::noinline]] inline void lp_flux_row(const double* __restrict ustar, const double* __restrict pstar,
                        const double* __restrict mr, const double* __restrict mu,
                        const double* __restrict mv, const double* __restrict me,
                        double* __restrict fr, double* __restrict fu, double* __restrict fv,
                        double* __restrict fe, long k0, int count, long n, bool y_face) {
  if (!y_face) {
    for (int i = 0; i < count; ++i) {
      const long k = k0 + i;
      const double s = ustar[k], ps = pstar[k];
      const bool up = s >= 0.0;
      const double r0 = mr[k], r1 = mr[k + n], u0 = mu[k], u1 = mu[k + n];
      const double v0 = mv[k], v1 = mv[k + n], e0 = me[k], e1 = me[k + n];
      fr[i] = s * (up ? r0 : r1);
      fu[i] = s * (up ? u0 : u1) + ps;
      fv[i] = s * (up ? v0 : v1);
      fe[i] = s * (up ? e0 : e1) + s * ps;
    }
  } else {
    for (int i = 0; i < count; ++i) {
      const long k = k0 + i;
      const double s = ustar[k], ps = pstar[k];
      const bool up = s >= 0.0;
      const double r0 = mr[k], r1 = mr[k + n], u0 = mu[k], u1 = mu[k + n];
      const double v0 = mv[k], v1 = mv[k + n], e0 = me[k], e1 = me[k + n];
      fr[i] = s * (up ? r0 : r1);
      fu[i] = s * (up ? u0 : u1);
      fv[i] = s * (up ? v0 : v1) + ps;
      fe[i] = s * (up ? e0 : e1) + s * ps;
    }
  }
}

/**
 * Relaxation fluxes on `count` faces from raw index k0 in the normal frame:
 * fn/ft receive the normal/tangential momentum flux. bad[i] flags faces whose
 * star densities are not positive; the return value is their OR.
 */
template <bool Multid>
[[gnu::noinline]] inline int relax_row(const double* __restrict rho, const double* __restrict un,
                     const double* __restrict ut, const double* __restrict p,
                     const double* __restrict z, double* __restrict fr, double* __restrict fn,
                     double* __restrict ft, double* __restrict fe, int* __restrict bad, long k0,
                     int count, long n, long t, double ratio, double safety, double gamma) {
  const double gm1 = gamma - 1.0;
  int any_bad = 0;
  for (int i = 0; i < count; ++i) {
    const long k = k0 + i, kr = k + n;
    const FaceMoments m = moments<Multid>(un, ut, p, k, n, t, ratio);
    const double a = speed<Multid>(z, k, n, t, safety);
    const double rL = rho[k], uL = un[k], vL = ut[k], pL = p[k];
    const double rR = rho[kr], uR = un[kr], vR = ut[kr], pR = p[kr];
    const double u_star = m.avg_un - m.jump_p / (2.0 * a);
    const double p_star = m.avg_p - 0.5 * a * m.jump_un;
    const double denom_L = 1.0 + rL * m.jump_un / (2.0 * a) - rL * m.jump_p / (2.0 * a * a);
    const double denom_R = 1.0 + rR * m.jump_un / (2.0 * a) + rR * m.jump_p / (2.0 * a * a);
    const int b = !(denom_L > 0.0) | !(denom_R > 0.0);
    bad[i] = b;
    any_bad |= b;
    const double eL = pL / gm1 + 0.5 * rL * (uL * uL + vL * vL);
    const double eR = pR / gm1 + 0.5 * rR * (uR * uR + vR * vR);
    const double sigma_L = uL - a / rL;
    const double sigma_R = uR + a / rR;
    // star state on the side of u*, the outer state, then the choice between them
    const bool left_star = u_star > 0.0;
    const double rho_sL = rL / denom_L, rho_sR = rR / denom_R;
    const double e_sL = eL / rL + (pL * uL - p_star * u_star) / a;
    const double e_sR = eR / rR + (p_star * u_star - pR * uR) / a;
    const double rho_s = left_star ? rho_sL : rho_sR;
    const double spec_e = left_star ? e_sL : e_sR;
    const double vt_s = left_star ? vL : vR;
    const double mass_s = rho_s * u_star;
    const bool outer_left = sigma_L >= 0.0;
    const bool outer = outer_left | (!left_star & !(sigma_R > 0.0));
    const double ro = outer_left ? rL : rR, uo = outer_left ? uL : uR;
    const double vo = outer_left ? vL : vR, po = outer_left ? pL : pR;
    const double eo = po / gm1 + 0.5 * ro * (uo * uo + vo * vo);
    const double mass_o = ro * uo;
    fr[i] = outer ? mass_o : mass_s;
    fn[i] = outer ? mass_o * uo + po : mass_s * u_star + p_star;
    ft[i] = outer ? mass_o * vo : mass_s * vt_s;
    fe[i] = outer ? uo * (eo + po) : mass_s * spec_e + u_star * p_star;
  }
  return any_bad;
}

/// Conservative update of `count` cells; returns nonzero if a result is invalid.
[[gnu::noinline]] inline int update_row(const ConservedState* __restrict q, ConservedState* __restrict o,
                      const double* __restrict xr, const double* __restrict xu,
                      const double* __restrict xv, const double* __restrict xe,
                      const double* __restrict lr, const double* __restrict lu,
                      const double* __restrict lv, const double* __restrict le,
                      const double* __restrict hr, const double* __restrict hu,
                      const double* __restrict hv, const double* __restrict he, int count,
                      double rx, double ry, double gamma) {
  const double gm1 = gamma - 1.0;
  int bad = 0;
  for (int i = 0; i < count; ++i) {
    double r = q[i].rho - rx * (xr[i + 1] - xr[i]);
    double mu = q[i].rho_u - rx * (xu[i + 1] - xu[i]);
    double mv = q[i].rho_v - rx * (xv[i + 1] - xv[i]);
    double e = q[i].e - rx * (xe[i + 1] - xe[i]);
    r -= ry * (hr[i] - lr[i]);
    mu -= ry * (hu[i] - lu[i]);
    mv -= ry * (hv[i] - lv[i]);
    e -= ry * (he[i] - le[i]);
    const double u = mu / r, v = mv / r;
    const double p = gm1 * (e - 0.5 * (mu * u + mv * v));
    bad |= !(r > 0.0) | !(p > 0.0) | !(std::abs(mu) < INFINITY) | !(std::abs(mv) < INFINITY) |
           !(std::abs(e) < INFINITY);
    o[i].rho = r;
    o[i].rho_u = mu;
    o[i].rho_v = mv;
    o[i].e = e;
  }
  return bad;
}

}  // namespace fused_detail

/**
 * @brief Reusable stepper for one grid and one Euler scheme.
 *
 * Call prepare(f) once per state (it computes primitive variables and
 * returns the max signal speed), then step(f, dt, out) any number of times
 * for that state, e.g. when retrying with a smaller dt.
 */
class FusedStepper {
 public:
  FusedStepper(const GridSpec& g, Variant variant, bool lagrange_projection,
               double gamma = kDefaultGamma, double safety = kDefaultRelaxationSafety)
      : g_(g), variant_(variant), lp_(lagrange_projection), gamma_(gamma), safety_(safety),
        rho_(g.nx, g.ny, kGhostWidth), u_(g.nx, g.ny, kGhostWidth), v_(g.nx, g.ny, kGhostWidth),
        p_(g.nx, g.ny, kGhostWidth), z_(g.nx, g.ny, kGhostWidth), us_(g.nx, g.ny, kGhostWidth),
        psx_(g.nx, g.ny, kGhostWidth), vs_(g.nx, g.ny, kGhostWidth), psy_(g.nx, g.ny, kGhostWidth),
        qm_rho_(g.nx, g.ny, kGhostWidth), qm_mu_(g.nx, g.ny, kGhostWidth),
        qm_mv_(g.nx, g.ny, kGhostWidth), qm_e_(g.nx, g.ny, kGhostWidth), row_speed_(g.nx),
        fx_(g.nx + 1), fy_lo_(g.nx), fy_hi_(g.nx), bad_(g.nx + 1) {
    g_.validate();
  }

  [[nodiscard]] const GridSpec& spec() const { return g_; }

  /// Primitive variables of f (interior computed, halo mirrored); returns max(|u|, |v|) + c.
  double prepare(const Field& f) {
    double smax = 0.0;
    for (int j = 0; j < g_.ny; ++j) {
      if (fused_detail::prim_row(&f(0, j), &rho_(0, j), &u_(0, j), &v_(0, j), &p_(0, j), &z_(0, j),
                                 row_speed_.data(), g_.nx, gamma_))
        for (int i = 0; i < g_.nx; ++i) (void)cons_to_prim(f(i, j), gamma_, i, j);
      for (double s : row_speed_) smax = fused_detail::max2(smax, s);
    }
    fill_ghosts(rho_, g_.bc_x, g_.bc_y);
    fill_ghosts(u_, g_.bc_x, g_.bc_y, -1.0, 1.0);
    fill_ghosts(v_, g_.bc_x, g_.bc_y, 1.0, -1.0);
    fill_ghosts(p_, g_.bc_x, g_.bc_y);
    fill_ghosts(z_, g_.bc_x, g_.bc_y);
    max_signal_speed_ = smax;
    return smax;
  }

  [[nodiscard]] double max_signal_speed() const { return max_signal_speed_; }

  /// Advances the prepared state f by dt into out (ghosts filled). Throws StepFailure.
  void step(const Field& f, double dt, Field& out) {
    if (out.spec != g_) out = Field(g_);
    if (lp_) {
      if (variant_ == Variant::multid) lp<true>(f, dt, out);
      else lp<false>(f, dt, out);
    } else {
      if (variant_ == Variant::multid) relax<true>(f, dt, out);
      else relax<false>(f, dt, out);
    }
    out.time = f.time + dt;
    fill_ghosts(out);
  }

 private:
  [[nodiscard]] long stride() const { return g_.nx + 2 * kGhostWidth; }
  [[nodiscard]] long idx(int i, int j) const {
    return static_cast<long>(j + kGhostWidth) * stride() + (i + kGhostWidth);
  }
  static double* raw(Array2D<double>& a) { return a.raw().data(); }

  template <bool Multid>
  void lp(const Field& f, double dt, Field& out) {
    using namespace fused_detail;
    const int nx = g_.nx, ny = g_.ny;
    const long S = stride();
    const double rx = dt / g_.dx, ry = dt / g_.dy;
    const double ratio_x = g_.dx / g_.dy, ratio_y = g_.dy / g_.dx;
    for (int j = -1; j <= ny; ++j)
      star_row<Multid>(raw(u_), raw(v_), raw(p_), raw(z_), raw(us_), raw(psx_), idx(-2, j), nx + 3,
                       1, S, ratio_x, safety_);
    for (int j = -2; j <= ny; ++j)
      star_row<Multid>(raw(v_), raw(u_), raw(p_), raw(z_), raw(vs_), raw(psy_), idx(-1, j), nx + 2,
                       S, 1, ratio_y, safety_);
    for (int j = -1; j <= ny; ++j) {
      if (predictor_row(&f(-1, j), raw(us_), raw(psx_), raw(vs_), raw(psy_), raw(qm_rho_),
                        raw(qm_mu_), raw(qm_mv_), raw(qm_e_), idx(-1, j), nx + 2, S, rx, ry))
        for (int i = -1; i <= nx; ++i) {
          const double L = 1.0 + rx * (us_(i, j) - us_(i - 1, j)) + ry * (vs_(i, j) - vs_(i, j - 1));
          if (!(L > 0.0))
            throw StepFailure("non-positive compression factor L = " + std::to_string(L) +
                              " at cell (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        }
    }
    auto flux_y = [&](int jf, SoaRow& row) {
      lp_flux_row(raw(vs_), raw(psy_), raw(qm_rho_), raw(qm_mu_), raw(qm_mv_), raw(qm_e_),
                  row.rho.data(), row.mu.data(), row.mv.data(), row.e.data(), idx(0, jf), nx, S, true);
    };
    flux_y(-1, fy_lo_);
    for (int j = 0; j < ny; ++j) {
      lp_flux_row(raw(us_), raw(psx_), raw(qm_rho_), raw(qm_mu_), raw(qm_mv_), raw(qm_e_),
                  fx_.rho.data(), fx_.mu.data(), fx_.mv.data(), fx_.e.data(), idx(-1, j), nx + 1, 1,
                  false);
      flux_y(j, fy_hi_);
      update(f, out, j, rx, ry);
      std::swap(fy_lo_, fy_hi_);
    }
  }

  /// Relaxation fluxes of one face row into `row` (Cartesian frame); faces violating
  /// the subcharacteristic condition are redone one by one with a doubled speed.
  template <bool Multid>
  void relax_faces(bool y_face, int j, int i0, int i1, fused_detail::SoaRow& row) {
    const long S = stride(), n = y_face ? S : 1, t = y_face ? 1 : S;
    const double ratio = y_face ? g_.dy / g_.dx : g_.dx / g_.dy;
    const double* un = raw(y_face ? v_ : u_);
    const double* ut = raw(y_face ? u_ : v_);
    double* fn = y_face ? row.mv.data() : row.mu.data();
    double* ft = y_face ? row.mu.data() : row.mv.data();
    const long k0 = idx(i0, j);
    const int count = i1 - i0;
    if (!fused_detail::relax_row<Multid>(raw(rho_), un, ut, raw(p_), raw(z_), row.rho.data(), fn, ft,
                                         row.e.data(), bad_.data(), k0, count, n, t, ratio, safety_,
                                         gamma_))
      return;
    const double *rho = raw(rho_), *p = raw(p_), *z = raw(z_);
    for (int i = 0; i < count; ++i) {
      if (!bad_[i]) continue;
      const long k = k0 + i, kr = k + n;
      const PrimitiveState wL{rho[k], un[k], ut[k], p[k]}, wR{rho[kr], un[kr], ut[kr], p[kr]};
      const FaceMoments m = fused_detail::moments<Multid>(un, ut, p, k, n, t, ratio);
      double a = fused_detail::speed<Multid>(z, k, n, t, safety_);
      for (int attempt = 0;; ++attempt) {
        try {
          const FluxVector fl = relax_interface_flux(relax_star(wL, wR, m, a, gamma_), wL, wR, gamma_);
          row.rho[i] = fl.rho;
          fn[i] = fl.rho_u;
          ft[i] = fl.rho_v;
          row.e[i] = fl.e;
          break;
        } catch (const SubcharacteristicError&) {
          if (attempt == detail::kMaxSpeedDoublings)
            throw StepFailure("subcharacteristic condition still violated after doubling a at face (" +
                              std::to_string(i0 + i) + ", " + std::to_string(j) + ")");
          a *= 2.0;
        }
      }
    }
  }

  template <bool Multid>
  void relax(const Field& f, double dt, Field& out) {
    const int nx = g_.nx, ny = g_.ny;
    const double rx = dt / g_.dx, ry = dt / g_.dy;
    relax_faces<Multid>(true, -1, 0, nx, fy_lo_);
    for (int j = 0; j < ny; ++j) {
      relax_faces<Multid>(false, j, -1, nx, fx_);
      relax_faces<Multid>(true, j, 0, nx, fy_hi_);
      update(f, out, j, rx, ry);
      std::swap(fy_lo_, fy_hi_);
    }
  }

  /// fx_ slot i + 1 holds face i+1/2; fy_lo_ / fy_hi_ hold faces j-1/2 / j+1/2.
  void update(const Field& f, Field& out, int j, double rx, double ry) {
    if (!fused_detail::update_row(&f(0, j), &out(0, j), fx_.rho.data(), fx_.mu.data(), fx_.mv.data(),
                                  fx_.e.data(), fy_lo_.rho.data(), fy_lo_.mu.data(),
                                  fy_lo_.mv.data(), fy_lo_.e.data(), fy_hi_.rho.data(),
                                  fy_hi_.mu.data(), fy_hi_.mv.data(), fy_hi_.e.data(), g_.nx, rx,
                                  ry, gamma_))
      return;
    for (int i = 0; i < g_.nx; ++i) {
      try {
        (void)cons_to_prim(out(i, j), gamma_, i, j);
      } catch (const InvalidStateError& err) {
        throw StepFailure(err.what());
      }
      const ConservedState& q = out(i, j);
      if (!std::isfinite(q.rho_u) || !std::isfinite(q.rho_v) || !std::isfinite(q.e))
        throw StepFailure("non-finite state at cell (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
    }
  }

  GridSpec g_;
  Variant variant_;
  bool lp_;
  double gamma_, safety_;
  double max_signal_speed_ = 0.0;
  CellScalarField rho_, u_, v_, p_, z_;
  Array2D<double> us_, psx_, vs_, psy_;
  Array2D<double> qm_rho_, qm_mu_, qm_mv_, qm_e_;
  std::vector<double> row_speed_;
  fused_detail::SoaRow fx_, fy_lo_, fy_hi_;
  std::vector<int> bad_;
};

}  // namespace allspeed
