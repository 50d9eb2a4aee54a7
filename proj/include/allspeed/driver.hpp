#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "allspeed/acoustics.hpp"
#include "allspeed/diagnostics.hpp"
#include "allspeed/euler_common.hpp"
#include "allspeed/euler_lp.hpp"
#include "allspeed/euler_relax.hpp"
#include "allspeed/fused.hpp"
#include "allspeed/io.hpp"

namespace allspeed {

enum class Scheme { lp_split, lp_multid, relax_split, relax_multid, acoustic_split, acoustic_multid };

inline const std::vector<std::pair<std::string, Scheme>>& scheme_table() {
  static const std::vector<std::pair<std::string, Scheme>> t{
      {"lp-split", Scheme::lp_split},           {"lp-multid", Scheme::lp_multid},
      {"relax-split", Scheme::relax_split},     {"relax-multid", Scheme::relax_multid},
      {"acoustic-split", Scheme::acoustic_split}, {"acoustic-multid", Scheme::acoustic_multid}};
  return t;
}

inline std::string to_string(Scheme s) {
  for (const auto& [name, v] : scheme_table())
    if (v == s) return name;
  return "?";
}

inline std::string scheme_list() {
  std::string out;
  for (const auto& [name, v] : scheme_table()) out += (out.empty() ? "" : ", ") + name;
  return out;
}

inline Scheme parse_scheme(const std::string& name) {
  for (const auto& [n, v] : scheme_table())
    if (n == name) return v;
  throw std::invalid_argument("unknown scheme '" + name + "' (valid: " + scheme_list() + ")");
}

inline bool is_acoustic(Scheme s) {
  return s == Scheme::acoustic_split || s == Scheme::acoustic_multid;
}

inline bool is_multid(Scheme s) {
  return s == Scheme::lp_multid || s == Scheme::relax_multid || s == Scheme::acoustic_multid;
}

struct SchemeConfig {
  Scheme scheme = Scheme::lp_multid;
  double cfl = 0.9;
  double gamma = kDefaultGamma;
  double a_safety = kDefaultRelaxationSafety;
  double t_end = 0.0;
  double dump_every = 0.0;  // 0: dump only the initial and final states
  double diag_every = 0.0;  // 0: diagnostics only at start and end
  double eps_report = 1.0;

  void validate() const {
    if (!(cfl > 0.0)) throw std::invalid_argument("cfl must be positive");
    if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be non-negative");
    if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
    if (!(a_safety >= 1.0)) throw std::invalid_argument("relaxation safety factor must be >= 1");
    if (dump_every < 0.0 || diag_every < 0.0)
      throw std::invalid_argument("output intervals must be non-negative");
  }
};

/// cfl * min(dx, dy) / max over cells of max(|u|, |v|) + c
inline double compute_dt(const PrimitiveFields& w, const GridSpec& g, double cfl) {
  return cfl * std::min(g.dx, g.dy) / w.max_signal_speed;
}

inline double compute_dt(const Field& f, double cfl, double gamma = kDefaultGamma) {
  return compute_dt(primitive_fields(f, gamma), f.spec, cfl);
}

/**
 * Linear acoustics run on an Euler field: density is frozen, (u, v, p) evolve
 * with the constant sound speed of the mean initial state.
 */
struct AcousticBackground {
  double c = 1.0;

  static AcousticBackground of(const Field& f, double gamma) {
    ConservedState tot = f.total();
    double p_sum = 0.0;
    for_each_interior(f.data, [&](int i, int j) { p_sum += cons_to_prim(f(i, j), gamma, i, j).p; });
    const double n = f.spec.cells();
    return {std::sqrt(gamma * (p_sum / n) / (tot.rho / n))};
  }
  [[nodiscard]] AcousticParams params(const GridSpec& g) const {
    return {c, 1.0, g.dx, g.dy, g.bc_x, g.bc_y};
  }
};

inline Field acoustic_field_step(const Field& f, double dt, bool multid, double gamma,
                                 const AcousticBackground& bg) {
  const GridSpec& g = f.spec;
  AcousticState s(g.nx, g.ny);
  for_each_interior(f.data, [&](int i, int j) {
    const PrimitiveState w = cons_to_prim(f(i, j), gamma, i, j);
    s.u(i, j) = w.u;
    s.v(i, j) = w.v;
    s.p(i, j) = w.p;
  });
  const AcousticParams prm = bg.params(g);
  fill_ghosts(s, prm);
  const AcousticState n = acoustic_step(s, prm, dt, multid);
  Field out(g);
  out.time = f.time + dt;
  for_each_interior(f.data, [&](int i, int j) {
    const double rho = f(i, j).rho;
    if (!(n.p(i, j) > 0.0))
      throw StepFailure("non-positive pressure at cell (" + std::to_string(i) + ", " +
                        std::to_string(j) + ")");
    out(i, j) = prim_to_cons({rho, n.u(i, j), n.v(i, j), n.p(i, j)}, gamma);
  });
  fill_ghosts(out);
  return out;
}

/// One forward-Euler step of an Euler scheme; throws StepFailure.
inline Field euler_step(const Field& f, const PrimitiveFields& w, double dt, const SchemeConfig& cfg) {
  switch (cfg.scheme) {
    case Scheme::lp_split: return lp_step(f, w, dt, Variant::split, cfg.gamma, cfg.a_safety);
    case Scheme::lp_multid: return lp_step(f, w, dt, Variant::multid, cfg.gamma, cfg.a_safety);
    case Scheme::relax_split: return relax_step(f, w, dt, Variant::split, cfg.gamma, cfg.a_safety);
    case Scheme::relax_multid: return relax_step(f, w, dt, Variant::multid, cfg.gamma, cfg.a_safety);
    default: throw std::invalid_argument("euler_step: " + to_string(cfg.scheme) + " is not an Euler scheme");
  }
}

inline Field euler_step(const Field& f, double dt, const SchemeConfig& cfg) {
  return euler_step(f, primitive_fields(f, cfg.gamma), dt, cfg);
}

inline constexpr int kMaxDtHalvings = 10;

struct RunRecord {
  long steps = 0;
  long dt_halvings = 0;
  double wall_seconds = 0.0;
  std::vector<DiagnosticsRecord> diagnostics;
  std::vector<std::string> dumps;
  bool failed = false;
  std::string failure;
  Field final_field;
};

namespace detail {

class OutputClock {
 public:
  explicit OutputClock(double every) : every_(every) {}
  /// Next output time after t (infinity when no cadence).
  [[nodiscard]] double next_after(double t) const {
    if (!(every_ > 0.0)) return std::numeric_limits<double>::infinity();
    const double k = std::floor(t / every_ * (1.0 + 1e-12)) + 1.0;
    return k * every_;
  }

 private:
  double every_;
};

inline bool reached(double t, double target) {
  return t >= target - 1e-12 * std::max(1.0, std::abs(target));
}

}  // namespace detail

/**
 * @brief Forward-Euler integration of `initial` to cfg.t_end.
 *
 * Time steps are clipped to land on output times and t_end. A failed step is
 * retried with dt/2 up to kMaxDtHalvings times; after that the run stops,
 * records the failure and dumps the last valid state. With an empty
 * `out_dir` nothing is written to disk.
 */
inline RunRecord run(const SchemeConfig& cfg, const Field& initial, const std::string& out_dir = "") {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  double last_dump_time = -1.0;
  auto dump = [&](const Field& f) {
    last_dump_time = f.time;
    if (out_dir.empty()) return;
    char name[32];
    std::snprintf(name, sizeof name, "dump_%04zu.txt", rec.dumps.size());
    const std::string path = (std::filesystem::path(out_dir) / name).string();
    write_dump(path, f);
    rec.dumps.push_back(path);
  };
  auto diagnose = [&](const Field& f) { rec.diagnostics.push_back(measure(f, cfg.eps_report, cfg.gamma)); };
  auto finish = [&](const Field& f) {
    rec.final_field = f;
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!out_dir.empty())
      write_csv((std::filesystem::path(out_dir) / "diagnostics.csv").string(),
                diagnostics_table(rec.diagnostics));
    return rec;
  };

  const bool acoustic = is_acoustic(cfg.scheme);
  const AcousticBackground bg = acoustic ? AcousticBackground::of(initial, cfg.gamma) : AcousticBackground{};
  const detail::OutputClock diag_clock(cfg.diag_every), dump_clock(cfg.dump_every);

  Field f = initial;
  fill_ghosts(f);
  diagnose(f);
  dump(f);
  double next_diag = diag_clock.next_after(f.time), next_dump = dump_clock.next_after(f.time);

  std::optional<FusedStepper> stepper;
  if (!acoustic)
    stepper.emplace(f.spec, is_multid(cfg.scheme) ? Variant::multid : Variant::split,
                    cfg.scheme == Scheme::lp_split || cfg.scheme == Scheme::lp_multid, cfg.gamma,
                    cfg.a_safety);
  Field next(f.spec);
  while (!detail::reached(f.time, cfg.t_end)) {
    double dt = acoustic ? acoustic_dt(bg.params(f.spec), cfg.cfl)
                         : cfg.cfl * std::min(f.spec.dx, f.spec.dy) / stepper->prepare(f);
    const double target = std::min({cfg.t_end, next_diag, next_dump});
    bool clipped = false;
    if (detail::reached(f.time + dt, target)) {
      dt = target - f.time;
      clipped = true;
    }
    for (int attempt = 0;; ++attempt) {
      try {
        if (acoustic)
          next = acoustic_field_step(f, dt, cfg.scheme == Scheme::acoustic_multid, cfg.gamma, bg);
        else
          stepper->step(f, dt, next);
        break;
      } catch (const StepFailure& e) {
        if (attempt == kMaxDtHalvings) {
          rec.failed = true;
          rec.failure = "step " + std::to_string(rec.steps + 1) + " at t = " + format_number(f.time) +
                        " failed after " + std::to_string(kMaxDtHalvings) + " dt halvings: " + e.what();
          dump(f);
          return finish(f);
        }
        dt *= 0.5;
        clipped = false;
        ++rec.dt_halvings;
      }
    }
    if (clipped) next.time = target;
    std::swap(f, next);
    ++rec.steps;
    if (detail::reached(f.time, next_diag)) {
      diagnose(f);
      next_diag = diag_clock.next_after(f.time);
    }
    if (detail::reached(f.time, next_dump)) {
      dump(f);
      next_dump = dump_clock.next_after(f.time);
    }
  }
  if (rec.diagnostics.back().time != f.time) diagnose(f);
  if (last_dump_time != f.time) dump(f);
  return finish(f);
}

}  // namespace allspeed
