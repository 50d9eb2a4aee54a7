#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

/**
 * @file toy.hpp
 * @brief Scalar model dq/dt = -(q - a)/eps integrated with dt = eps * tau.
 */
namespace allspeed {

struct ToyRun {
  double q0 = 1.0;
  double a = 0.0;
  double eps = 1e-2;
  double tau = 0.5;
  int n = 100;

  [[nodiscard]] double dt() const { return eps * tau; }
};

/// q^{n+1} = q^n - tau (q^n - a); returns q^0 .. q^n.
inline std::vector<double> toy_explicit(const ToyRun& run) {
  std::vector<double> q{run.q0};
  q.reserve(run.n + 1);
  for (int k = 0; k < run.n; ++k) q.push_back(q.back() - run.tau * (q.back() - run.a));
  return q;
}

/// q^{n+1} = (q^n + tau a) / (1 + tau)
inline std::vector<double> toy_implicit(const ToyRun& run) {
  std::vector<double> q{run.q0};
  q.reserve(run.n + 1);
  for (int k = 0; k < run.n; ++k) q.push_back((q.back() + run.tau * run.a) / (1.0 + run.tau));
  return q;
}

/// eps tau ln(1/2) / ln|1 - tau|
inline double toy_half_life_formula(double eps, double tau) {
  return eps * tau * std::log(0.5) / std::log(std::abs(1.0 - tau));
}

/**
 * @brief First time |d| drops to |d_0|/2, linearly interpolated between steps.
 *
 * `deviation` is q^n - a. Throws if the sequence never gets there.
 */
inline double half_life(const std::vector<double>& deviation, double dt) {
  if (deviation.empty() || deviation.front() == 0.0)
    throw std::invalid_argument("half_life needs a non-zero initial deviation");
  const double target = 0.5 * std::abs(deviation.front());
  for (std::size_t k = 1; k < deviation.size(); ++k) {
    const double prev = std::abs(deviation[k - 1]), cur = std::abs(deviation[k]);
    if (cur <= target) return dt * (static_cast<double>(k - 1) + (prev - target) / (prev - cur));
  }
  throw std::invalid_argument("sequence does not decay to half its initial deviation");
}

inline double half_life(const std::vector<double>& iterates, double a, double dt) {
  std::vector<double> d(iterates.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = iterates[k] - a;
  return half_life(d, dt);
}

}  // namespace allspeed
