#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

#include "dedup/random.hpp"

namespace dedup {

inline double beta_log_pdf(double x, double a, double b) {
  if (!(x > 0.0 && x < 1.0)) return -std::numeric_limits<double>::infinity();
  return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

// Density of Beta(a, b) restricted to [lambda, 1].
inline double truncated_beta_log_pdf(double x, double a, double b, double lambda) {
  if (x < lambda || !(x < 1.0)) return -std::numeric_limits<double>::infinity();
  if (lambda <= 0.0) return beta_log_pdf(x, a, b);
  double tail = boost::math::ibetac(a, b, lambda);
  return beta_log_pdf(x, a, b) - std::log(tail);
}

// Gamma-ratio Beta draw.
inline double sample_beta(double a, double b, Rng& rng) {
  std::gamma_distribution<double> ga(a, 1.0), gb(b, 1.0);
  for (;;) {
    double x = ga(rng), y = gb(rng);
    double s = x + y;
    if (s > 0.0) {
      double v = x / s;
      if (v > 0.0 && v < 1.0) return v;
    }
  }
}

inline constexpr int kTruncatedBetaMaxRejections = 10000;

namespace detail {

// Used only when the mass above lambda underflows: exponential envelope from the tangent of
// the log density at lambda, exact for a, b >= 1 where the log density is concave.
inline double truncated_beta_boundary_rejection(double a, double b, double lambda, Rng& rng) {
  const double width = 1.0 - lambda;
  const double slope = (a - 1.0) / lambda - (b - 1.0) / width;
  const double rate = slope < 0.0 ? -slope : 1.0 / width;
  auto log_kernel = [&](double x) { return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x); };
  const double base = log_kernel(lambda);
  const double span = -std::expm1(-rate * width);
  for (int it = 0; it < kTruncatedBetaMaxRejections; ++it) {
    double e = -std::log1p(-uniform_open01(rng) * span) / rate;
    double x = lambda + e;
    if (!(x > lambda && x < 1.0)) continue;
    double log_accept = log_kernel(x) - base - (slope < 0.0 ? slope * e : 0.0);
    if (std::log(uniform_open01(rng)) <= std::min(0.0, log_accept)) return x;
  }
  throw std::runtime_error("sample_truncated_beta: boundary rejection exceeded " +
                           std::to_string(kTruncatedBetaMaxRejections) + " iterations");
}

}  // namespace detail

// Draw from Beta(a, b) truncated to (lambda, 1) by inversion: F^-1(F(lambda) + U (1 - F(lambda))).
// The inversion runs on the upper tail Q(x) = 1 - F(x) so it stays accurate when F(lambda) is
// close to one; if Q(lambda) underflows the boundary rejection sampler takes over.
inline double sample_truncated_beta(double a, double b, double lambda, Rng& rng) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("sample_truncated_beta: shapes must be positive");
  if (!(lambda >= 0.0 && lambda < 1.0)) throw std::invalid_argument("sample_truncated_beta: lambda must be in [0, 1)");
  const double tail = lambda > 0.0 ? boost::math::ibetac(a, b, lambda) : 1.0;
  double x;
  if (tail > 1e-280) {
    const double u = uniform_open01(rng);
    x = boost::math::ibetac_inv(a, b, (1.0 - u) * tail);
  } else {
    x = detail::truncated_beta_boundary_rejection(a, b, lambda, rng);
  }
  if (!(x > lambda)) x = std::nextafter(lambda, 1.0);
  if (!(x < 1.0)) x = std::nextafter(1.0, 0.0);
  return x;
}

}  // namespace dedup
