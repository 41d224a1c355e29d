#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "pncert/scenarios.hpp"

namespace pncert {

double erf_inv(double y) {
  if (!(y > -1.0 && y < 1.0)) throw std::domain_error("erf_inv: |y| >= 1");
  if (y == 0.0) return 0.0;
  // Winitzki initial guess, then Newton on erf
  constexpr double a = 0.147;
  double l = std::log1p(-y * y);
  double t = 2.0 / (std::numbers::pi * a) + 0.5 * l;
  double x = std::copysign(std::sqrt(std::sqrt(t * t - l / a) - t), y);
  for (int it = 0; it < 6; ++it) {
    double err = std::erf(x) - y;
    double d = 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x * x);
    double step = err / d;
    x -= step;
    if (std::abs(step) < 1e-17 * (1.0 + std::abs(x))) break;
  }
  return x;
}

double bpsk_x1(double alpha) {
  return std::sqrt(2.0) * alpha - erf_inv(0.5 * (std::erf(std::sqrt(2.0) * alpha) - 1.0));
}

std::vector<double> bpsk_thresholds(double alpha, int bins) {
  if (bins == 2) return {0.0};
  double x1 = bpsk_x1(alpha);
  if (bins == 4) return {-x1, 0.0, x1};
  if (bins == 8) return {-3 * x1, -2 * x1, -x1, 0.0, x1, 2 * x1, 3 * x1};
  throw std::invalid_argument("bpsk: bins must be 2, 4 or 8");
}

namespace {
// P(X < c) for mean mu, variance 1/2
double gauss_cdf(double c, double mu) { return 0.5 * (1.0 + std::erf(c - mu)); }
}  // namespace

Behavior bpsk_behavior(double alpha, int bins) {
  Behavior beh(bins, 2, 1);
  double mu[2] = {std::sqrt(2.0) * alpha, -std::sqrt(2.0) * alpha};
  if (bins == 2) {
    for (int x = 0; x < 2; ++x) {
      double p1 = 0.5 * (std::erf(mu[x]) + 1.0);  // b=0 <-> X > 0
      beh.at(0, x, 0) = p1;
      beh.at(1, x, 0) = 1.0 - p1;
    }
    return beh;
  }
  auto cuts = bpsk_thresholds(alpha, bins);
  for (int x = 0; x < 2; ++x) {
    for (int b = 0; b < bins; ++b) {
      double lo = b == 0 ? 0.0 : gauss_cdf(cuts[b - 1], mu[x]);
      double hi = b == bins - 1 ? 1.0 : gauss_cdf(cuts[b], mu[x]);
      beh.at(b, x, 0) = hi - lo;
    }
  }
  return beh;
}

}  // namespace pncert
