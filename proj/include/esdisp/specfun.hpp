#pragma once

// Real and complex special functions behind the dispersion function:
// Dawson's integral, the boundary pair l(x) +/- i s(x), and the
// plasma-type Cauchy integral lambda0(z).

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "esdisp/error.hpp"
#include "esdisp/quadrature.hpp"

namespace esdisp {

using complex = std::complex<double>;

inline constexpr double sqrt_pi = 1.77245385090551602729816748334114518;

/// Side of the real axis a boundary value is taken from.
enum class Side { above, below };

namespace detail {

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw error(errc::domain, std::string(what) + ": non-finite argument");
  }
}

// e^{-x^2} sum_n x^{2n+1} / (n! (2n+1)); every term is positive.
inline double dawson_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= x2 / n;
    const double add = term / (2 * n + 1);
    sum += add;
    if (add <= 1e-17 * sum) {
      break;
    }
  }
  return std::exp(-x2) * sum;
}

// F(x) = x / (1 + 2x^2 - 4x^2 / (3 + 2x^2 - 8x^2 / (5 + 2x^2 - ...))),
// evaluated bottom-up; depth doubles until two depths agree.
inline double dawson_fraction(double x, int depth) {
  const double x2 = x * x;
  double tail = 0.0;
  for (int k = depth; k >= 1; --k) {
    tail = (4.0 * k * x2) / ((2 * k + 1) + 2.0 * x2 - tail);
  }
  return x / (1.0 + 2.0 * x2 - tail);
}

inline double dawson_fraction(double x) {
  double previous = dawson_fraction(x, 16);
  for (int depth = 32; depth <= 4096; depth *= 2) {
    const double current = dawson_fraction(x, depth);
    if (std::abs(current - previous) <= 1e-16 * std::abs(current)) {
      return current;
    }
    previous = current;
  }
  return previous;
}

}  // namespace detail

/// Dawson's integral F(x) = e^{-x^2} \int_0^x e^{t^2} dt.
///
/// Positive-term series for |x| <= 1, continued fraction beyond, and the
/// leading asymptote 1/(2x) once x^2 would overflow the fraction.
inline double dawson(double x) {
  detail::require_finite(x, "dawson");
  const double ax = std::abs(x);
  double value;
  if (ax <= 1.0) {
    value = detail::dawson_series(ax);
  } else if (ax < 1e8) {
    value = detail::dawson_fraction(ax);
  } else {
    value = 0.5 / ax;
  }
  return std::copysign(value, x);
}

/// s(x) = sqrt(pi) x e^{-x^2}, the jump density of lambda0 across the axis.
inline double s_func(double x) {
  detail::require_finite(x, "s_func");
  return sqrt_pi * x * std::exp(-x * x);
}

/// l(x) = 1 - 2x F(x), the principal-value part of lambda0 on the axis.
inline double l_func(double x) {
  detail::require_finite(x, "l_func");
  const double ax = std::abs(x);
  // 1 - 2xF cancels to ~1 ulp absolute, so switch to the divergent series
  // while its smallest term is still far below rounding.
  if (ax > 10.0) {
    // -sum_{n>=1} (2n-1)!! / (2x^2)^n
    const double u = 1.0 / (2.0 * ax * ax);
    double term = 1.0;
    double sum = 0.0;
    for (int n = 1; n < 60; ++n) {
      term *= (2 * n - 1) * u;
      sum += term;
      if (term < 1e-17 * sum) {
        break;
      }
    }
    return -sum;
  }
  return 1.0 - 2.0 * ax * dawson(ax);
}

/// lambda0(z) = (1/sqrt(pi)) \int e^{-t^2} t / (t - z) dt for Im z != 0.
///
/// The integral is truncated to [-tau_max, tau_max]. The value of the
/// numerator at Re z is subtracted and integrated in closed form so that
/// points close to the axis stay well conditioned.
inline complex lambda0(complex z, const QuadratureSpec& quad = {}) {
  detail::require_finite(z.real(), "lambda0");
  detail::require_finite(z.imag(), "lambda0");
  if (std::abs(z.imag()) < 1e-8) {
    throw error(errc::precondition,
                "lambda0: |Im z| < 1e-8; use lambda0_boundary for points on the real axis");
  }
  const double T = quad.tau_max;
  const double x = z.real();
  auto weight = [](double t) { return t * std::exp(-t * t); };

  complex integral;
  if (std::abs(x) < T) {
    const double fx = weight(x);
    integral = integrate_split(
        [&](double t) -> complex { return (weight(t) - fx) / (t - z); }, -T, T, x, quad);
    // The segment t - z, t in [-T, T], never meets the cut of log.
    integral += fx * (std::log(T - z) - std::log(-T - z));
  } else {
    integral = integrate([&](double t) -> complex { return weight(t) / (t - z); }, -T, T, quad);
  }
  return integral / sqrt_pi;
}

/// Boundary values lambda0^{+/-}(x) = l(x) +/- i s(x).
inline complex lambda0_boundary(double x, Side side) {
  const double s = s_func(x);
  return {l_func(x), side == Side::above ? s : -s};
}

}  // namespace esdisp
