#pragma once

// Structure of the discrete spectrum: the root curve Omega(tau, a) of the
// reduced g1, the critical frequency Omega*(a) and the index kappa(G).

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "esdisp/dispersion.hpp"
#include "esdisp/error.hpp"
#include "esdisp/optimize.hpp"
#include "esdisp/quadrature.hpp"
#include "esdisp/specfun.hpp"

namespace esdisp {

/// |Omega - Omega*| below this is reported as ambiguous.
inline constexpr double threshold_margin = 1e-4;

/// Index, zero count and critical frequency for one parameter pair.
/// `eta0` is filled by `spectrum_report` in zeros.hpp.
struct SpectrumReport {
  double omega = 0.0;
  double a = 0.0;
  int kappa = 0;
  int zero_count = 0;
  double omega_star = 0.0;
  double argmax_tau = 0.0;
  std::optional<complex> eta0;
};

namespace detail {

inline void require_a(double a) {
  require_finite(a, "a");
  if (a < 0.0 || a > 1.0) {
    throw error(errc::precondition, "parameter a must lie in [0, 1]");
  }
}

}  // namespace detail

/// (Omega^4 - Omega^2 s1 - s0) / (1 + Omega^2) with s0 = s^2 - l^2 and
/// s1 = s0 (1 - a tau^2)^2 - 1. Its positive root in Omega defines the
/// frequency curve whose maximum is the critical frequency.
inline double g1_reduced(double a, double omega, double tau) {
  const double s = s_func(tau);
  const double l = l_func(tau);
  const double u = 1.0 - a * tau * tau;
  const double s0 = s * s - l * l;
  const double s1 = s0 * u * u - 1.0;
  const double w2 = omega * omega;
  return (w2 * w2 - w2 * s1 - s0) / (1.0 + w2);
}

struct RootCurvePoint {
  double omega = 0.0;
  bool real = false;  ///< false when the root is not real; omega is then 0
};

/// Omega(tau, a) = sqrt(s1/2 + sqrt((s1/2)^2 + s0)).
inline RootCurvePoint omega_root(double a, double tau) {
  detail::require_a(a);
  detail::require_finite(tau, "omega_of_tau");
  if (!(tau > 0.0)) {
    throw error(errc::precondition, "omega_of_tau: tau must be > 0");
  }
  const double s = s_func(tau);
  const double l = l_func(tau);
  const double u = 1.0 - a * tau * tau;
  const double s0 = s * s - l * l;
  const double half_s1 = 0.5 * (s0 * u * u - 1.0);
  const double disc = half_s1 * half_s1 + s0;
  if (disc < 0.0) {
    return {0.0, false};
  }
  const double inner = half_s1 + std::sqrt(disc);
  if (!(inner > 0.0)) {
    return {0.0, false};
  }
  const double omega = std::sqrt(inner);
  if (std::abs(g1_reduced(a, omega, tau)) > 1e-10) {
    throw error(errc::degenerate_point, "omega_of_tau: root fails the g1 = 0 check");
  }
  return {omega, true};
}

inline double omega_of_tau(double a, double tau) { return omega_root(a, tau).omega; }

struct CriticalFrequency {
  double omega_star = 0.0;
  double argmax_tau = 0.0;
};

/// Omega*(a) = max over tau of Omega(tau, a): a scan with step 0.01 over
/// (0, 4], extended while the maximum sits on the right edge, then
/// golden-section refinement to |dtau| < 1e-8.
inline CriticalFrequency critical_frequency(double a, const QuadratureSpec& quad = {}) {
  detail::require_a(a);
  constexpr double step = 0.01;
  double hi = 4.0;
  const double limit = std::max(quad.tau_max, hi);

  auto f = [a](double tau) { return omega_of_tau(a, tau); };
  int best_k = 1;
  double best = f(step);
  int k = 2;
  for (;;) {
    const int last = static_cast<int>(std::lround(hi / step));
    for (; k <= last; ++k) {
      const double v = f(k * step);
      if (v > best) {
        best = v;
        best_k = k;
      }
    }
    if (best_k < last || hi >= limit) {
      break;
    }
    hi = std::min(limit, hi + 1.0);
  }

  const double lo_t = std::max(step * (best_k - 1), 0.5 * step);
  const double hi_t = step * (best_k + 1);
  const auto peak = golden_section_maximize(f, lo_t, hi_t, 1e-8);
  if (peak.value >= best) {
    return {peak.value, peak.x};
  }
  return {best, best_k * step};
}

/// Raw winding number theta(tau_max) / (2 pi) of G along [0, tau_max].
inline double winding_number(const FlowParams& p, const QuadratureSpec& quad = {}) {
  return ThetaBranch(p, quad).winding();
}

/// Index of G from its winding, cross-checked against kappa = 1 iff
/// Omega < Omega*(a). Disagreement and the margin band are errors.
inline SpectrumReport index(const FlowParams& p, const QuadratureSpec& quad = {}) {
  if (!(p.omega() > 0.0)) {
    throw error(errc::precondition, "index: omega must be > 0");
  }
  const CriticalFrequency cf = critical_frequency(p.a(), quad);
  if (std::abs(p.omega() - cf.omega_star) < threshold_margin) {
    std::ostringstream msg;
    msg << "index: omega = " << p.omega() << " lies within " << threshold_margin
        << " of omega* = " << cf.omega_star;
    throw error(errc::threshold_ambiguous, msg.str());
  }

  const double w = winding_number(p, quad);
  const long kappa = std::lround(w);
  if (std::abs(w - static_cast<double>(kappa)) > 1e-6 || kappa < 0 || kappa > 1) {
    std::ostringstream msg;
    msg << "index: winding " << w << " is not 0 or 1";
    throw error(errc::unresolved_winding, msg.str());
  }
  const int threshold_kappa = p.omega() < cf.omega_star ? 1 : 0;
  if (kappa != threshold_kappa) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "index: winding gives kappa = " << kappa << " but omega = " << p.omega()
        << (threshold_kappa == 1 ? " < " : " > ") << "omega* = " << cf.omega_star;
    throw error(errc::threshold_disagreement, msg.str());
  }

  SpectrumReport report;
  report.omega = p.omega();
  report.a = p.a();
  report.kappa = static_cast<int>(kappa);
  report.zero_count = 2 * report.kappa;
  report.omega_star = cf.omega_star;
  report.argmax_tau = cf.argmax_tau;
  return report;
}

}  // namespace esdisp
