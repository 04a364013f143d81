#pragma once

// Eigen-solutions of the separated kinetic equation
//   mu dh/dx + z0 h = (1/sqrt(pi)) \int e^{-mu'^2} (1 - a mu mu') h(x, mu') dmu'.
// The discrete mode attached to a zero eta0, the principal-value
// normalization of the continuous modes, and the two Omega = 0 modes.

#include <cmath>
#include <complex>
#include <functional>
#include <utility>

#include "esdisp/dispersion.hpp"
#include "esdisp/error.hpp"
#include "esdisp/quadrature.hpp"
#include "esdisp/specfun.hpp"

namespace esdisp {

enum class ModeKind { discrete, continuous, omega_zero };

struct EigenMode {
  complex eta;
  ModeKind kind = ModeKind::discrete;
  FlowParams params = FlowParams::from_a(0.0, 0.0);
};

/// |lambda(eta0)| / |lambda(inf)| above this is not accepted as a zero.
inline constexpr double zero_residual_tolerance = 1e-6;

inline EigenMode discrete_mode(const FlowParams& p, complex eta0, const QuadratureSpec& quad = {}) {
  if (std::abs(eta0.imag()) < 1e-8) {
    throw error(errc::precondition, "discrete_mode: eta0 must lie off the real axis");
  }
  const double r = std::abs(lambda_at(p, eta0, quad)) / std::abs(lambda_infinity(p));
  if (!(r < zero_residual_tolerance)) {
    throw error(errc::not_a_zero, "discrete_mode: lambda(eta0) does not vanish");
  }
  return {eta0, ModeKind::discrete, p};
}

inline EigenMode continuous_mode(const FlowParams& p, double eta) {
  detail::require_finite(eta, "continuous_mode");
  if (!(eta > 0.0)) {
    throw error(errc::precondition, "continuous_mode: eta must be > 0");
  }
  return {complex(eta, 0.0), ModeKind::continuous, p};
}

namespace detail {

inline complex phi_value(const FlowParams& p, complex eta, double mu) {
  return eta * (1.0 - p.b() * mu * eta) / ((eta - mu) * sqrt_pi);
}

}  // namespace detail

/// Phi(eta0, mu) = (1/sqrt(pi)) eta0 (1 - b mu eta0) / (eta0 - mu).
inline complex phi_discrete(const EigenMode& mode, double mu) {
  if (mode.kind != ModeKind::discrete) {
    throw error(errc::precondition, "phi_discrete: mode is not discrete");
  }
  detail::require_finite(mu, "phi_discrete");
  return detail::phi_value(mode.params, mode.eta, mu);
}

inline complex phi_discrete(const FlowParams& p, complex eta0, double mu,
                            const QuadratureSpec& quad = {}) {
  return phi_discrete(discrete_mode(p, eta0, quad), mu);
}

/// h = exp(-x1 z0 / eta0) Phi(eta0, mu); decays in x1 only if Re(z0/eta0) > 0.
inline complex h_discrete(const EigenMode& mode, double x1, double mu) {
  detail::require_finite(x1, "h_discrete");
  if (x1 < 0.0) {
    throw error(errc::precondition, "h_discrete: x1 must be >= 0");
  }
  const complex rate = mode.params.z0() / mode.eta;
  if (!(rate.real() > 0.0)) {
    throw error(errc::non_decaying_mode, "h_discrete: Re(z0 / eta0) <= 0, mode grows in x1");
  }
  return std::exp(-x1 * rate) * phi_discrete(mode, mu);
}

inline complex h_discrete(const FlowParams& p, complex eta0, double x1, double mu,
                          const QuadratureSpec& quad = {}) {
  return h_discrete(discrete_mode(p, eta0, quad), x1, mu);
}

/// x-derivative of h_discrete: -(z0 / eta0) h.
inline complex dhdx_discrete(const EigenMode& mode, double x1, double mu) {
  return -(mode.params.z0() / mode.eta) * h_discrete(mode, x1, mu);
}

/// Zeroth and first Gaussian moments \int e^{-mu^2} mu^k h(mu) dmu.
struct Moments {
  complex n0;
  complex n1;
};

using ProfileFn = std::function<complex(double)>;

inline Moments moments(const ProfileFn& h, const QuadratureSpec& quad = {},
                       double breakpoint = 0.0) {
  const double T = quad.tau_max;
  const complex n0 = integrate_split(
      [&](double m) -> complex { return std::exp(-m * m) * h(m); }, -T, T, breakpoint, quad);
  const complex n1 = integrate_split(
      [&](double m) -> complex { return std::exp(-m * m) * m * h(m); }, -T, T, breakpoint, quad);
  return {n0, n1};
}

/// Moments of Phi(eta0, .): n0 = z0 and n1 = -i Omega eta0 at a zero.
inline Moments discrete_moments(const EigenMode& mode, const QuadratureSpec& quad = {}) {
  return moments([&](double m) { return phi_discrete(mode, m); }, quad, mode.eta.real());
}

/// mu dh/dx + z0 h - (1/sqrt(pi)) \int e^{-mu'^2} (1 - a mu mu') h dmu' at
/// (x1, mu). `h(x, mu')` and `dhdx(x, mu)` describe the candidate solution.
inline complex kinetic_residual(const FlowParams& p,
                                const std::function<complex(double, double)>& h,
                                const std::function<complex(double, double)>& dhdx, double x1,
                                double mu, const QuadratureSpec& quad = {},
                                double breakpoint = 0.0) {
  const Moments m = moments([&](double v) { return h(x1, v); }, quad, breakpoint);
  const complex rhs = (m.n0 - p.a() * mu * m.n1) / sqrt_pi;
  return mu * dhdx(x1, mu) + p.z0() * h(x1, mu) - rhs;
}

inline complex kinetic_residual(const EigenMode& mode, double x1, double mu,
                                const QuadratureSpec& quad = {}) {
  return kinetic_residual(
      mode.params, [&](double x, double v) { return h_discrete(mode, x, v); },
      [&](double x, double v) { return dhdx_discrete(mode, x, v); }, x1, mu, quad,
      mode.eta.real());
}

/// PV \int e^{-mu^2} / (mu - x) dmu = -2 sqrt(pi) F(x).
inline double gaussian_cauchy_pv(double x) { return -2.0 * sqrt_pi * dawson(x); }

/// Residual |n0(eta) - z0| of the continuous-mode normalization
///   (1/sqrt(pi)) PV \int e^{-mu^2} eta (1 - b mu eta) / (eta - mu) dmu + lambda_half(eta) = z0,
/// where the delta term contributes the half-sum boundary value of lambda.
/// The principal value is taken by subtracting g(eta), g(mu) = eta (1 - b mu eta).
inline double continuous_pv_normalization(const FlowParams& p, double eta,
                                          const QuadratureSpec& quad = {}) {
  const EigenMode mode = continuous_mode(p, eta);
  const complex b = mode.params.b();
  auto g = [&](double m) { return eta * (1.0 - b * m * eta); };
  const complex g_eta = g(eta);
  const double T = quad.tau_max;
  const complex regular = integrate_split(
      [&](double m) -> complex {
        if (m == eta) {
          return std::exp(-m * m) * b * eta * eta;  // removable limit
        }
        return std::exp(-m * m) * (g(m) - g_eta) / (eta - m);
      },
      -T, T, eta, quad);
  const complex pv = regular - g_eta * gaussian_cauchy_pv(eta);
  const complex half = complex(0.0, -p.omega()) + (1.0 - b * eta * eta) * l_func(eta);
  return std::abs(pv / sqrt_pi + half - p.z0());
}

/// The two Omega = 0 modes: h1 = 1 and h2 = x1 - 2 mu / (2 + a).
inline std::pair<double, double> omega_zero_modes(double a, double x1, double mu) {
  detail::require_finite(a, "omega_zero_modes");
  detail::require_finite(x1, "omega_zero_modes");
  detail::require_finite(mu, "omega_zero_modes");
  if (a < 0.0 || a > 1.0) {
    throw error(errc::precondition, "omega_zero_modes: a must lie in [0, 1]");
  }
  return {1.0, x1 - 2.0 * mu / (2.0 + a)};
}

}  // namespace esdisp
