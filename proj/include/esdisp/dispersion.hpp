#pragma once

// The ES-model dispersion function lambda(z) = -i Omega + (1 - b z^2) lambda0(z),
// its boundary values on the real axis, the Riemann coefficient
// G = lambda^+ / lambda^- and the continuous angle theta(tau) = arg G(tau).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "esdisp/error.hpp"
#include "esdisp/quadrature.hpp"
#include "esdisp/specfun.hpp"

namespace esdisp {

/// Problem parameters: oscillation frequency Omega >= 0 and the ES
/// parameter a in [0, 1], with the derived constants
///   z0 = 1 - i Omega,   b = -i Omega a / z0 = b1 + i b2,   Pr = 2 / (2 + a).
class FlowParams {
 public:
  static FlowParams from_a(double omega, double a) { return FlowParams(omega, a); }

  static FlowParams from_prandtl(double omega, double prandtl) {
    if (!(prandtl >= 2.0 / 3.0 - 1e-12 && prandtl <= 1.0 + 1e-12)) {
      throw error(errc::precondition, "Prandtl number must lie in [2/3, 1]");
    }
    // Snap to 12 decimals so that e.g. Pr = 0.8 yields a = 0.5 exactly.
    const double a = std::round(a_from_prandtl(prandtl) * 1e12) / 1e12;
    return FlowParams(omega, std::clamp(a, 0.0, 1.0));
  }

  /// BGK parameters with b set to exactly zero rather than computed.
  static FlowParams bgk_forced(double omega) {
    FlowParams p(omega, 0.0);
    p.b_ = complex(0.0, 0.0);
    return p;
  }

  static double a_from_prandtl(double prandtl) { return 2.0 * (1.0 - prandtl) / prandtl; }
  static double prandtl_from_a(double a) { return 2.0 / (2.0 + a); }

  double omega() const { return omega_; }
  double a() const { return a_; }
  complex z0() const { return {1.0, -omega_}; }
  complex b() const { return b_; }
  double b1() const { return a_ * omega_ * omega_ / (1.0 + omega_ * omega_); }
  double b2() const { return -a_ * omega_ / (1.0 + omega_ * omega_); }
  double prandtl() const { return prandtl_from_a(a_); }

 private:
  FlowParams(double omega, double a) : omega_(omega), a_(a) {
    detail::require_finite(omega, "FlowParams omega");
    detail::require_finite(a, "FlowParams a");
    if (omega < 0.0) {
      throw error(errc::precondition, "FlowParams: omega must be >= 0");
    }
    if (a < 0.0 || a > 1.0) {
      throw error(errc::precondition, "FlowParams: a must lie in [0, 1]");
    }
    b_ = complex(0.0, -omega * a) / z0();
  }

  double omega_;
  double a_;
  complex b_;
};

/// Boundary values lambda^{+/-}(mu) of the dispersion function.
struct BoundaryValues {
  double mu = 0.0;
  complex plus;
  complex minus;
};

/// lambda(z) for Im z != 0.
inline complex lambda_at(const FlowParams& p, complex z, const QuadratureSpec& quad = {}) {
  return complex(0.0, -p.omega()) + (1.0 - p.b() * z * z) * lambda0(z, quad);
}

/// Sokhotsky boundary values: -i Omega + (1 - b mu^2)(l(mu) +/- i s(mu)).
inline BoundaryValues lambda_boundary(const FlowParams& p, double mu) {
  detail::require_finite(mu, "lambda_boundary");
  const complex factor = 1.0 - p.b() * (mu * mu);
  const complex shift(0.0, -p.omega());
  return {mu, shift + factor * lambda0_boundary(mu, Side::above),
          shift + factor * lambda0_boundary(mu, Side::below)};
}

/// lambda(infinity) = -i Omega + b / 2.
inline complex lambda_infinity(const FlowParams& p) {
  return complex(0.0, -p.omega()) + 0.5 * p.b();
}

/// The same limit written through the Prandtl number:
/// -(i Omega / Pr) (1 - i Omega Pr) / (1 - i Omega).
inline complex lambda_infinity_prandtl_form(const FlowParams& p) {
  const double pr = p.prandtl();
  const complex i(0.0, 1.0);
  return -(i * p.omega() / pr) * (1.0 - i * p.omega() * pr) / p.z0();
}

/// Real/imaginary decomposition G = (g1 + i g2) / g0 of the Riemann
/// coefficient at tau, together with the continuous angle theta(tau).
struct GDecomposition {
  double tau = 0.0;
  double g0 = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  complex G;
  double theta = 0.0;
};

struct GTerms {
  double g0;
  double g1;
  double g2;
};

/// (1 - b1 tau^2)^2 + b2^2 tau^4 in closed form.
inline double modulus_factor(const FlowParams& p, double tau) {
  const double w2 = p.omega() * p.omega();
  const double u = 1.0 - p.a() * tau * tau;
  return (1.0 + w2 * u * u) / (1.0 + w2);
}

/// g0, g1, g2 from s(tau) and l(tau).
///
/// g1 carries the cross term 2 Omega b2 tau^2 l(tau) that comes from
/// expanding Re(lambda^+ conj(lambda^-)); without it (g1 + i g2) / g0 no
/// longer equals lambda^+ / lambda^- once a > 0. The remaining part of g1
/// is `g1_reduced` in spectrum.hpp.
inline GTerms g_terms(const FlowParams& p, double tau) {
  const double s = s_func(tau);
  const double l = l_func(tau);
  const double w = p.omega();
  const double w2 = w * w;
  const double t2 = tau * tau;
  const double u = 1.0 - p.a() * t2;
  const double s0 = s * s - l * l;
  const double s1 = s0 * u * u - 1.0;
  const double k = modulus_factor(p, tau);

  const double c = 1.0 - p.b1() * t2;
  const double d = p.b2() * t2;

  GTerms g{};
  g.g1 = (w2 * w2 - w2 * s1 - s0 - 2.0 * p.a() * w2 * t2 * l) / (1.0 + w2);
  g.g2 = 2.0 * s / (1.0 + w2) * (-p.a() * w2 * t2 + l * (1.0 + w2 * u * u));
  g.g0 = w2 + 2.0 * w * (c * s + d * l) + (l * l + s * s) * k;
  return g;
}

/// G(tau) = lambda^+(tau) / lambda^-(tau).
inline complex G_at(const FlowParams& p, double tau) {
  detail::require_finite(tau, "G_at");
  if (tau < 0.0) {
    throw error(errc::precondition, "G_at: tau must be >= 0");
  }
  const BoundaryValues bv = lambda_boundary(p, tau);
  if (bv.minus == complex(0.0, 0.0)) {
    throw error(errc::singular_coefficient, "G_at: lambda^-(tau) vanishes");
  }
  return bv.plus / bv.minus;
}

/// One node of the continuous angle profile.
struct ThetaSample {
  double tau = 0.0;
  double theta = 0.0;
};

namespace detail {

inline double principal_angle(const FlowParams& p, double tau) {
  const GTerms g = g_terms(p, tau);
  return std::atan2(g.g2, g.g1);
}

inline double wrap_to_pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return angle - two_pi * std::round(angle / two_pi);
}

}  // namespace detail

/// Continuous branch of arg G along an ascending grid starting at 0,
/// fixed by theta(0) = 0. Intervals whose raw angle step exceeds pi/2 are
/// bisected; the returned samples include the inserted nodes.
inline std::vector<ThetaSample> theta_profile(const FlowParams& p, std::span<const double> grid,
                                              const QuadratureSpec& quad = {}) {
  quad.validate();
  if (grid.empty() || grid.front() != 0.0) {
    throw error(errc::precondition, "theta_profile: grid must start at 0");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw error(errc::precondition, "theta_profile: grid must be strictly increasing");
    }
  }
  if (grid.size() > 1 && grid.back() < quad.tau_max) {
    throw error(errc::precondition, "theta_profile: grid must extend to tau_max");
  }

  std::vector<ThetaSample> out;
  out.push_back({0.0, 0.0});
  int inserted = 0;
  double theta = 0.0;
  double phi = detail::principal_angle(p, 0.0);

  struct Pending {
    double tau;
    double phi;
  };
  std::vector<Pending> stack;

  for (std::size_t i = 1; i < grid.size(); ++i) {
    stack.push_back({grid[i], detail::principal_angle(p, grid[i])});
    double left = grid[i - 1];
    while (!stack.empty()) {
      const Pending right = stack.back();
      const double step = detail::wrap_to_pi(right.phi - phi);
      if (std::abs(step) > 0.5 * std::numbers::pi) {
        if (++inserted > quad.max_subdivisions) {
          throw error(errc::unresolved_winding,
                      "theta_profile: angle refinement exceeded max_subdivisions");
        }
        const double mid = 0.5 * (left + right.tau);
        if (!(mid > left && mid < right.tau)) {
          throw error(errc::unresolved_winding,
                      "theta_profile: angle jump cannot be resolved (G passes through 0?)");
        }
        stack.push_back({mid, detail::principal_angle(p, mid)});
        continue;
      }
      theta += step;
      phi = right.phi;
      left = right.tau;
      out.push_back({right.tau, theta});
      stack.pop_back();
    }
  }
  return out;
}

/// Continuous angle theta(tau) = arg G(tau) on the whole real line, built
/// once from a refined profile on [0, tau_max]. Evaluation picks the branch
/// of atan2(g2, g1) nearest to the preceding profile node; theta is odd in
/// tau because G(-tau) = 1 / G(tau).
class ThetaBranch {
 public:
  explicit ThetaBranch(const FlowParams& p, const QuadratureSpec& quad = {}, int grid_points = 400)
      : params_(p) {
    quad.validate();
    if (grid_points < 2) {
      throw error(errc::precondition, "ThetaBranch: need at least two grid points");
    }
    std::vector<double> grid(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i) {
      grid[static_cast<std::size_t>(i)] = quad.tau_max * i / (grid_points - 1);
    }
    samples_ = theta_profile(p, grid, quad);
  }

  double operator()(double tau) const {
    detail::require_finite(tau, "ThetaBranch");
    if (tau < 0.0) {
      return -(*this)(-tau);
    }
    auto it = std::upper_bound(samples_.begin(), samples_.end(), tau,
                               [](double t, const ThetaSample& s) { return t < s.tau; });
    const double reference = std::prev(it)->theta;
    const double phi = detail::principal_angle(params_, tau);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return phi + two_pi * std::round((reference - phi) / two_pi);
  }

  /// theta at the end of the profile (tau = tau_max).
  double end_angle() const { return samples_.back().theta; }
  double winding() const { return end_angle() / (2.0 * std::numbers::pi); }

  const std::vector<ThetaSample>& samples() const { return samples_; }
  const FlowParams& params() const { return params_; }

  GDecomposition decomposition(double tau) const {
    if (tau < 0.0) {
      throw error(errc::precondition, "g_decomposition: tau must be >= 0");
    }
    const GTerms g = g_terms(params_, tau);
    if (!(g.g0 > 0.0)) {
      throw error(errc::degenerate_point, "g_decomposition: g0 vanishes");
    }
    return {tau, g.g0, g.g1, g.g2, G_at(params_, tau), (*this)(tau)};
  }

 private:
  FlowParams params_;
  std::vector<ThetaSample> samples_;
};

/// g0, g1, g2 and theta at tau; the G field is the direct ratio
/// lambda^+ / lambda^- so the two routes can be compared.
inline GDecomposition g_decomposition(const FlowParams& p, double tau,
                                      const QuadratureSpec& quad = {}) {
  return ThetaBranch(p, quad).decomposition(tau);
}

}  // namespace esdisp
