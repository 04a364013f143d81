#pragma once

// Homogeneous Riemann problem X^+ = G X^- on the positive half-axis:
//   zeta(tau) = theta(tau)/2 - (i/2) ln|G(tau)| - pi kappa,
//   V(z)      = (1/pi) \int_0^inf zeta(tau) / (tau - z) dtau,
//   X(z)      = z^{-kappa} exp V(z),
// and the factorization of lambda through X(z) X(-z).

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "esdisp/dispersion.hpp"
#include "esdisp/error.hpp"
#include "esdisp/quadrature.hpp"
#include "esdisp/spectrum.hpp"

namespace esdisp {

struct ZetaSample {
  double tau = 0.0;
  complex zeta;
};

/// Smallest admissible distance from z to the cut [0, inf) of V and X.
inline constexpr double cut_distance_floor = 1e-8;

/// Step sizes of the one-sided limits used for boundary values of X.
inline constexpr double boundary_eps_coarse = 1e-4;
inline constexpr double boundary_eps_fine = 1e-5;

/// Cauchy kernel data for one (params, kappa) pair. Immutable once built;
/// all evaluations are const and may run concurrently.
class CauchyKernel {
 public:
  CauchyKernel(const FlowParams& p, int kappa, const QuadratureSpec& quad = {})
      : params_(p), kappa_(kappa), quad_(quad), branch_(p, quad) {
    if (kappa != 0 && kappa != 1) {
      throw error(errc::precondition, "CauchyKernel: kappa must be 0 or 1");
    }
  }

  const FlowParams& params() const { return params_; }
  int kappa() const { return kappa_; }
  const QuadratureSpec& quad() const { return quad_; }
  const ThetaBranch& theta() const { return branch_; }

  complex zeta(double tau) const {
    if (tau < 0.0) {
      throw error(errc::precondition, "zeta: tau must be >= 0");
    }
    const double log_modulus = std::log(std::abs(G_at(params_, tau)));
    return {0.5 * branch_(tau) - std::numbers::pi * kappa_, -0.5 * log_modulus};
  }

  /// zeta at the nodes of the refined theta profile.
  std::vector<ZetaSample> zeta_samples() const {
    std::vector<ZetaSample> out;
    out.reserve(branch_.samples().size());
    for (const auto& s : branch_.samples()) {
      out.push_back({s.tau, zeta(s.tau)});
    }
    return out;
  }

  /// Cauchy-type integral V(z), truncated at tau_max. zeta(Re z) is
  /// subtracted and integrated in closed form when Re z is inside the
  /// integration range, which keeps points near the cut well conditioned.
  complex V(complex z) const {
    detail::require_finite(z.real(), "V");
    detail::require_finite(z.imag(), "V");
    const double dist = z.real() >= 0.0 ? std::abs(z.imag()) : std::abs(z);
    if (dist <= cut_distance_floor) {
      throw error(errc::near_cut,
                  "V: z lies on or near the cut [0, inf); use X_boundary for boundary values");
    }
    const double T = quad_.tau_max;
    const double x = z.real();
    complex integral;
    if (x > 0.0 && x < T) {
      const complex zx = zeta(x);
      integral = integrate_split(
          [&](double t) -> complex { return (zeta(t) - zx) / (t - z); }, 0.0, T, x, quad_);
      integral += zx * (std::log(T - z) - std::log(-z));
    } else {
      integral = integrate([&](double t) -> complex { return zeta(t) / (t - z); }, 0.0, T, quad_);
    }
    const complex v = integral / std::numbers::pi;
    if (std::abs(v) > 700.0) {
      throw error(errc::overflow, "V: |V(z)| > 700, exp(V) would overflow");
    }
    return v;
  }

  complex X(complex z) const {
    if (kappa_ == 1 && z == complex(0.0, 0.0)) {
      throw error(errc::precondition, "X: z = 0 is excluded when kappa = 1");
    }
    const complex v = V(z);
    return kappa_ == 1 ? std::exp(v) / z : std::exp(v);
  }

  /// Boundary value X^{+/-}(mu). On mu > 0 it is the limit from the given
  /// side, Richardson-extrapolated from eps = 1e-4 and 1e-5; on mu < 0, X
  /// is continuous and the side is irrelevant.
  complex X_boundary(double mu, Side side) const {
    detail::require_finite(mu, "X_boundary");
    if (mu == 0.0) {
      throw error(errc::precondition, "X_boundary: mu = 0 is the end of the cut");
    }
    if (mu < 0.0) {
      return X(complex(mu, 0.0));
    }
    const double sign = side == Side::above ? 1.0 : -1.0;
    const complex coarse = X(complex(mu, sign * boundary_eps_coarse));
    const complex fine = X(complex(mu, sign * boundary_eps_fine));
    return fine + (fine - coarse) * (boundary_eps_fine / (boundary_eps_coarse - boundary_eps_fine));
  }

 private:
  FlowParams params_;
  int kappa_;
  QuadratureSpec quad_;
  ThetaBranch branch_;
};

inline complex zeta(const FlowParams& p, int kappa, double tau, const QuadratureSpec& quad = {}) {
  return CauchyKernel(p, kappa, quad).zeta(tau);
}

/// V(z) with kappa taken from `index(p)`.
inline complex V_at(const FlowParams& p, complex z, const QuadratureSpec& quad = {}) {
  return CauchyKernel(p, index(p, quad).kappa, quad).V(z);
}

inline complex X_at(const FlowParams& p, complex z, const QuadratureSpec& quad = {}) {
  return CauchyKernel(p, index(p, quad).kappa, quad).X(z);
}

/// Right-hand side of the factorization of lambda(z):
///   kappa = 1:  -lambda(inf) (z^2 - eta0^2) X(z) X(-z)
///   kappa = 0:  +lambda(inf) X(z) X(-z)
/// With kappa = 0, X(z) X(-z) -> 1 at infinity, so the sign must be + for
/// the product to approach lambda(inf).
inline complex factorization_rhs(const CauchyKernel& kernel, const std::optional<complex>& eta0,
                                 complex z) {
  const complex linf = lambda_infinity(kernel.params());
  const complex product = kernel.X(z) * kernel.X(-z);
  if (kernel.kappa() == 1) {
    if (!eta0) {
      throw error(errc::precondition, "factorization: eta0 is required when kappa = 1");
    }
    return -linf * (z * z - (*eta0) * (*eta0)) * product;
  }
  return linf * product;
}

/// Both sides below this fraction of |lambda(inf)| count as a common zero.
inline constexpr double common_zero_guard = 1e-6;

/// |lambda(z) - rhs(z)| / max(|lambda(z)|, abs_tol), or 0 at a common zero.
inline double factorization_residual(const CauchyKernel& kernel, const SpectrumReport& report,
                                     complex z) {
  if (std::abs(z.imag()) < 1e-8) {
    throw error(errc::precondition, "factorization_residual: Im z must be nonzero");
  }
  if (report.kappa != kernel.kappa()) {
    throw error(errc::precondition, "factorization_residual: report and kernel disagree on kappa");
  }
  const complex lhs = lambda_at(kernel.params(), z, kernel.quad());
  const complex rhs = factorization_rhs(kernel, report.eta0, z);
  const double scale = std::abs(lambda_infinity(kernel.params()));
  if (std::abs(lhs) <= common_zero_guard * scale && std::abs(rhs) <= common_zero_guard * scale) {
    return 0.0;
  }
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), kernel.quad().abs_tol);
}

inline double factorization_residual(const FlowParams& p, const SpectrumReport& report, complex z,
                                     const QuadratureSpec& quad = {}) {
  return factorization_residual(CauchyKernel(p, report.kappa, quad), report, z);
}

/// Boundary form of the factorization on the real axis, mu != 0:
///   mu > 0:  lambda^{+/-}(mu) = c(mu) X^{+/-}(mu) X(-mu)
///   mu < 0:  lambda^{+/-}(mu) = c(mu) X(mu) X^{-/+}(-mu)
/// with c(mu) = -lambda(inf)(mu^2 - eta0^2) for kappa = 1 and +lambda(inf)
/// for kappa = 0. Returns the relative mismatch for the requested side.
inline double boundary_factorization_residual(const CauchyKernel& kernel,
                                              const SpectrumReport& report, double mu, Side side) {
  const complex linf = lambda_infinity(kernel.params());
  complex c = linf;
  if (kernel.kappa() == 1) {
    if (!report.eta0) {
      throw error(errc::precondition, "boundary factorization: eta0 is required when kappa = 1");
    }
    c = -linf * (mu * mu - (*report.eta0) * (*report.eta0));
  }
  const BoundaryValues bv = lambda_boundary(kernel.params(), mu);
  const complex lhs = side == Side::above ? bv.plus : bv.minus;
  complex rhs;
  if (mu > 0.0) {
    rhs = c * kernel.X_boundary(mu, side) * kernel.X(complex(-mu, 0.0));
  } else {
    const Side mirrored = side == Side::above ? Side::below : Side::above;
    rhs = c * kernel.X(complex(mu, 0.0)) * kernel.X_boundary(-mu, mirrored);
  }
  return std::abs(lhs - rhs) / std::abs(lhs);
}

}  // namespace esdisp
