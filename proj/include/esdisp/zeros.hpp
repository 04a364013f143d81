#pragma once

// Zeros +/- eta0 of the dispersion function: the exact value through the
// factorization, the small-Omega asymptote, and the relative error O(Omega)
// between their moduli.

#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "esdisp/dispersion.hpp"
#include "esdisp/error.hpp"
#include "esdisp/factorization.hpp"
#include "esdisp/quadrature.hpp"
#include "esdisp/spectrum.hpp"

namespace esdisp {

enum class ZeroSource { exact, asymptotic };

inline const char* to_string(ZeroSource s) { return s == ZeroSource::exact ? "exact" : "asymptotic"; }

struct ZeroPair {
  complex eta0;
  complex eta0_neg;
  double residual = 0.0;  ///< |lambda(eta0)| / |lambda(inf)|
  ZeroSource source = ZeroSource::exact;
  int evaluation_point = 0;  ///< N of z = N i; 0 for the asymptote
};

namespace detail {

// Root with Re > 0; a purely imaginary root is taken with Im > 0.
inline complex right_half_root(complex square) {
  complex r = std::sqrt(square);
  if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) {
    r = -r;
  }
  return r;
}

inline ZeroPair make_zero(const FlowParams& p, complex eta, ZeroSource source, int n,
                          const QuadratureSpec& quad) {
  ZeroPair z;
  z.eta0 = eta;
  z.eta0_neg = -eta;
  z.source = source;
  z.evaluation_point = n;
  z.residual = std::abs(lambda_at(p, eta, quad)) / std::abs(lambda_infinity(p));
  return z;
}

}  // namespace detail

/// eta0^2 = z^2 + lambda(z) / (lambda(inf) X(z) X(-z)) at z = N i, using a
/// kernel that has already been built for kappa = 1.
inline ZeroPair eta0_exact(const CauchyKernel& kernel, int n = 1) {
  const FlowParams& p = kernel.params();
  if (kernel.kappa() != 1) {
    throw error(errc::no_discrete_spectrum, "no discrete spectrum (kappa=0)");
  }
  if (n < 1) {
    throw error(errc::precondition, "eta0_exact: evaluation point N must be >= 1");
  }
  const complex z(0.0, static_cast<double>(n));
  const complex lam = lambda_at(p, z, kernel.quad());
  const complex product = kernel.X(z) * kernel.X(-z);
  const complex eta = detail::right_half_root(z * z + lam / (lambda_infinity(p) * product));
  if (std::abs(eta.imag()) < 1e-8) {
    throw error(errc::degenerate_point, "eta0_exact: zero lies on the real axis");
  }
  return detail::make_zero(p, eta, ZeroSource::exact, n, kernel.quad());
}

inline ZeroPair eta0_exact(const FlowParams& p, int n = 1, const QuadratureSpec& quad = {}) {
  if (p.omega() == 0.0) {
    throw error(errc::zero_at_infinity,
                "eta0_exact: at omega = 0 both zeros sit at the point at infinity");
  }
  const SpectrumReport report = index(p, quad);
  if (report.kappa == 0) {
    throw error(errc::no_discrete_spectrum, "no discrete spectrum (kappa=0)");
  }
  return eta0_exact(CauchyKernel(p, 1, quad), n);
}

/// Zero of the truncated series -i Omega + b/2 + (3b/4 - 1/2) / z^2:
///   eta0^2 = i (z0 + 3 i Omega a / 2) / (2 Omega (z0 + a / 2)).
inline ZeroPair eta0_asymptotic(const FlowParams& p, const QuadratureSpec& quad = {}) {
  if (!(p.omega() > 0.0)) {
    throw error(errc::zero_at_infinity, "eta0_asymptotic: diverges as omega -> 0");
  }
  const complex i(0.0, 1.0);
  const double w = p.omega();
  const double a = p.a();
  const complex z0 = p.z0();
  const complex square = i * (z0 + 1.5 * i * w * a) / (2.0 * w * (z0 + 0.5 * a));
  return detail::make_zero(p, detail::right_half_root(square), ZeroSource::asymptotic, 0, quad);
}

/// O(Omega) = (|eta0| - |eta0_as|) / |eta0| * 100, signed.
inline double error_function(const ZeroPair& exact, const ZeroPair& asymptotic) {
  const double e = std::abs(exact.eta0);
  return (e - std::abs(asymptotic.eta0)) / e * 100.0;
}

inline double error_function(double omega, double a, const QuadratureSpec& quad = {}, int n = 1) {
  const FlowParams p = FlowParams::from_a(omega, a);
  return error_function(eta0_exact(p, n, quad), eta0_asymptotic(p, quad));
}

/// Index report with eta0 attached when kappa = 1.
inline SpectrumReport spectrum_report(const FlowParams& p, const QuadratureSpec& quad = {},
                                      int n = 1) {
  SpectrumReport report = index(p, quad);
  if (report.kappa == 1) {
    report.eta0 = eta0_exact(CauchyKernel(p, 1, quad), n).eta0;
  }
  return report;
}

struct SweepRow {
  double omega = 0.0;
  std::optional<ZeroPair> exact;
  std::optional<ZeroPair> asymptotic;
  std::optional<double> error_percent;  ///< signed O(Omega)
  std::string status = "ok";            ///< "ok" or the errc name of the failure
};

/// One row per grid frequency; a failing row keeps its error name and no
/// numbers.
inline std::vector<SweepRow> zero_sweep(double a, std::span<const double> omega_grid,
                                        const QuadratureSpec& quad = {}, int n = 1) {
  std::vector<SweepRow> rows;
  rows.reserve(omega_grid.size());
  for (const double omega : omega_grid) {
    SweepRow row;
    row.omega = omega;
    try {
      const FlowParams p = FlowParams::from_a(omega, a);
      const ZeroPair exact = eta0_exact(p, n, quad);
      const ZeroPair as = eta0_asymptotic(p, quad);
      row.exact = exact;
      row.asymptotic = as;
      row.error_percent = error_function(exact, as);
    } catch (const error& e) {
      row.status = to_string(e.code());
      row.exact.reset();
      row.asymptotic.reset();
      row.error_percent.reset();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace esdisp
