#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "esdisp/factorization.hpp"
#include "esdisp/zeros.hpp"

using namespace esdisp;

namespace {

constexpr double pi = std::numbers::pi;

// 5 x 5 off-axis grid: x in [-2, 2], y from -3 to 3 avoiding |y| < 0.5.
std::vector<complex> off_axis_grid() {
  std::vector<complex> out;
  for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    for (double y : {-3.0, -0.5, 0.5, 1.75, 3.0}) {
      out.emplace_back(x, y);
    }
  }
  return out;
}

errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no throw";
  return errc::domain;
}

}  // namespace

TEST(Zeta, AtOrigin) {
  const FlowParams p = FlowParams::from_a(0.3, 1.0);
  EXPECT_EQ(zeta(p, 0, 0.0), complex(0.0, 0.0));
  EXPECT_NEAR(zeta(p, 1, 0.0).real(), -pi, 1e-15);
  EXPECT_EQ(zeta(p, 1, 0.0).imag(), 0.0);
}

TEST(Zeta, DecaysAtTruncation) {
  const CauchyKernel k(FlowParams::from_a(0.3, 1.0), 1);
  EXPECT_LT(std::abs(k.zeta(8.0)), 1e-12);
  EXPECT_EQ(code_of([&] { k.zeta(-1.0); }), errc::precondition);
}

TEST(Zeta, SamplesFollowDefinition) {
  const FlowParams p = FlowParams::from_a(0.5, 0.5);
  const CauchyKernel k(p, 1);
  for (const ZetaSample& s : k.zeta_samples()) {
    const double theta = k.theta()(s.tau);
    EXPECT_NEAR(s.zeta.real(), 0.5 * theta - pi, 1e-15);
    EXPECT_NEAR(s.zeta.imag(), -0.5 * std::log(std::abs(G_at(p, s.tau))), 1e-15);
  }
}

TEST(CauchyKernel, RejectsOtherIndices) {
  EXPECT_EQ(code_of([] { CauchyKernel(FlowParams::from_a(0.3, 1.0), 2); }), errc::precondition);
}

TEST(V, DecaysLikeInverseZ) {
  const CauchyKernel k(FlowParams::from_a(0.3, 1.0), 1);
  const complex z(0.0, 1e4);
  const complex moment =
      integrate([&](double t) { return k.zeta(t); }, 0.0, 8.0, QuadratureSpec{});
  const double bound = std::abs(moment) / pi / 1e4;
  EXPECT_LE(std::abs(k.V(z)), bound * 1.001);
  EXPECT_NEAR(std::abs(k.V(z)), bound, 1e-3 * bound);
}

TEST(V, TruncationIndependence) {
  const FlowParams p = FlowParams::from_a(0.3, 1.0);
  QuadratureSpec q10;
  q10.tau_max = 10.0;
  QuadratureSpec q12;
  q12.tau_max = 12.0;
  const complex v8 = CauchyKernel(p, 1).V(complex(0.0, 1.0));
  EXPECT_LT(std::abs(CauchyKernel(p, 1, q10).V(complex(0.0, 1.0)) - v8), 1e-10);
  EXPECT_LT(std::abs(CauchyKernel(p, 1, q12).V(complex(0.0, 1.0)) - v8), 1e-9);
}

TEST(V, NoSchwarzSymmetry) {
  const CauchyKernel k(FlowParams::from_a(0.3, 1.0), 1);
  const complex z(0.5, 1.0);
  EXPECT_GT(std::abs(k.V(std::conj(z)) - std::conj(k.V(z))), 1e-3);
}

TEST(V, NearCut) {
  const CauchyKernel k(FlowParams::from_a(0.3, 1.0), 1);
  EXPECT_EQ(code_of([&] { k.V(complex(1.0, 1e-9)); }), errc::near_cut);
  EXPECT_EQ(code_of([&] { k.V(complex(0.0, 0.0)); }), errc::near_cut);
  EXPECT_NO_THROW(k.V(complex(-1.0, 0.0)));
}

TEST(X, LeadingBehaviour) {
  const complex z(0.0, 1e4);
  const CauchyKernel k0(FlowParams::from_a(1.2, 1.0), 0);
  EXPECT_LT(std::abs(k0.X(z) - 1.0), 1e-3);
  const CauchyKernel k1(FlowParams::from_a(0.3, 1.0), 1);
  EXPECT_LT(std::abs(k1.X(z) - 1.0 / z), 1e-3 / std::abs(z));
  EXPECT_EQ(code_of([&] { k1.X(complex(0.0, 0.0)); }), errc::precondition);
}

TEST(X, AtUsesComputedIndex) {
  const FlowParams p = FlowParams::from_a(0.3, 1.0);
  const complex z(0.4, 0.9);
  EXPECT_EQ(X_at(p, z), CauchyKernel(p, 1).X(z));
  EXPECT_EQ(V_at(p, z), CauchyKernel(p, 1).V(z));
}

TEST(X, RiemannBoundaryCondition) {
  const FlowParams p = FlowParams::from_a(0.3, 1.0);
  const CauchyKernel k(p, 1);
  EXPECT_LT(std::abs(k.X_boundary(0.9, Side::above) -
                     G_at(p, 0.9) * k.X_boundary(0.9, Side::below)),
            1e-8 * std::abs(k.X_boundary(0.9, Side::above)));
  for (double mu : {0.3, 0.9, 1.7}) {
    auto gap = [&](double eps) {
      return std::abs(k.X(complex(mu, eps)) - G_at(p, mu) * k.X(complex(mu, -eps)));
    };
    const double g3 = gap(1e-3);
    const double g4 = gap(1e-4);
    EXPECT_LT(g4, g3);
    EXPECT_NEAR(g3 / g4, 10.0, 1.0) << "mu=" << mu;
  }
}

TEST(X, BoundaryRejectsOrigin) {
  const CauchyKernel k(FlowParams::from_a(0.3, 1.0), 1);
  EXPECT_EQ(code_of([&] { k.X_boundary(0.0, Side::above); }), errc::precondition);
  EXPECT_EQ(k.X_boundary(-0.5, Side::above), k.X_boundary(-0.5, Side::below));
}

TEST(Factorization, SpotValues) {
  const FlowParams sub = FlowParams::from_a(0.3, 1.0);
  EXPECT_LT(factorization_residual(sub, spectrum_report(sub), complex(0.0, 2.0)), 1e-6);
  const FlowParams super = FlowParams::from_a(1.2, 1.0);
  EXPECT_LT(factorization_residual(super, index(super), complex(0.0, 2.0)), 1e-6);
}

TEST(Factorization, CommonZero) {
  const FlowParams p = FlowParams::from_a(0.3, 1.0);
  const SpectrumReport r = spectrum_report(p);
  EXPECT_EQ(factorization_residual(p, r, *r.eta0), 0.0);
}

TEST(Factorization, ZeroIndexSign) {
  // With kappa = 0 the product X(z) X(-z) tends to 1, so the right-hand side
  // carries +lambda(inf); the opposite sign gives exactly -lambda.
  const FlowParams p = FlowParams::from_a(1.2, 1.0);
  const CauchyKernel k(p, 0);
  const complex z(0.3, 1.1);
  const complex rhs = factorization_rhs(k, std::nullopt, z);
  EXPECT_LT(std::abs(rhs - lambda_at(p, z)), 1e-8 * std::abs(rhs));
}

TEST(Factorization, NeedsEta0WhenKappaIsOne) {
  const FlowParams p = FlowParams::from_a(0.3, 1.0);
  const CauchyKernel k(p, 1);
  EXPECT_EQ(code_of([&] { factorization_residual(k, index(p), complex(0.0, 1.0)); }),
            errc::precondition);
  EXPECT_EQ(code_of([&] { factorization_residual(k, spectrum_report(p), complex(1.0, 0.0)); }),
            errc::precondition);
}

TEST(Factorization, OffAxisGrid) {
  std::vector<std::pair<double, double>> sub;
  for (double w : {0.1, 0.3, 0.5}) {
    for (double a : {0.0, 0.5, 1.0}) {
      sub.emplace_back(w, a);
    }
  }
  for (auto [w, a] : sub) {
    const FlowParams p = FlowParams::from_a(w, a);
    const SpectrumReport r = spectrum_report(p);
    ASSERT_EQ(r.kappa, 1);
    const CauchyKernel k(p, 1);
    for (const complex z : off_axis_grid()) {
      EXPECT_LT(factorization_residual(k, r, z), 1e-6) << "omega=" << w << " a=" << a << " z=" << z;
    }
  }
  for (double w : {0.8, 1.5}) {
    for (double a : {0.0, 1.0}) {
      const FlowParams p = FlowParams::from_a(w, a);
      const SpectrumReport r = index(p);
      ASSERT_EQ(r.kappa, 0);
      const CauchyKernel k(p, 0);
      for (const complex z : off_axis_grid()) {
        EXPECT_LT(factorization_residual(k, r, z), 1e-6) << "omega=" << w << " a=" << a << " z=" << z;
      }
    }
  }
}

TEST(Factorization, BoundaryForm) {
  for (auto [w, a] : {std::pair{0.3, 1.0}, std::pair{1.2, 0.5}}) {
    const FlowParams p = FlowParams::from_a(w, a);
    const SpectrumReport r = spectrum_report(p);
    const CauchyKernel k(p, r.kappa);
    for (double mu : {0.7, -0.7}) {
      for (Side side : {Side::above, Side::below}) {
        EXPECT_LT(boundary_factorization_residual(k, r, mu, side), 1e-6)
            << "omega=" << w << " mu=" << mu;
      }
    }
  }
}
