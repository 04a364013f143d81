#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "esdisp/dispersion.hpp"
#include "esdisp/spectrum.hpp"
#include "oracle.hpp"

using namespace esdisp;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace

TEST(FlowParams, DerivedConstants) {
  const FlowParams p = FlowParams::from_a(0.637, 1.0);
  const double w2 = 0.637 * 0.637;
  EXPECT_DOUBLE_EQ(p.b1(), w2 / (1.0 + w2));
  EXPECT_DOUBLE_EQ(p.b2(), -0.637 / (1.0 + w2));
  EXPECT_LT(std::abs(p.b() - complex(p.b1(), p.b2())), 1e-16);
  EXPECT_EQ(p.z0(), complex(1.0, -0.637));
  EXPECT_DOUBLE_EQ(p.prandtl(), 2.0 / 3.0);
}

TEST(FlowParams, PrandtlRoundTrip) {
  for (double a = 0.0; a <= 1.0; a += 0.1) {
    EXPECT_NEAR(FlowParams::a_from_prandtl(FlowParams::prandtl_from_a(a)), a, 1e-15);
  }
  EXPECT_EQ(FlowParams::from_prandtl(0.3, 0.8).a(), 0.5);
  EXPECT_EQ(FlowParams::from_prandtl(0.3, 2.0 / 3.0).a(), 1.0);
  EXPECT_EQ(FlowParams::from_prandtl(0.3, 1.0).a(), 0.0);
  EXPECT_THROW(FlowParams::from_prandtl(0.3, 0.5), error);
}

TEST(FlowParams, BgkHasZeroB) {
  EXPECT_EQ(std::abs(FlowParams::from_a(0.7, 0.0).b()), 0.0);
  EXPECT_EQ(FlowParams::bgk_forced(0.7).b(), complex(0.0, 0.0));
}

TEST(FlowParams, Preconditions) {
  EXPECT_THROW(FlowParams::from_a(-0.1, 0.5), error);
  EXPECT_THROW(FlowParams::from_a(0.1, 1.1), error);
  EXPECT_THROW(FlowParams::from_a(0.1, -0.1), error);
  EXPECT_THROW(FlowParams::from_a(std::nan(""), 0.5), error);
}

TEST(LambdaAt, OmegaZeroIsLambda0) {
  for (double a : {0.0, 0.5, 1.0}) {
    const FlowParams p = FlowParams::from_a(0.0, a);
    EXPECT_LT(std::abs(lambda_at(p, complex(0.0, 0.5)) - lambda0(complex(0.0, 0.5))), 1e-15);
  }
}

TEST(LambdaAt, BgkReduction) {
  const FlowParams p = FlowParams::from_a(0.3, 0.0);
  const complex z(1.0, 1.0);
  EXPECT_LT(std::abs(lambda_at(p, z) - (complex(0.0, -0.3) + lambda0(z))), 1e-15);
}

TEST(LambdaAt, Even) {
  const FlowParams p = FlowParams::from_a(0.5, 1.0);
  const complex z(0.7, 0.9);
  const complex v = lambda_at(p, z);
  EXPECT_LT(std::abs(lambda_at(p, -z) - v), 1e-12 * std::abs(v));
  const complex ref = complex(0.0, -0.5) + (1.0 - p.b() * z * z) * oracle::lambda0(z);
  EXPECT_LT(std::abs(v - ref), 1e-10);
}

TEST(LambdaAt, RejectsRealArgument) {
  EXPECT_THROW(lambda_at(FlowParams::from_a(0.3, 1.0), complex(0.4, 0.0)), error);
}

TEST(LambdaBoundary, AtZero) {
  const FlowParams p = FlowParams::from_a(0.637, 1.0);
  const BoundaryValues bv = lambda_boundary(p, 0.0);
  EXPECT_EQ(bv.plus, complex(1.0, -0.637));
  EXPECT_EQ(bv.minus, complex(1.0, -0.637));
}

TEST(LambdaBoundary, JumpAtOne) {
  const FlowParams p = FlowParams::from_a(0.637, 1.0);
  const BoundaryValues bv = lambda_boundary(p, 1.0);
  const complex expected = complex(0.0, 2.0 * sqrt_pi * std::exp(-1.0)) * (1.0 - p.b());
  EXPECT_LT(std::abs(bv.plus - bv.minus - expected), 1e-15);
}

TEST(LambdaBoundary, JumpHalfSumAndConjugatePath) {
  for (double a : {0.0, 0.5, 1.0}) {
    const FlowParams p = FlowParams::from_a(0.4, a);
    for (double mu = -4.0; mu <= 4.0; mu += 0.125) {
      const BoundaryValues bv = lambda_boundary(p, mu);
      const complex factor = 1.0 - p.b() * mu * mu;
      const complex jump = complex(0.0, 2.0 * sqrt_pi * mu * std::exp(-mu * mu)) * factor;
      EXPECT_LT(std::abs(bv.plus - bv.minus - jump), 1e-12);
      const complex half = complex(0.0, -0.4) + factor * l_func(mu);
      EXPECT_LT(std::abs(0.5 * (bv.plus + bv.minus) - half), 1e-12);
      const BoundaryValues mirror = lambda_boundary(p, -mu);
      EXPECT_EQ(mirror.plus, bv.minus) << "mu=" << mu;
    }
  }
}

TEST(LambdaBoundary, SokhotskyLimit) {
  const FlowParams p = FlowParams::from_a(0.3, 1.0);
  const complex plus = lambda_boundary(p, 0.8).plus;
  const double d1 = std::abs(lambda_at(p, complex(0.8, 1e-4)) - plus);
  const double d2 = std::abs(lambda_at(p, complex(0.8, 1e-5)) - plus);
  EXPECT_LT(d1, 1e-3);
  EXPECT_NEAR(d1 / d2, 10.0, 0.5);
}

TEST(LambdaInfinity, Values) {
  EXPECT_EQ(lambda_infinity(FlowParams::from_a(0.0, 1.0)), complex(0.0, 0.0));
  EXPECT_LT(std::abs(lambda_infinity(FlowParams::from_a(0.5, 0.0)) - complex(0.0, -0.5)), 1e-16);
  const FlowParams p = FlowParams::from_a(0.3, 1.0);
  EXPECT_LT(std::abs(lambda_infinity(p) - lambda_infinity_prandtl_form(p)), 1e-14);
}

TEST(LambdaInfinity, IsTheLimitOfLambda) {
  const FlowParams p = FlowParams::from_a(0.3, 1.0);
  EXPECT_LT(std::abs(lambda_at(p, complex(0.0, 300.0)) - lambda_infinity(p)), 1e-4);
}

TEST(GDecomposition, AtOrigin) {
  for (double w : {0.1, 0.637, 1.5}) {
    const FlowParams p = FlowParams::from_a(w, 1.0);
    const GDecomposition d = g_decomposition(p, 0.0);
    EXPECT_NEAR(d.g1, 1.0 + w * w, 1e-15);
    EXPECT_EQ(d.g2, 0.0);
    EXPECT_EQ(d.theta, 0.0);
    EXPECT_EQ(d.G, complex(1.0, 0.0));
  }
}

// l(tau) decays only like -1/(2 tau^2), so at tau = 8 g1 is still
// Omega^2 (Omega^2 + (1 + a/2)^2) / (1 + Omega^2) plus an O(tau^-2) term.
TEST(GDecomposition, LargeTau) {
  for (double a : {0.0, 0.5, 1.0}) {
    const FlowParams p = FlowParams::from_a(0.3, a);
    const GTerms g = g_terms(p, 8.0);
    const double w2 = 0.09;
    const double limit = w2 * (w2 + (1.0 + 0.5 * a) * (1.0 + 0.5 * a)) / (1.0 + w2);
    EXPECT_NEAR(g.g1, limit, 3e-3) << "a=" << a;
    EXPECT_LT(std::abs(g.g2), 1e-25);
    // The offset shrinks like tau^-2, or like l^2 ~ tau^-4 when b = 0.
    const double far = g_terms(p, 16.0).g1 - limit;
    const double ratio = a == 0.0 ? 16.0 : 4.0;
    EXPECT_NEAR((g.g1 - limit) / far, ratio, 0.1 * ratio) << "a=" << a;
  }
  // At a = 0 the offset is exactly l^2 - s^2.
  const GTerms g0 = g_terms(FlowParams::from_a(0.3, 0.0), 8.0);
  EXPECT_NEAR(g0.g1 - 0.09, l_func(8.0) * l_func(8.0), 1e-15);
}

TEST(GDecomposition, MatchesDirectRatio) {
  const FlowParams p = FlowParams::from_a(0.637, 1.0);
  for (double tau : {0.5, 1.0, 1.3, 2.0}) {
    const GDecomposition d = g_decomposition(p, tau);
    const complex ratio = complex(d.g1, d.g2) / d.g0;
    EXPECT_LT(std::abs(ratio - d.G), 1e-10 * std::abs(d.G)) << "tau=" << tau;
  }
}

TEST(GDecomposition, G0IsModulusOfLambdaMinus) {
  const FlowParams p = FlowParams::from_a(0.45, 0.7);
  for (double tau = 0.0; tau <= 8.0; tau += 0.1) {
    EXPECT_NEAR(g_terms(p, tau).g0, std::norm(lambda_boundary(p, tau).minus), 1e-13);
  }
}

// Without the cross term 2 Omega b2 tau^2 l, g1 does not reproduce G once a > 0.
TEST(GDecomposition, ReducedG1DiffersByCrossTerm) {
  const FlowParams p = FlowParams::from_a(0.637, 1.0);
  const double tau = 1.0;
  const GTerms g = g_terms(p, tau);
  const double cross = 2.0 * p.omega() * p.b2() * tau * tau * l_func(tau);
  EXPECT_NEAR(g.g1 - g1_reduced(1.0, 0.637, tau), cross, 1e-15);
  EXPECT_GT(std::abs(cross), 1e-2);
  EXPECT_EQ(g_terms(FlowParams::from_a(0.637, 0.0), tau).g1, g1_reduced(0.0, 0.637, tau));
}

TEST(GDecomposition, ModulusFactorIdentity) {
  for (double a : {0.0, 0.3, 1.0}) {
    for (double w : {0.1, 0.9}) {
      const FlowParams p = FlowParams::from_a(w, a);
      for (double tau = 0.0; tau <= 3.0; tau += 0.25) {
        const double t2 = tau * tau;
        const double lhs = std::pow(1.0 - p.b1() * t2, 2) + p.b2() * p.b2() * t2 * t2;
        EXPECT_NEAR(lhs, modulus_factor(p, tau), 1e-14 * std::max(1.0, lhs));
      }
    }
  }
}

TEST(GAt, Values) {
  const FlowParams p = FlowParams::from_a(0.3, 1.0);
  EXPECT_EQ(G_at(p, 0.0), complex(1.0, 0.0));
  EXPECT_LT(std::abs(G_at(p, 8.0) - 1.0), 1e-20);
  EXPECT_THROW(G_at(p, -1.0), error);
}

TEST(ThetaProfile, WindingEndpoints) {
  EXPECT_NEAR(ThetaBranch(FlowParams::from_a(0.1, 1.0)).end_angle(), two_pi, 1e-8);
  EXPECT_NEAR(ThetaBranch(FlowParams::from_a(1.0, 1.0)).end_angle(), 0.0, 1e-8);
}

TEST(ThetaProfile, SinglePointGrid) {
  const std::vector<double> grid{0.0};
  const auto s = theta_profile(FlowParams::from_a(0.4, 1.0), grid);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].theta, 0.0);
}

TEST(ThetaProfile, GridPreconditions) {
  const FlowParams p = FlowParams::from_a(0.4, 1.0);
  const std::vector<double> no_origin{0.1, 8.0};
  const std::vector<double> unsorted{0.0, 2.0, 1.0, 8.0};
  const std::vector<double> short_grid{0.0, 1.0, 2.0};
  EXPECT_THROW(theta_profile(p, no_origin), error);
  EXPECT_THROW(theta_profile(p, unsorted), error);
  EXPECT_THROW(theta_profile(p, short_grid), error);
}

TEST(ThetaProfile, RefinedStepsStaySmall) {
  // Step 0.25 is too coarse near tau = 0.9 at Omega = 0.5, so nodes get inserted.
  std::vector<double> grid;
  for (int i = 0; i <= 32; ++i) {
    grid.push_back(0.25 * i);
  }
  for (double w : {0.1, 0.5, 1.0}) {
    const FlowParams p = FlowParams::from_a(w, 1.0);
    const auto s = theta_profile(p, grid);
    if (w == 0.5) {
      EXPECT_GT(s.size(), grid.size());
    }
    for (std::size_t i = 1; i < s.size(); ++i) {
      EXPECT_LT(std::abs(s[i].theta - s[i - 1].theta), 0.5 * std::numbers::pi);
    }
    EXPECT_NEAR(s.back().theta, ThetaBranch(p).end_angle(), 1e-12);
  }
}

// Bisection only triggers on a raw step above pi/2; a grid whose spacing
// hides a full turn is aliased. The default 400-point grid avoids this.
TEST(ThetaProfile, CoarseGridAliases) {
  const std::vector<double> grid{0.0, 4.0, 8.0};
  EXPECT_NEAR(theta_profile(FlowParams::from_a(0.1, 1.0), grid).back().theta, 0.0, 1e-3);
}

TEST(ThetaBranch, OddAndMatchesDecomposition) {
  const ThetaBranch th(FlowParams::from_a(0.3, 0.5));
  for (double tau : {0.2, 0.77, 1.5, 3.0}) {
    EXPECT_DOUBLE_EQ(th(-tau), -th(tau));
    const GDecomposition d = th.decomposition(tau);
    EXPECT_NEAR(std::remainder(d.theta - std::arg(d.G), two_pi), 0.0, 1e-10);
  }
}

// At Omega = 0 the coefficient is (l + i s) / (l - i s): unimodular but not
// identically 1, and its angle still winds once.
TEST(ThetaBranch, OmegaZero) {
  const FlowParams p = FlowParams::from_a(0.0, 1.0);
  EXPECT_NEAR(std::abs(G_at(p, 1.0)), 1.0, 1e-15);
  EXPECT_GT(std::abs(G_at(p, 1.0) - 1.0), 0.5);
  EXPECT_NEAR(ThetaBranch(p).end_angle(), two_pi, 1e-8);
}
