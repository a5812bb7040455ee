#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "alphaunit/numeric_kernels.hpp"
#include "oracles.hpp"

using namespace alphaunit;

TEST(StdNormalPdf, KnownValues) {
  EXPECT_NEAR(std_normal_pdf(0.0), 0.3989423, 1e-7);
  EXPECT_NEAR(std_normal_pdf(1.0), 0.2419707, 1e-7);
}

TEST(StdNormalPdf, Symmetric) {
  for (double x = 0.0; x < 40.0; x += 0.37) EXPECT_EQ(std_normal_pdf(x), std_normal_pdf(-x));
}

TEST(StdNormalCdf, KnownValues) {
  EXPECT_EQ(std_normal_cdf(0.0), 0.5);
  EXPECT_NEAR(std_normal_cdf(1.96), 0.9750021048517796, 1e-15);
  EXPECT_EQ(std_normal_cdf(std::numeric_limits<double>::infinity()), 1.0);
  EXPECT_EQ(std_normal_cdf(-std::numeric_limits<double>::infinity()), 0.0);
}

TEST(StdNormalCdf, ReflectionAndBoostAgreement) {
  double prev = 0.0;
  for (double x = -38.0; x <= 38.0; x += 0.05) {
    const double p = std_normal_cdf(x);
    EXPECT_LE(std::abs(p + std_normal_cdf(-x) - 1.0), 1e-15) << x;
    EXPECT_GE(p, prev);
    prev = p;
    const double ref = oracle::normal_cdf(x);
    // Relative condition number of Phi grows like x^2 in the tail.
    const double rel = 1e-14 + 4.0 * x * x * std::numeric_limits<double>::epsilon();
    EXPECT_NEAR(p, ref, rel * std::max(ref, 1e-300) + 1e-300) << x;
  }
}

TEST(ScaledNormalTail, KnownValues) {
  EXPECT_DOUBLE_EQ(scaled_normal_tail(0.0), 0.5);
  const double asymptote = 1.0 / (100.0 * std::sqrt(2.0 * std::numbers::pi));
  EXPECT_NEAR(scaled_normal_tail(100.0) / asymptote, 1.0, 1e-4);
  EXPECT_TRUE(std::isfinite(scaled_normal_tail(1e4)));
  EXPECT_NEAR(scaled_normal_tail(1e4) * 1e4 * std::sqrt(2.0 * std::numbers::pi), 1.0, 1e-7);
}

TEST(ScaledNormalTail, RejectsNegative) { EXPECT_THROW(scaled_normal_tail(-0.1), domain_error); }

TEST(ScaledNormalTail, StrictlyDecreasing) {
  double prev = scaled_normal_tail(0.0);
  for (double x = 0.5; x <= 50.0; x += 0.5) {
    const double v = scaled_normal_tail(x);
    EXPECT_LT(v, prev) << x;
    prev = v;
  }
}

TEST(ScaledNormalTail, MatchesUpperTail) {
  for (double x = 0.0; x <= 37.0; x += 0.25) {
    const double tail = oracle::normal_cdf(-x);
    const double got = scaled_normal_tail(x) * std::exp(-0.5 * x * x);
    EXPECT_NEAR(got / tail, 1.0, 1e-13 + 4.0 * x * x * std::numeric_limits<double>::epsilon()) << x;
  }
}

TEST(LogGamma, KnownValues) {
  EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(1.5), std::log(std::sqrt(std::numbers::pi) / 2.0), 1e-14);
  EXPECT_NEAR(log_gamma(10.0), std::log(362880.0), 1e-13);
  EXPECT_THROW(log_gamma(0.0), domain_error);
  EXPECT_THROW(log_gamma(-2.5), domain_error);
}

TEST(LogGamma, RecurrenceAndBoost) {
  for (double x = 0.05; x < 2000.0; x *= 1.37) {
    EXPECT_NEAR(log_gamma(x + 1.0), std::log(x) + log_gamma(x), 1e-12 * std::max(1.0, log_gamma(x)))
        << x;
    EXPECT_NEAR(log_gamma(x), oracle::lgamma(x), 1e-13 * std::max(1.0, std::abs(oracle::lgamma(x))))
        << x;
  }
}

TEST(ChiSquareCdf, KnownValues) {
  EXPECT_EQ(chi_square_cdf(0.0, 3), 0.0);
  EXPECT_NEAR(chi_square_cdf(2.36597, 3), 0.5, 1e-5);
  EXPECT_NEAR(chi_square_cdf(2.365973884375338, 3), 0.5, 1e-14);
  EXPECT_NEAR(chi_square_cdf(2.0, 3), 0.4275932955291202, 1e-14);
  EXPECT_NEAR(chi_square_cdf(1e4, 3), 1.0, 1e-15);
  EXPECT_EQ(chi_square_cdf(std::numeric_limits<double>::infinity(), 3), 1.0);
  EXPECT_THROW(chi_square_cdf(-1.0, 3), domain_error);
}

TEST(ChiSquareCdf, MatchesSimpsonQuadratureOfDensity) {
  for (double w = 0.0; w <= 30.0; w += 0.5) {
    // w = s^2 removes the square-root singularity of the density at 0.
    auto g = [](double s) { return 2.0 * s * oracle::chi2_3_pdf(s * s); };
    const double ref = oracle::simpson(g, 0.0, std::sqrt(w), 20000);
    EXPECT_NEAR(chi_square_cdf(w, 3), ref, 1e-8) << w;
  }
}

TEST(ChiSquareCdf, MatchesBoostAcrossDegrees) {
  for (unsigned dof : {1u, 2u, 3u, 5u, 9u, 60u, 301u}) {
    double prev = 0.0;
    for (double q = 0.01; q < 4.0; q += 0.05) {
      const double w = q * dof;
      const double p = chi_square_cdf(w, dof);
      EXPECT_NEAR(p, oracle::chi_square_cdf(w, dof), 1e-13) << dof << ' ' << w;
      EXPECT_GE(p, prev);
      prev = p;
    }
  }
}

TEST(FindRoot, SquareRootOfTwo) {
  const double r = find_root([](double x) { return x * x - 2.0; }, {0.0, 2.0}, {1e-12, 200});
  EXPECT_NEAR(r, 1.4142136, 1e-7);
  EXPECT_NEAR(r, std::sqrt(2.0), 1e-12);
}

TEST(FindRoot, QuantileRoundTrips) {
  auto g = [](double u) { return std_normal_cdf(u) - u * std_normal_pdf(u) - 0.25; };
  const double u = find_root(g, {-40.0, 0.0}, {1e-14, 400});
  const double x = std::exp(u);
  EXPECT_NEAR(oracle::au_cdf(x, 1.0), 0.5, 1e-12);
}

TEST(FindRoot, ErrorsOnNoSignChange) {
  EXPECT_THROW(find_root([](double x) { return x + 1.0; }, {0.0, 1.0}, {}), bracket_error);
}

TEST(FindRoot, ErrorsOnIterationBudget) {
  EXPECT_THROW(find_root([](double x) { return x - 0.3; }, {0.0, 1.0}, {1e-15, 3}),
               convergence_error);
}

TEST(FindRoot, ValidatesArguments) {
  EXPECT_THROW(find_root([](double x) { return x; }, {1.0, -1.0}, {}), domain_error);
  EXPECT_THROW(find_root([](double x) { return x; }, {-1.0, 1.0}, {0.0, 10}), domain_error);
  EXPECT_THROW(find_root([](double x) { return x; }, {-1.0, 1.0}, {1e-9, 0}), domain_error);
}

TEST(FindRoot, IdempotentOnEpsilonBracket) {
  auto f = [](double x) { return std::cos(x) - x; };
  const tolerance tol{1e-12, 200};
  const double r = find_root(f, {0.0, 1.0}, tol);
  const double again = find_root(f, {r - 1e-10, r + 1e-10}, tol);
  EXPECT_NEAR(again, r, tol.abs_tol);
  EXPECT_EQ(find_root(f, {0.0, 1.0}, tol), r);
}

TEST(FindRoot, NewtonPolishAgrees) {
  auto f = [](double x) { return x * x * x - 5.0; };
  auto df = [](double x) { return 3.0 * x * x; };
  const double r = find_root(f, df, {0.0, 3.0}, {1e-10, 200});
  EXPECT_NEAR(r, std::cbrt(5.0), 1e-14);
}

TEST(StdNormalQuantile, InvertsCdf) {
  EXPECT_NEAR(std_normal_quantile(0.975), 1.959963984540054, 1e-12);
  EXPECT_EQ(std_normal_quantile(0.5), 0.0);
  for (double p : {1e-12, 1e-6, 0.001, 0.025, 0.2, 0.5, 0.8, 0.975, 0.999999}) {
    EXPECT_NEAR(std_normal_cdf(std_normal_quantile(p)), p, 1e-13 * p) << p;
  }
  EXPECT_THROW(std_normal_quantile(0.0), domain_error);
  EXPECT_THROW(std_normal_quantile(1.0), domain_error);
}

TEST(LogGammaHalfStep, MatchesBoostRatio) {
  for (double a = 0.1; a < 1e8; a *= 1.9) {
    EXPECT_NEAR(log_gamma_half_step(a), -std::log(oracle::gamma_half_ratio(a)), 1e-14 * std::max(1.0, std::log(a)))
        << a;
  }
  EXPECT_THROW(log_gamma_half_step(0.0), domain_error);
}
