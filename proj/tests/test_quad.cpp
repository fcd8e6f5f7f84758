#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "qfourier/errors.hpp"
#include "qfourier/quad.hpp"

using namespace qfourier;

namespace {

constexpr double pi = std::numbers::pi;
const Complex I(0.0, 1.0);

struct Calibration {
  const char* name;
  Integrand f;
  double a;
  double b;
  Complex exact;  // from the antiderivative
};

std::vector<Calibration> calibration_suite() {
  return {
      {"x^2", [](double x) { return Complex(x * x); }, 0.0, 1.0, 1.0 / 3.0},
      {"e^{ix}", [](double x) { return std::exp(I * x); }, 0.0, pi, Complex(0.0, 2.0)},
      {"2/x^2", [](double x) { return Complex(2.0 / (x * x)); }, 1.0, 2.0, 1.0},
      {"1/sqrt(x)", [](double x) { return Complex(1.0 / std::sqrt(x)); }, 0.0, 1.0, 2.0},
      {"log(x)", [](double x) { return Complex(std::log(x)); }, 0.0, 1.0, -1.0},
      {"cos(50x)", [](double x) { return Complex(std::cos(50.0 * x)); }, 0.0, 1.0,
       std::sin(50.0) / 50.0},
      {"x^{-20}", [](double x) { return Complex(std::pow(x, -20.0)); }, 0.5, 20.0,
       (std::pow(0.5, -19.0) - std::pow(20.0, -19.0)) / 19.0},
      {"1/(1+x^2)", [](double x) { return Complex(1.0 / (1.0 + x * x)); }, -3.0, 4.0,
       std::atan(4.0) + std::atan(3.0)},
      {"x e^{3ix}", [](double x) { return x * std::exp(3.0 * I * x); }, 0.0, 2.0,
       // d/dx [e^{3ix}(x/(3i) + 1/9)] = x e^{3ix}
       std::exp(6.0 * I) * (2.0 / (3.0 * I) + 1.0 / 9.0) - 1.0 / 9.0},
      {"e^{-x^2}", [](double x) { return Complex(std::exp(-x * x)); }, -6.0, 6.0,
       std::sqrt(pi) * std::erf(6.0)},
      {"|x-0.3|", [](double x) { return Complex(std::abs(x - 0.3)); }, 0.0, 1.0,
       0.5 * (0.09 + 0.49)},
  };
}

}  // namespace

TEST(IntegrateFinite, CalibrationSuiteIsAccurateAndHonest) {
  for (const Calibration& c : calibration_suite()) {
    const IntegralResult r = integrate_finite(c.f, c.a, c.b);
    const double actual = std::abs(r.value - c.exact);
    EXPECT_TRUE(r.converged) << c.name;
    EXPECT_LE(actual, 1e-9 * std::max(1.0, std::abs(c.exact))) << c.name;
    EXPECT_LE(actual, 10.0 * r.abs_err_estimate) << c.name;
    EXPECT_GE(r.abs_err_estimate, 0.0);
    EXPECT_GE(r.subdivisions_used, 1);
  }
}

TEST(IntegrateFinite, RealIntegrandHasNoImaginaryPart) {
  const IntegralResult r = integrate_finite([](double x) { return Complex(std::sin(x) * x); }, 0.0, 7.0);
  EXPECT_LT(std::abs(r.value.imag()), QuadratureConfig{}.abs_tol);
}

TEST(IntegrateFinite, RejectsBadIntervalAndConfig) {
  const Integrand one = [](double) { return Complex(1.0); };
  EXPECT_THROW(integrate_finite(one, 1.0, 1.0), DomainError);
  EXPECT_THROW(integrate_finite(one, 2.0, 1.0), DomainError);
  QuadratureConfig bad;
  bad.rel_tol = 0.0;
  EXPECT_THROW(integrate_finite(one, 0.0, 1.0, bad), DomainError);
}

TEST(IntegrateFinite, FlagsNonConvergence) {
  QuadratureConfig cfg;
  cfg.max_subdivisions = 3;
  const IntegralResult r =
      integrate_finite([](double x) { return Complex(std::sin(1.0 / x)); }, 1e-4, 1.0, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_LE(r.subdivisions_used, 3);
}

TEST(IntegrateFinite, NeverEvaluatesEndpoints) {
  const Integrand f = [](double x) {
    if (x == 0.0 || x == 1.0) throw std::logic_error("endpoint evaluated");
    return Complex(1.0 / std::sqrt(x * (1.0 - x)));
  };
  const IntegralResult r = integrate_finite(f, 0.0, 1.0);
  EXPECT_NEAR(r.value.real(), pi, 1e-6);
}

TEST(IntegrateFinite, Linearity) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const double w = u(rng), alpha = u(rng);
    const Integrand f = [w](double x) { return std::exp(I * w * x) / (1.0 + x); };
    const Integrand g = [w](double x) { return Complex(std::cos(w * x * x)); };
    const Integrand h = [&](double x) { return alpha * f(x) + g(x); };
    const IntegralResult rf = integrate_finite(f, 0.0, 3.0);
    const IntegralResult rg = integrate_finite(g, 0.0, 3.0);
    const IntegralResult rh = integrate_finite(h, 0.0, 3.0);
    const double budget = std::abs(alpha) * rf.abs_err_estimate + rg.abs_err_estimate +
                          rh.abs_err_estimate + 1e-14;
    EXPECT_LE(std::abs(rh.value - (alpha * rf.value + rg.value)), budget);
  }
}

TEST(IntegrateFinite, Deterministic) {
  const Integrand f = [](double x) { return std::exp(I * 40.0 * x) * std::sqrt(x); };
  const IntegralResult a = integrate_finite(f, 0.0, 3.0);
  const IntegralResult b = integrate_finite(f, 0.0, 3.0);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.abs_err_estimate, b.abs_err_estimate);
}

TEST(IntegrateSemiInfinite, Exponential) {
  const IntegralResult r = integrate_semi_infinite([](double x) { return Complex(std::exp(-x)); }, 0.0, true);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value.real(), 1.0, 1e-12);
}

TEST(IntegrateSemiInfinite, DampedOscillation) {
  const IntegralResult r =
      integrate_semi_infinite([](double x) { return std::exp(-x) * std::exp(I * x); }, 0.0, true);
  const Complex exact = 1.0 / Complex(1.0, -1.0);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(std::abs(r.value - exact), 1e-12);
  EXPECT_NEAR(exact.real(), 0.5, 1e-15);
  EXPECT_NEAR(exact.imag(), 0.5, 1e-15);
}

TEST(IntegrateSemiInfinite, TowardMinusInfinity) {
  const IntegralResult r =
      integrate_semi_infinite([](double x) { return Complex(std::exp(2.0 * x)); }, 1.0, false);
  EXPECT_NEAR(r.value.real(), std::exp(2.0) / 2.0, 1e-10);
}

TEST(IntegrateSemiInfinite, CompactSupportMatchesFinite) {
  const Integrand f = [](double x) { return x > 2.0 ? Complex{} : Complex(x * x * (2.0 - x)); };
  const IntegralResult ray = integrate_semi_infinite(f, 0.0, true);
  const IntegralResult finite = integrate_finite(f, 0.0, 2.0);
  EXPECT_TRUE(ray.converged);
  EXPECT_NEAR(ray.value.real(), finite.value.real(), 1e-13);
  EXPECT_NEAR(finite.value.real(), 4.0 / 3.0, 1e-13);
}

TEST(IntegrateSemiInfinite, PowerLawTail) {
  const IntegralResult r =
      integrate_semi_infinite([](double x) { return Complex(1.0 / ((1.0 + x) * (1.0 + x))); }, 0.0, true);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value.real(), 1.0, 1e-9);
}

TEST(IntegrateSemiInfinite, NonDecayingFails) {
  QuadratureConfig cfg;
  cfg.max_subdivisions = 40;
  const IntegralResult r = integrate_semi_infinite([](double) { return Complex(1.0); }, 0.0, true, cfg);
  EXPECT_FALSE(r.converged);
}
