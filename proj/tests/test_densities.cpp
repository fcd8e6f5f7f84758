#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "qfourier/densities.hpp"
#include "qfourier/errors.hpp"

using namespace qfourier;

namespace {

const double sqrt2 = std::numbers::sqrt2;

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(HilhorstLambda, KnownValues) {
  EXPECT_NEAR(hilhorst_lambda(1.0, 2.0, 1.5), sqrt2, 1e-15);
  EXPECT_NEAR(hilhorst_lambda(1.5, 6.0, 1.5), sqrt2, 1e-15);
  // 1/1.2 - 1/3.6 = 5/9, lambda = 3/sqrt(5).
  EXPECT_NEAR(hilhorst_lambda(1.2, 3.6, 1.5), 3.0 / std::sqrt(5.0), 1e-14);
  EXPECT_NEAR(hilhorst_lambda(1.2, 3.0, 1.5), sqrt2, 1e-14);
  EXPECT_NEAR(hilhorst_lambda(1.0, 3.0, 1.5), std::sqrt(1.5), 1e-14);
}

TEST(HilhorstLambda, DivergesAsIntervalCloses) {
  EXPECT_GT(hilhorst_lambda(1.0, 1.0 + 1e-9, 1.5), 1e4);
}

TEST(HilhorstLambda, RejectsBadArguments) {
  EXPECT_THROW(hilhorst_lambda(2.0, 1.0, 1.5), DomainError);
  EXPECT_THROW(hilhorst_lambda(1.0, 1.0, 1.5), DomainError);
  EXPECT_THROW(hilhorst_lambda(0.0, 1.0, 1.5), DomainError);
  EXPECT_THROW(hilhorst_lambda(1.0, 2.0, 1.0), DomainError);
  EXPECT_THROW(hilhorst_lambda(1.0, 2.0, 2.0), DomainError);
}

TEST(HilhorstLambda, MonotoneInBothEnds) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ua(0.1, 5.0), uw(0.1, 3.0), uq(1.2, 1.95), ud(1.01, 1.5);
  for (int i = 0; i < 300; ++i) {
    const double a = ua(rng), b = a + uw(rng), q = uq(rng), s = ud(rng);
    const double base = hilhorst_lambda(a, b, q);
    EXPECT_LT(hilhorst_lambda(a, b * s, q), base);
    const double a2 = a + (b - a) * (1.0 - 1.0 / s);
    EXPECT_GT(hilhorst_lambda(a2, b, q), base);
  }
}

TEST(HilhorstLambda, InfimumIsLargeBLimit) {
  EXPECT_NEAR(hilhorst_lambda_infimum(1.0, 1.5), 1.0, 1e-15);
  EXPECT_NEAR(hilhorst_lambda(1.0, 1e12, 1.5), hilhorst_lambda_infimum(1.0, 1.5), 1e-9);
}

TEST(SolveB, KnownValues) {
  EXPECT_NEAR(solve_b_for_lambda(1.0, sqrt2, 1.5), 2.0, 2e-12);
  EXPECT_NEAR(solve_b_for_lambda(1.5, sqrt2, 1.5), 6.0, 6e-12);
  // 1/1.2 - 1/b = 1/2 gives b = 3.
  EXPECT_NEAR(solve_b_for_lambda(1.2, sqrt2, 1.5), 3.0, 3e-12);
}

TEST(SolveB, UnachievableReportsInfimum) {
  try {
    solve_b_for_lambda(1.0, 0.9, 1.5);
    FAIL() << "expected UnachievableTargetError";
  } catch (const UnachievableTargetError& e) {
    EXPECT_NEAR(e.infimum(), 1.0, 1e-15);
  }
  EXPECT_THROW(solve_b_for_lambda(1.0, 1.0, 1.5), UnachievableTargetError);
}

TEST(SolveB, RoundTrip) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ua(0.05, 5.0), uw(0.01, 20.0), uq(1.05, 1.95);
  int well_conditioned = 0;
  for (int i = 0; i < 500; ++i) {
    const double a = ua(rng), b = a + uw(rng), q = uq(rng);
    const double lambda = hilhorst_lambda(a, b, q);
    if (!(lambda > hilhorst_lambda_infimum(a, q))) continue;
    const double b2 = solve_b_for_lambda(a, lambda, q);
    EXPECT_NEAR(hilhorst_lambda(a, b2, q), lambda, 1e-12 * lambda);
    // d(log lambda)/d(log b); when tiny, lambda no longer pins b down in double precision.
    const double p = (q - 2.0) / (q - 1.0);
    const double sensitivity = (2.0 - q) * std::pow(b, p) / (std::pow(a, p) - std::pow(b, p));
    if (sensitivity < 1e-4) continue;
    ++well_conditioned;
    EXPECT_NEAR(b2, b, 1e-10 * b) << a << ' ' << b << ' ' << q;
  }
  EXPECT_GT(well_conditioned, 300);
}

TEST(HilhorstFamily, PointValues) {
  const HilhorstFamily f(1.0, 2.0, 1.5);
  EXPECT_NEAR(f(1.5), 8.0 / 9.0, 1e-15);
  EXPECT_NEAR(f(1.0), 2.0, 1e-15);
  EXPECT_NEAR(f(2.0), 0.5, 1e-15);
  EXPECT_EQ(f(3.0), 0.0);
  EXPECT_EQ(f(0.999), 0.0);
  EXPECT_DOUBLE_EQ(f.beta(), 2.0);
}

TEST(HilhorstFamily, NormalizedNumerically) {
  for (auto [a, b, q] : {std::tuple{1.0, 2.0, 1.5}, std::tuple{0.5, 4.0, 1.3},
                         std::tuple{0.01, 100.0, 1.9}, std::tuple{2.0, 2.001, 1.1}}) {
    const HilhorstFamily f(a, b, q);
    EXPECT_NEAR(f.analytic_mass(), 1.0, 1e-13);
    EXPECT_NEAR(verify_normalization(f), 1.0, 1e-9) << a << ' ' << b << ' ' << q;
  }
}

TEST(HilhorstFamily, RandomMembersAreNormalized) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ua(0.05, 5.0), uw(0.05, 20.0), uq(1.02, 1.98);
  for (int i = 0; i < 40; ++i) {
    const double a = ua(rng);
    const HilhorstFamily f(a, a + uw(rng), uq(rng));
    EXPECT_NEAR(verify_normalization(f), 1.0, 1e-9);
  }
}

TEST(QGaussian, NormalizationConstant) {
  // For q = 1.5 the shape is (1 + x^2/2)^{-2}, whose integral is pi/sqrt(2).
  const QGaussianDensity g(1.5, 1.0);
  EXPECT_NEAR(1.0 / g.normalization(), 2.22144146907918, 1e-9);
  EXPECT_NEAR(verify_normalization(g), 1.0, 1e-9);
  EXPECT_NEAR(g(0.0), g.normalization(), 1e-15);
  EXPECT_NEAR(g(1.0), g(-1.0), 1e-15);
}

TEST(QGaussian, ClassicalGaussian) {
  const QGaussianDensity g(1.0, 2.0);
  EXPECT_NEAR(g.normalization(), 1.0 / (2.0 * std::sqrt(std::numbers::pi)), 1e-10);
}

TEST(QGaussian, RejectsBadWidth) {
  EXPECT_THROW(QGaussianDensity(1.5, 0.0), DomainError);
  EXPECT_THROW(QGaussianDensity(2.0, 1.0), DomainError);
}

TEST(Tabulated, InterpolatesAndNormalizes) {
  const TabulatedDensity t({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
  EXPECT_NEAR(t(0.5), 0.5, 1e-15);
  EXPECT_NEAR(t(1.5), 0.5, 1e-15);
  EXPECT_EQ(t(-0.1), 0.0);
  EXPECT_EQ(t(2.1), 0.0);
  EXPECT_NEAR(verify_normalization(t), 1.0, 1e-12);
}

TEST(Tabulated, DoubledValuesIntegrateToTwo) {
  const TabulatedDensity t({0.0, 1.0, 2.0}, {0.0, 2.0, 0.0});
  EXPECT_NEAR(verify_normalization(t), 2.0, 1e-12);
}

TEST(Tabulated, RejectsInvalidGrids) {
  EXPECT_THROW(TabulatedDensity({0.0}, {1.0}), DomainError);
  EXPECT_THROW(TabulatedDensity({0.0, 1.0}, {1.0}), DomainError);
  EXPECT_THROW(TabulatedDensity({1.0, 0.0}, {1.0, 1.0}), DomainError);
  EXPECT_THROW(TabulatedDensity({0.0, 1.0}, {-1.0, 1.0}), DomainError);
}

TEST(Tabulated, LoadsCsv) {
  const auto path = write_temp("qfourier_tab_ok.csv", "# triangle\nx,f\n0,0\n1,1\n# mid comment\n2,0\n");
  const TabulatedDensity t = TabulatedDensity::load_csv(path);
  ASSERT_EQ(t.xs().size(), 3u);
  EXPECT_DOUBLE_EQ(t.fs()[1], 1.0);
  std::filesystem::remove(path);
}

TEST(Tabulated, CsvErrors) {
  EXPECT_THROW(TabulatedDensity::load_csv("/nonexistent/qfourier.csv"), DomainError);
  const auto bad_header = write_temp("qfourier_tab_hdr.csv", "a,b\n0,0\n1,1\n");
  EXPECT_THROW(TabulatedDensity::load_csv(bad_header), DomainError);
  const auto bad_row = write_temp("qfourier_tab_row.csv", "x,f\n0,0\n1,oops\n");
  EXPECT_THROW(TabulatedDensity::load_csv(bad_row), DomainError);
  std::filesystem::remove(bad_header);
  std::filesystem::remove(bad_row);
}

TEST(DensitySpec, SupportAndDiscontinuities) {
  const DensitySpec h = HilhorstFamily(1.0, 2.0, 1.5);
  EXPECT_TRUE(h.support().bounded());
  EXPECT_EQ(h.support().lo, 1.0);
  EXPECT_EQ(h.support().hi, 2.0);
  EXPECT_EQ(h.discontinuities(), (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(h.intrinsic_q(), 1.5);
  EXPECT_NEAR(density_eval(h, 1.5), 8.0 / 9.0, 1e-15);

  const DensitySpec g = QGaussianDensity(1.5, 1.0);
  EXPECT_FALSE(g.support().bounded());
  EXPECT_TRUE(g.discontinuities().empty());

  const DensitySpec t = TabulatedDensity({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
  EXPECT_TRUE(t.discontinuities().empty());
  EXPECT_FALSE(t.intrinsic_q().has_value());
  EXPECT_EQ(t.breakpoints(), (std::vector<double>{0.0, 1.0, 2.0}));
}

TEST(DensitySpec, NonNegativeEverywhere) {
  const DensitySpec ds[] = {HilhorstFamily(0.5, 4.0, 1.3), QGaussianDensity(1.7, 0.5),
                            TabulatedDensity({0.0, 1.0, 3.0}, {0.5, 0.0, 0.5})};
  for (const DensitySpec& d : ds) {
    for (int i = -200; i <= 200; ++i) EXPECT_GE(d(i * 0.05), 0.0);
  }
}
