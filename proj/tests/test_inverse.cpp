#include <gtest/gtest.h>

#include <cmath>

#include "qfourier/errors.hpp"
#include "qfourier/inverse.hpp"
#include "qfourier/transform.hpp"

using namespace qfourier;

namespace {

const DensitySpec hilhorst12 = HilhorstFamily(1.0, 2.0, 1.5);

InverseConfig config(double epsilon, double k_max, std::vector<double> xs, int n_k = 8192) {
  InverseConfig cfg;
  cfg.epsilon = epsilon;
  cfg.k_max = k_max;
  cfg.n_k = n_k;
  cfg.x_points = std::move(xs);
  return cfg;
}

}  // namespace

TEST(InverseConfig, Validation) {
  EXPECT_NO_THROW(InverseConfig{}.validate());
  EXPECT_THROW(config(0.0, 200.0, {}).validate(), DomainError);
  EXPECT_THROW(config(1.0, 200.0, {}).validate(), DomainError);
  EXPECT_THROW(config(1e-6, 0.0, {}).validate(), DomainError);
  EXPECT_THROW(config(1e-6, 200.0, {}, 8).validate(), DomainError);
  EXPECT_THROW(config(1e-6, 200.0, {}, 101).validate(), DomainError);
}

TEST(InverseQft, GaussianSpectrumRecoversGaussian) {
  // F(k) = exp(-k^2/2) inverts to the standard normal density.
  const Spectrum F = [](double k) { return Complex(std::exp(-0.5 * k * k)); };
  const InverseConfig cfg = config(1e-6, 12.0, {}, 512);
  for (double x : {0.0, 0.7, -1.9}) {
    const InversePoint p = inverse_qft(F, cfg, x);
    EXPECT_NEAR(p.value, std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI), 1e-12);
    EXPECT_NEAR(p.imag_residue, 0.0, 1e-15);
    EXPECT_FALSE(p.residue_warning);
    EXPECT_FALSE(p.truncation_warning);
  }
}

TEST(InverseQft, NonDecayingSpectrumWarns) {
  const Spectrum one = [](double) { return Complex(1.0); };
  const InversePoint p = inverse_qft(one, config(1e-6, 50.0, {}, 1000), 0.3);
  EXPECT_TRUE(p.truncation_warning);
}

TEST(InverseQft, AsymmetricSpectrumRaisesResidueWarning) {
  const Spectrum F = [](double k) { return Complex(std::exp(-0.5 * k * k)) * (k > 0 ? 2.0 : 1.0); };
  EXPECT_TRUE(inverse_qft(F, config(1e-6, 12.0, {}, 512), 0.8).residue_warning);
}

TEST(Roundtrip, TruncatedInverseMatchesReference) {
  // 30-digit evaluation of (1/pi) Re int_0^400 F(k) e^{-ikx} dk for the classical spectrum.
  const RecoveryReport r = roundtrip(hilhorst12, config(1e-9, 400.0, {1.25, 1.5, 1.75, 3.0}));
  ASSERT_EQ(r.points.size(), 4u);
  EXPECT_NEAR(r.points[0].f_recovered, 1.2745419832971633, 2e-6);
  EXPECT_NEAR(r.points[1].f_recovered, 0.88695573224032035, 2e-6);
  EXPECT_NEAR(r.points[2].f_recovered, 0.65174257801884845, 2e-6);
  EXPECT_NEAR(r.points[3].f_recovered, 1.5025926341895e-4, 2e-6);
  EXPECT_EQ(r.points[3].f_true, 0.0);
  EXPECT_TRUE(r.transform_converged);
  EXPECT_FALSE(r.truncation_warning);
  for (const RecoveryPoint& p : r.points) {
    EXPECT_LT(std::abs(p.imag_residue), 1e-4) << p.x;
    EXPECT_FALSE(p.flagged);
  }
}

TEST(Roundtrip, MidpointApproachesDensity) {
  const RecoveryReport r = roundtrip(hilhorst12, config(1e-6, 400.0, {1.5}));
  EXPECT_NEAR(r.points[0].f_recovered, 8.0 / 9.0, 5e-3);
  EXPECT_NEAR(r.points[0].f_true, 8.0 / 9.0, 1e-15);
}

TEST(Roundtrip, JumpPointsAreFlaggedAndExcluded) {
  const RecoveryReport r = roundtrip(hilhorst12, config(1e-6, 100.0, {1.0, 1.005, 1.5, 2.0}, 2048));
  EXPECT_TRUE(r.points[0].flagged);
  EXPECT_TRUE(r.points[1].flagged);
  EXPECT_FALSE(r.points[2].flagged);
  EXPECT_TRUE(r.points[3].flagged);
  EXPECT_DOUBLE_EQ(r.l1_error, r.points[2].abs_err);
}

TEST(Roundtrip, L1ErrorImprovesWithCutoff) {
  double previous = INFINITY;
  for (double k_max : {50.0, 100.0, 200.0, 400.0}) {
    const RecoveryReport r = roundtrip(hilhorst12, config(1e-6, k_max, {1.25, 1.5, 1.75}));
    EXPECT_LE(r.l1_error, 1.1 * previous) << k_max;
    previous = r.l1_error;
  }
}

TEST(Roundtrip, EpsilonStability) {
  const std::vector<double> xs{1.25, 1.5, 1.75};
  const RecoveryReport r1 = roundtrip(hilhorst12, config(1e-6, 200.0, xs, 4096));
  const RecoveryReport r2 = roundtrip(hilhorst12, config(5e-7, 200.0, xs, 4096));
  const RecoveryReport r3 = roundtrip(hilhorst12, config(2.5e-7, 200.0, xs, 4096));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d12 = std::abs(r1.points[i].f_recovered - r2.points[i].f_recovered);
    const double d23 = std::abs(r2.points[i].f_recovered - r3.points[i].f_recovered);
    EXPECT_LE(d23, d12) << xs[i];
    EXPECT_LT(d12, 1e-3) << xs[i];
  }
}

TEST(Roundtrip, WorkerCountDoesNotChangeResult) {
  const InverseConfig cfg = config(1e-6, 50.0, {1.3, 1.6}, 512);
  const RecoveryReport a = roundtrip(hilhorst12, cfg, {}, 1);
  const RecoveryReport b = roundtrip(hilhorst12, cfg, {}, 3);
  for (std::size_t i = 0; i < cfg.x_points.size(); ++i) {
    EXPECT_EQ(a.points[i].f_recovered, b.points[i].f_recovered);
  }
}

TEST(Roundtrip, SmoothDensityRecoversAccurately) {
  const DensitySpec g = QGaussianDensity(1.3, 1.0);
  const RecoveryReport r = roundtrip(g, config(1e-6, 40.0, {0.0, 0.5, 1.5}, 1024));
  for (const RecoveryPoint& p : r.points) {
    EXPECT_NEAR(p.f_recovered, p.f_true, 1e-4) << p.x;
  }
}
