#pragma once

#include <functional>
#include <vector>

#include "qfourier/densities.hpp"
#include "qfourier/qkernel.hpp"
#include "qfourier/quad.hpp"

namespace qfourier {

struct InverseConfig {
  double epsilon = 1e-6;  // q' = 1 + epsilon
  double k_max = 200.0;
  int n_k = 8192;         // composite Simpson panels on [-k_max, k_max]; must be even
  std::vector<double> x_points;

  void validate() const;
};

/// F sampled at q' = 1 + epsilon on the uniform grid of n_k + 1 points.
struct SpectrumSamples {
  double k_max = 0.0;
  std::vector<double> ks;
  std::vector<Complex> values;
  double max_abs_err_estimate = 0.0;
  bool converged = true;
};

struct InversePoint {
  double x = 0.0;
  double value = 0.0;            // real part of (1/2pi) int F(k) e^{-ikx} dk
  double imag_residue = 0.0;     // discarded imaginary part
  bool residue_warning = false;  // |imag_residue| > 1e-3 |value|
  bool truncation_warning = false;  // F has not decayed at +-k_max
};

using Spectrum = std::function<Complex(double)>;

SpectrumSamples sample_spectrum(const Spectrum& F, const InverseConfig& cfg,
                                unsigned workers = 1);

/// Composite Simpson evaluation of the truncated inverse integral at x.
InversePoint invert_samples(const SpectrumSamples& samples, double x);

/// Samples F and inverts at x.
InversePoint inverse_qft(const Spectrum& F, const InverseConfig& cfg, double x);

struct RecoveryPoint {
  double x = 0.0;
  double f_true = 0.0;
  double f_recovered = 0.0;
  double abs_err = 0.0;
  bool flagged = false;  // within 0.01 * support width of a jump; excluded from l1
  double imag_residue = 0.0;
  bool residue_warning = false;
};

struct RecoveryReport {
  std::vector<RecoveryPoint> points;
  double l1_error = 0.0;  // sum of abs_err over unflagged points
  bool truncation_warning = false;
  double max_transform_err_estimate = 0.0;
  bool transform_converged = true;
};

/// Transforms d at q' = 1 + epsilon by qft_real on the k-grid, inverts at every
/// x point, and compares against the density.
RecoveryReport roundtrip(const DensitySpec& d, const InverseConfig& cfg,
                         const QuadratureConfig& qcfg = {}, unsigned workers = 0);

}  // namespace qfourier
