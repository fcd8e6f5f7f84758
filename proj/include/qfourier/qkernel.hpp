#pragma once

#include <complex>

namespace qfourier {

using Complex = std::complex<double>;

/// A deformation index q (or q') restricted to the admissible range [1, 2).
class DeformationParameter {
 public:
  /// Throws DomainError when value is outside [1, 2) or not finite.
  explicit DeformationParameter(double value);

  double value() const noexcept { return value_; }
  bool is_classical() const noexcept { return value_ == 1.0; }

  static bool admissible(double value) noexcept;

 private:
  double value_;
};

/// Step function with H(0) = 1.
double heaviside(double x) noexcept;

/// [H(q-1) - H(q-2)]: one on [1, 2), zero elsewhere.
double admissibility_window(double q) noexcept;

/// Deformed exponential [1 + (1-q) z]^{1/(1-q)} on the principal branch.
///
/// q == 1 returns exp(z). The base is formed through a log1p-style evaluation so
/// the result stays accurate as q -> 1+. Throws BranchCutError when
/// 1 + (1-q) z lies on the closed negative real axis.
Complex q_exp(Complex z, DeformationParameter q);

/// Transform kernel f(x) * e_{q'}(i k x f(x)^{q'-1}); zero when f(x) == 0.
Complex qft_integrand(double x, Complex k, double fx, DeformationParameter qp);

}  // namespace qfourier
