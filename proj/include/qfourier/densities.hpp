#pragma once

#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qfourier/qkernel.hpp"
#include "qfourier/quad.hpp"

namespace qfourier {

/// [((q-1)/(2-q)) (a^{(q-2)/(q-1)} - b^{(q-2)/(q-1)})]^{1-q}: the scale that
/// normalizes (lambda/x)^{1/(q-1)} on [a, b]. Requires 0 < a < b and 1 < q < 2.
double hilhorst_lambda(double a, double b, double q);

/// Limit of hilhorst_lambda as b -> infinity; no member with left end a has a
/// lambda at or below this value.
double hilhorst_lambda_infimum(double a, double q);

/// Right end b > a with hilhorst_lambda(a, b, q) == lambda_target.
/// Throws UnachievableTargetError when lambda_target <= hilhorst_lambda_infimum(a, q).
double solve_b_for_lambda(double a, double lambda_target, double q);

/// Power-law density (lambda/x)^beta on [a, b], zero elsewhere, beta = 1/(q-1).
class HilhorstFamily {
 public:
  HilhorstFamily(double a, double b, double q);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double q() const noexcept { return q_; }
  double lambda() const noexcept { return lambda_; }
  double beta() const noexcept { return beta_; }

  double operator()(double x) const noexcept;

  /// Closed-form integral over [a, b]; equals one up to rounding.
  double analytic_mass() const noexcept;

 private:
  double a_;
  double b_;
  double q_;
  double lambda_;
  double beta_;
};

/// N * e_q(-x^2 / width^2) with N fixed by one numerical normalization.
class QGaussianDensity {
 public:
  QGaussianDensity(double q, double width, const QuadratureConfig& cfg = {});

  double q() const noexcept { return q_; }
  double width() const noexcept { return width_; }
  double normalization() const noexcept { return norm_; }

  double operator()(double x) const noexcept;
  double shape(double x) const noexcept;

 private:
  double q_;
  double width_;
  double norm_ = 1.0;
};

/// Piecewise-linear density through (x_i, f_i), zero outside [x_0, x_n].
class TabulatedDensity {
 public:
  TabulatedDensity(std::vector<double> xs, std::vector<double> fs);

  /// Reads a CSV with header `x,f`. Lines starting with '#' are skipped.
  static TabulatedDensity load_csv(const std::filesystem::path& path);

  const std::vector<double>& xs() const noexcept { return xs_; }
  const std::vector<double>& fs() const noexcept { return fs_; }

  double operator()(double x) const noexcept;

 private:
  std::vector<double> xs_;
  std::vector<double> fs_;
};

struct Support {
  double lo;
  double hi;

  bool bounded() const noexcept;
  double width() const noexcept { return hi - lo; }
};

/// An admissible non-negative density on the real line.
class DensitySpec {
 public:
  using Variant = std::variant<HilhorstFamily, QGaussianDensity, TabulatedDensity>;

  DensitySpec(HilhorstFamily d) : variant_(std::move(d)) {}
  DensitySpec(QGaussianDensity d) : variant_(std::move(d)) {}
  DensitySpec(TabulatedDensity d) : variant_(std::move(d)) {}

  const Variant& variant() const noexcept { return variant_; }

  double operator()(double x) const noexcept;

  /// Exact support for compact variants, (-inf, inf) for the q-Gaussian.
  Support support() const noexcept;

  /// Points where the density jumps (support ends with nonzero one-sided limit).
  std::vector<double> discontinuities() const;

  /// Integration breakpoints inside the support, in increasing order, including
  /// the finite ends. Tabulated densities contribute every grid node.
  std::vector<double> breakpoints() const;

  /// The density's own deformation index, if it carries one.
  std::optional<double> intrinsic_q() const noexcept;

  std::string describe() const;

 private:
  Variant variant_;
};

double density_eval(const DensitySpec& d, double x) noexcept;

/// Integral of d over its support.
double verify_normalization(const DensitySpec& d, const QuadratureConfig& cfg = {});

/// Integrates a kernel g(x) over the support of d, honouring its breakpoints
/// (finite pieces) and splitting infinite rays into semi-infinite integrals.
/// Restricted to [lo, hi] when those are given.
IntegralResult integrate_over_support(const DensitySpec& d, const Integrand& g,
                                      const QuadratureConfig& cfg,
                                      double lo = -std::numeric_limits<double>::infinity(),
                                      double hi = std::numeric_limits<double>::infinity());

}  // namespace qfourier
