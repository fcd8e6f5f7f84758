#pragma once

#include <functional>

#include "qfourier/qkernel.hpp"

namespace qfourier {

struct QuadratureConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  // Semi-infinite integration stops once a doubled panel adds less than this
  // fraction of the running total.
  double tail_cutoff = 1e-14;

  /// Throws DomainError if any field violates its invariant.
  void validate() const;
};

struct IntegralResult {
  Complex value{};
  double abs_err_estimate = 0.0;
  int subdivisions_used = 0;
  bool converged = false;
};

using Integrand = std::function<Complex(double)>;

/// Globally adaptive 10/21-point Gauss-Kronrod integration of f over [a, b].
///
/// Panels are bisected in order of largest error estimate until the summed
/// estimate meets max(abs_tol, rel_tol * |value|) or max_subdivisions panels
/// are in use; in the latter case `converged` is false. The rule never
/// evaluates f at a or b.
IntegralResult integrate_finite(const Integrand& f, double a, double b,
                                const QuadratureConfig& cfg = {});

/// Integrates f over [a, +inf) or (-inf, a] by progressively doubled panels.
IntegralResult integrate_semi_infinite(const Integrand& f, double a,
                                       bool toward_plus_infinity,
                                       const QuadratureConfig& cfg = {});

}  // namespace qfourier
