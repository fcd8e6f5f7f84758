#pragma once

#include "qfourier/qkernel.hpp"

namespace qfourier {

struct Hyp2F1Params {
  Complex a;
  Complex b;
  Complex c;

  /// Throws DomainError when c is within 1e-12 of a nonpositive integer.
  void validate() const;
};

/// Evaluation route for gauss_2f1. `automatic` picks the transformation whose
/// series variable has the smallest modulus; the others force one route and
/// exist for cross-checking.
enum class Hyp2F1Route {
  automatic,
  series,           // direct power series in z
  pfaff,            // z / (z - 1)
  one_minus_z,      // 1 - z connection
  reciprocal,       // 1 / z connection
  one_over_one_minus_z,  // 1 / (1 - z) connection
  one_minus_reciprocal,  // 1 - 1/z connection
  continuation,     // Taylor re-expansion of the hypergeometric ODE from |z| = 1/2
};

/// Gauss hypergeometric function 2F1(a, b; c; z) on the principal sheet.
///
/// Throws DegenerateParameterError when the selected connection formula needs
/// c-a-b or a-b within 1e-8 of an integer, and ConvergenceError when a series
/// does not settle within 1e5 terms or overflows outside its disc of convergence.
Complex gauss_2f1(const Hyp2F1Params& p, Complex z,
                  Hyp2F1Route route = Hyp2F1Route::automatic);

/// Natural log of the complex gamma function (any branch; meant for exp()).
Complex log_gamma(Complex z);

/// 1 / Gamma(z), exactly zero at the poles.
Complex reciprocal_gamma(Complex z);

}  // namespace qfourier
