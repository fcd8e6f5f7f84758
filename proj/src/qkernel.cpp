#include "qfourier/qkernel.hpp"

#include <cmath>
#include <sstream>

#include "qfourier/errors.hpp"

namespace qfourier {

namespace {

// log(1 + u) without forming 1 + u, accurate for |u| << 1.
Complex log1p(Complex u) {
  const double ur = u.real();
  const double ui = u.imag();
  const double re = 0.5 * std::log1p(ur * (2.0 + ur) + ui * ui);
  const double im = std::atan2(ui, 1.0 + ur);
  return {re, im};
}

}  // namespace

DeformationParameter::DeformationParameter(double value) : value_(value) {
  if (!admissible(value)) {
    std::ostringstream os;
    os << "deformation index " << value << " outside admissible range [1,2)";
    throw DomainError(os.str());
  }
}

bool DeformationParameter::admissible(double value) noexcept {
  return std::isfinite(value) && value >= 1.0 && value < 2.0;
}

double heaviside(double x) noexcept { return x >= 0.0 ? 1.0 : 0.0; }

double admissibility_window(double q) noexcept {
  return heaviside(q - 1.0) - heaviside(q - 2.0);
}

Complex q_exp(Complex z, DeformationParameter q) {
  if (q.is_classical()) return std::exp(z);
  const double one_minus_q = 1.0 - q.value();
  const Complex u = one_minus_q * z;
  if (u.imag() == 0.0 && 1.0 + u.real() <= 0.0) {
    std::ostringstream os;
    os << "q_exp: base 1+(1-q)z = " << 1.0 + u.real()
       << " lies on the principal branch cut (q=" << q.value() << ")";
    throw BranchCutError(os.str());
  }
  return std::exp(log1p(u) / one_minus_q);
}

Complex qft_integrand(double x, Complex k, double fx, DeformationParameter qp) {
  if (fx == 0.0) return {0.0, 0.0};
  const double scale = x * std::pow(fx, qp.value() - 1.0);
  const Complex z = Complex(0.0, 1.0) * k * scale;
  return fx * q_exp(z, qp);
}

}  // namespace qfourier
