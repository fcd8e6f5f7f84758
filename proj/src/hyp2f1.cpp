#include "qfourier/hyp2f1.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "qfourier/errors.hpp"

namespace qfourier {

namespace {

constexpr double kSeriesRelTol = 1e-16;
constexpr int kMaxTerms = 100000;
constexpr double kDegenerateTol = 1e-8;
constexpr double kPoleTol = 1e-12;
// Largest transformed-variable modulus accepted before falling back to
// re-expansion of the differential equation.
constexpr double kMaxTransformedModulus = 0.8;
// Largest tolerated ratio of intermediate magnitude to result (about six digits lost).
constexpr double kMaxCancellation = 1e6;
constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::string describe(const Hyp2F1Params& p, Complex z) {
  std::ostringstream os;
  os << "2F1(a=" << p.a << ", b=" << p.b << "; c=" << p.c << "; z=" << z << ")";
  return os.str();
}

bool near_integer(Complex x, double tol) {
  return std::abs(x.imag()) <= tol && std::abs(x.real() - std::round(x.real())) <= tol;
}

bool is_nonpositive_integer(Complex x, double tol) {
  return near_integer(x, tol) && std::round(x.real()) <= 0.0;
}

Complex series(Complex a, Complex b, Complex c, Complex z) {
  Complex sum{1.0, 0.0};
  Complex term{1.0, 0.0};
  double largest = 1.0;
  int small_terms = 0;
  for (int n = 0; n < kMaxTerms; ++n) {
    const double dn = static_cast<double>(n);
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
    sum += term;
    largest = std::max(largest, std::abs(term));
    if (!std::isfinite(largest)) break;
    const bool done = term == Complex{} ||
                      (small_terms = std::abs(term) <= kSeriesRelTol * std::abs(sum) ? small_terms + 1 : 0) >= 2;
    if (done) {
      if (largest > kMaxCancellation * std::abs(sum)) {
        throw ConvergenceError("hypergeometric series lost accuracy to cancellation: " +
                               describe({a, b, c}, z));
      }
      return sum;
    }
  }
  throw ConvergenceError("hypergeometric series did not converge: " +
                         describe({a, b, c}, z));
}

// Sum of two connection terms, rejected when they cancel catastrophically.
Complex combine(Complex t1, Complex t2, const Hyp2F1Params& p, Complex z) {
  const Complex sum = t1 + t2;
  if (!std::isfinite(std::abs(t1) + std::abs(t2)) ||
      std::abs(t1) + std::abs(t2) > kMaxCancellation * std::abs(sum)) {
    throw ConvergenceError("hypergeometric connection terms cancel: " + describe(p, z));
  }
  return sum;
}

// exp(sum log Gamma(num) - sum log Gamma(den)); zero if a denominator sits on a pole.
template <std::size_t N, std::size_t M>
Complex gamma_ratio(const std::array<Complex, N>& num, const std::array<Complex, M>& den) {
  Complex log_sum{0.0, 0.0};
  for (const Complex& d : den) {
    if (is_nonpositive_integer(d, kPoleTol)) return {0.0, 0.0};
    log_sum -= log_gamma(d);
  }
  for (const Complex& n : num) log_sum += log_gamma(n);
  return std::exp(log_sum);
}

void require_nondegenerate(Complex difference, const char* which, const Hyp2F1Params& p,
                           Complex z) {
  if (near_integer(difference, kDegenerateTol)) {
    std::ostringstream os;
    os << "degenerate hypergeometric parameters: " << which << " = " << difference
       << " is within 1e-8 of an integer; limit formulas are not implemented for "
       << describe(p, z);
    throw DegenerateParameterError(os.str());
  }
}

Complex via_pfaff(const Hyp2F1Params& p, Complex z) {
  const Complex w = z / (z - 1.0);
  // Both Pfaff forms are exact; the one with the smaller leading coefficient
  // avoids huge intermediate terms when a or b is large and close to c.
  if (std::abs(p.b * (p.c - p.a)) < std::abs(p.a * (p.c - p.b))) {
    return std::pow(1.0 - z, -p.b) * series(p.b, p.c - p.a, p.c, w);
  }
  return std::pow(1.0 - z, -p.a) * series(p.a, p.c - p.b, p.c, w);
}

Complex via_one_minus_z(const Hyp2F1Params& p, Complex z) {
  const auto [a, b, c] = p;
  require_nondegenerate(c - a - b, "c-a-b", p, z);
  const Complex w = 1.0 - z;
  const Complex t1 = gamma_ratio<2, 2>({c, c - a - b}, {c - a, c - b}) *
                     series(a, b, a + b - c + 1.0, w);
  const Complex t2 = gamma_ratio<2, 2>({c, a + b - c}, {a, b}) * std::pow(w, c - a - b) *
                     series(c - a, c - b, c - a - b + 1.0, w);
  return combine(t1, t2, p, z);
}

Complex via_reciprocal(const Hyp2F1Params& p, Complex z) {
  const auto [a, b, c] = p;
  require_nondegenerate(a - b, "a-b", p, z);
  const Complex w = 1.0 / z;
  const Complex t1 = gamma_ratio<2, 2>({c, b - a}, {b, c - a}) * std::pow(-z, -a) *
                     series(a, a - c + 1.0, a - b + 1.0, w);
  const Complex t2 = gamma_ratio<2, 2>({c, a - b}, {a, c - b}) * std::pow(-z, -b) *
                     series(b, b - c + 1.0, b - a + 1.0, w);
  return combine(t1, t2, p, z);
}

Complex via_one_over_one_minus_z(const Hyp2F1Params& p, Complex z) {
  const auto [a, b, c] = p;
  require_nondegenerate(a - b, "a-b", p, z);
  const Complex w = 1.0 / (1.0 - z);
  const Complex t1 = gamma_ratio<2, 2>({c, b - a}, {b, c - a}) * std::pow(1.0 - z, -a) *
                     series(a, c - b, a - b + 1.0, w);
  const Complex t2 = gamma_ratio<2, 2>({c, a - b}, {a, c - b}) * std::pow(1.0 - z, -b) *
                     series(b, c - a, b - a + 1.0, w);
  return combine(t1, t2, p, z);
}

Complex via_one_minus_reciprocal(const Hyp2F1Params& p, Complex z) {
  const auto [a, b, c] = p;
  require_nondegenerate(c - a - b, "c-a-b", p, z);
  const Complex w = 1.0 - 1.0 / z;
  const Complex t1 = gamma_ratio<2, 2>({c, c - a - b}, {c - a, c - b}) * std::pow(z, -a) *
                     series(a, a - c + 1.0, a + b - c + 1.0, w);
  const Complex t2 = gamma_ratio<2, 2>({c, a + b - c}, {a, b}) * std::pow(1.0 - z, c - a - b) *
                     std::pow(z, a - c) * series(c - a, 1.0 - a, c - a - b + 1.0, w);
  return combine(t1, t2, p, z);
}

// Integrates z(1-z)F'' + [c-(a+b+1)z]F' - abF = 0 along the segment from
// z/|z| * 1/2 to z by Taylor re-expansion.
Complex via_continuation(const Hyp2F1Params& p, Complex z) {
  const auto [a, b, c] = p;
  Complex here = 0.5 * z / std::abs(z);
  Complex value = series(a, b, c, here);
  Complex slope = a * b / c * series(a + 1.0, b + 1.0, c + 1.0, here);

  for (int step = 0; step < 500; ++step) {
    const Complex remaining = z - here;
    if (std::abs(remaining) == 0.0) return value;
    const double radius = std::min(std::abs(here), std::abs(1.0 - here));
    const double reach = 0.5 * radius;
    const Complex h = std::abs(remaining) <= reach ? remaining : remaining * (reach / std::abs(remaining));

    const Complex p0 = here * (1.0 - here);
    const Complex p1 = 1.0 - 2.0 * here;
    const Complex q0 = c - (a + b + 1.0) * here;
    const Complex q1 = -(a + b + 1.0);
    const Complex r = -a * b;

    // Coefficients of F(here + t) = sum c_n t^n, stored as c_n h^n.
    Complex prev = value;
    Complex curr = slope * h;
    Complex f_sum = prev + curr;
    Complex d_sum = slope;
    int small_terms = 0;
    for (int n = 0; n < 5000; ++n) {
      const double dn = static_cast<double>(n);
      const Complex next =
          -((p1 * dn + q0) * (dn + 1.0) * curr * h +
            (-dn * (dn - 1.0) + q1 * dn + r) * prev * h * h) /
          (p0 * (dn + 2.0) * (dn + 1.0));
      f_sum += next;
      d_sum += (dn + 2.0) * next / h;
      prev = curr;
      curr = next;
      small_terms = std::abs(next) <= kSeriesRelTol * std::abs(f_sum) ? small_terms + 1 : 0;
      if (small_terms >= 2) break;
      if (n == 4999) throw ConvergenceError("hypergeometric continuation stalled: " + describe(p, z));
    }
    value = f_sum;
    slope = d_sum;
    here += h;
  }
  throw ConvergenceError("hypergeometric continuation needed too many steps: " + describe(p, z));
}

struct Candidate {
  Hyp2F1Route route;
  double modulus;
  bool degenerate;
};

Complex evaluate(const Hyp2F1Params& p, Complex z, Hyp2F1Route route) {
  switch (route) {
    case Hyp2F1Route::series: return series(p.a, p.b, p.c, z);
    case Hyp2F1Route::pfaff: return via_pfaff(p, z);
    case Hyp2F1Route::one_minus_z: return via_one_minus_z(p, z);
    case Hyp2F1Route::reciprocal: return via_reciprocal(p, z);
    case Hyp2F1Route::one_over_one_minus_z: return via_one_over_one_minus_z(p, z);
    case Hyp2F1Route::one_minus_reciprocal: return via_one_minus_reciprocal(p, z);
    case Hyp2F1Route::continuation: return via_continuation(p, z);
    case Hyp2F1Route::automatic: break;
  }
  throw DomainError("gauss_2f1: automatic route cannot be evaluated directly");
}

}  // namespace

void Hyp2F1Params::validate() const {
  if (is_nonpositive_integer(c, 1e-12)) {
    std::ostringstream os;
    os << "2F1 lower parameter c = " << c << " is a nonpositive integer";
    throw DomainError(os.str());
  }
  for (const Complex& v : {a, b, c}) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("2F1 parameters must be finite");
  }
}

Complex log_gamma(Complex z) {
  static constexpr std::array<double, 9> kLanczos = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double g = 7.0;
  constexpr double pi = std::numbers::pi;
  if (z.real() < 0.5) {
    return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + g + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex reciprocal_gamma(Complex z) {
  if (is_nonpositive_integer(z, kPoleTol)) return {0.0, 0.0};
  return std::exp(-log_gamma(z));
}

Complex gauss_2f1(const Hyp2F1Params& p, Complex z, Hyp2F1Route route) {
  p.validate();
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("gauss_2f1: z must be finite");
  if (z == Complex{}) return {1.0, 0.0};
  if (route != Hyp2F1Route::automatic) return evaluate(p, z, route);

  // Terminating series are exact polynomials.
  if (is_nonpositive_integer(p.a, 1e-14) || is_nonpositive_integer(p.b, 1e-14)) {
    return series(p.a, p.b, p.c, z);
  }
  if (z.imag() == 0.0 && z.real() >= 1.0) {
    throw DomainError("gauss_2f1: z on the branch cut [1, inf): " + describe(p, z));
  }
  const bool cab = near_integer(p.c - p.a - p.b, kDegenerateTol);
  const bool ab = near_integer(p.a - p.b, kDegenerateTol);
  std::array<Candidate, 6> candidates = {{
      {Hyp2F1Route::series, std::abs(z) <= 0.5 ? 0.0 : kInfinity, false},
      {Hyp2F1Route::pfaff, std::abs(z / (z - 1.0)), false},
      {Hyp2F1Route::one_minus_z, std::abs(1.0 - z), cab},
      {Hyp2F1Route::reciprocal, 1.0 / std::abs(z), ab},
      {Hyp2F1Route::one_over_one_minus_z, 1.0 / std::abs(1.0 - z), ab},
      {Hyp2F1Route::one_minus_reciprocal, std::abs(1.0 - 1.0 / z), cab},
  }};
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) { return x.modulus < y.modulus; });

  // Routes are tried from the smallest series variable outward; one that
  // overflows or cancels hands over to the next, and the ODE continuation
  // is the last resort.
  for (const Candidate& cand : candidates) {
    if (cand.modulus > kMaxTransformedModulus) break;
    if (cand.degenerate) continue;
    try {
      return evaluate(p, z, cand.route);
    } catch (const ConvergenceError&) {
    }
  }
  return via_continuation(p, z);
}

}  // namespace qfourier
