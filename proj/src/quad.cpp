#include "qfourier/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qfourier/errors.hpp"

namespace qfourier {

namespace {

// Kronrod abscissae on [-1, 1]; odd indices are the 10-point Gauss nodes.
constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980942787, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  Complex value;
  double err;
};

Panel gauss_kronrod_21(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  std::array<Complex, 21> fv;
  fv[20] = f(center);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    // Outer nodes of very narrow panels can round onto an endpoint.
    fv[2 * j] = f(std::max(center - dx, std::nextafter(a, b)));
    fv[2 * j + 1] = f(std::min(center + dx, std::nextafter(b, a)));
  }

  Complex kronrod = kKronrodWeights[10] * fv[20];
  Complex gauss{0.0, 0.0};
  double abs_sum = kKronrodWeights[10] * std::abs(fv[20]);
  for (std::size_t j = 0; j < 10; ++j) {
    const Complex pair = fv[2 * j] + fv[2 * j + 1];
    kronrod += kKronrodWeights[j] * pair;
    abs_sum += kKronrodWeights[j] * (std::abs(fv[2 * j]) + std::abs(fv[2 * j + 1]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  const Complex mean = 0.5 * kronrod;
  double asc = kKronrodWeights[10] * std::abs(fv[20] - mean);
  for (std::size_t j = 0; j < 10; ++j) {
    asc += kKronrodWeights[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));
  }

  const double scale = std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  const double resasc = asc * scale;
  const double resabs = abs_sum * scale;
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return {a, b, kronrod * half, err};
}

bool meets_tolerance(double err, Complex value, const QuadratureConfig& cfg) {
  return err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1 || !(tail_cutoff > 0.0)) {
    std::ostringstream os;
    os << "invalid quadrature config: rel_tol=" << rel_tol << " abs_tol=" << abs_tol
       << " max_subdivisions=" << max_subdivisions << " tail_cutoff=" << tail_cutoff;
    throw DomainError(os.str());
  }
}

IntegralResult integrate_finite(const Integrand& f, double a, double b,
                                const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    std::ostringstream os;
    os << "integrate_finite: invalid interval [" << a << ", " << b << "]";
    throw DomainError(os.str());
  }

  const auto by_error = [](const Panel& x, const Panel& y) { return x.err < y.err; };
  std::vector<Panel> heap;
  heap.reserve(static_cast<std::size_t>(cfg.max_subdivisions) + 1);
  heap.push_back(gauss_kronrod_21(f, a, b));

  Complex total = heap.front().value;
  double total_err = heap.front().err;
  bool converged = meets_tolerance(total_err, total, cfg);
  bool resolution_exhausted = false;

  while (!converged && static_cast<int>(heap.size()) < cfg.max_subdivisions) {
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), by_error);
      resolution_exhausted = true;
      break;
    }
    const Panel left = gauss_kronrod_21(f, worst.a, mid);
    const Panel right = gauss_kronrod_21(f, mid, worst.b);
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);

    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    converged = meets_tolerance(total_err, total, cfg);
  }

  // Re-sum left to right so the result does not depend on refinement history.
  std::sort(heap.begin(), heap.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  IntegralResult out;
  for (const Panel& p : heap) {
    out.value += p.value;
    out.abs_err_estimate += p.err;
  }
  out.subdivisions_used = static_cast<int>(heap.size());
  out.converged = !resolution_exhausted && meets_tolerance(out.abs_err_estimate, out.value, cfg);
  return out;
}

IntegralResult integrate_semi_infinite(const Integrand& f, double a, bool toward_plus_infinity,
                                       const QuadratureConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(a)) throw DomainError("integrate_semi_infinite: start point must be finite");

  const double sign = toward_plus_infinity ? 1.0 : -1.0;
  IntegralResult out;
  double start = a;
  double width = 1.0;
  int quiet_panels = 0;
  bool panels_converged = true;
  Complex last{0.0, 0.0};

  for (int panel = 0; panel < cfg.max_subdivisions; ++panel) {
    const double end = start + sign * width;
    if (!std::isfinite(end)) break;
    const double lo = std::min(start, end);
    const double hi = std::max(start, end);
    const IntegralResult piece = integrate_finite(f, lo, hi, cfg);
    out.value += piece.value;
    out.abs_err_estimate += piece.abs_err_estimate;
    out.subdivisions_used += piece.subdivisions_used;
    panels_converged = panels_converged && piece.converged;
    last = piece.value;

    const double threshold = std::max(cfg.tail_cutoff * std::abs(out.value),
                                       std::numeric_limits<double>::min());
    quiet_panels = (std::abs(piece.value) <= threshold || piece.value == Complex{}) ? quiet_panels + 1
                                                                                   : 0;
    if (quiet_panels >= 2) {
      out.abs_err_estimate += std::abs(last);
      out.converged = panels_converged;
      return out;
    }
    start = end;
    width *= 2.0;
  }
  out.abs_err_estimate += std::abs(last);
  out.converged = false;
  return out;
}

}  // namespace qfourier
