#include "qfourier/transform.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "qfourier/errors.hpp"
#include "qfourier/hyp2f1.hpp"
#include "qfourier/parallel.hpp"

namespace qfourier {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Complex kI{0.0, 1.0};

TransformSample integrate_kernel(const DensitySpec& d, Complex k, DeformationParameter qp,
                                 const QuadratureConfig& cfg, double lo, double hi) {
  const Integrand kernel = [&d, k, qp](double x) { return qft_integrand(x, k, d(x), qp); };
  const IntegralResult r = integrate_over_support(d, kernel, cfg, lo, hi);
  return {k, r.value, r.abs_err_estimate, r.converged};
}

}  // namespace

TransformSample qft_real(const DensitySpec& d, double k, double qp, const QuadratureConfig& cfg) {
  if (admissibility_window(qp) == 0.0) return {Complex(k, 0.0), {}, 0.0, true};
  return integrate_kernel(d, Complex(k, 0.0), DeformationParameter(qp), cfg, -kInf, kInf);
}

TransformSample qft_complex(const DensitySpec& d, Complex k, double qp,
                            const QuadratureConfig& cfg) {
  if (admissibility_window(qp) == 0.0) return {k, {}, 0.0, true};
  if (k.imag() == 0.0) {
    TransformSample s = qft_real(d, k.real(), qp, cfg);
    s.k = k;
    return s;
  }
  const DeformationParameter index(qp);
  if (k.imag() > 0.0) return integrate_kernel(d, k, index, cfg, 0.0, kInf);
  TransformSample s = integrate_kernel(d, k, index, cfg, -kInf, 0.0);
  s.value = -s.value;
  return s;
}

TransformSample ft_diagonal(const DensitySpec& d, Complex k, const QuadratureConfig& cfg,
                            std::optional<double> q) {
  const std::optional<double> index = q ? q : d.intrinsic_q();
  if (!index) {
    throw DomainError("diagonal transform needs q for density " + d.describe());
  }
  return qft_complex(d, k, *index, cfg);
}

Complex hilhorst_uts_closed(double lambda, double q, Complex k) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("hilhorst_uts_closed: lambda must be positive");
  }
  if (admissibility_window(q) == 0.0 || k.imag() < 0.0) return {0.0, 0.0};
  return q_exp(kI * k * lambda, DeformationParameter(q));
}

Complex hilhorst_full_closed(const HilhorstFamily& fam, Complex k, double qp,
                             const ClosedFormOptions& opts) {
  if (admissibility_window(qp) == 0.0 || k.imag() < 0.0) return {0.0, 0.0};
  if (k.imag() == 0.0) {
    throw DomainError("hilhorst_full_closed requires Im(k) > 0");
  }
  if (qp == 1.0) {
    throw DomainError("hilhorst_full_closed requires q' > 1");
  }
  const double beta = fam.beta();
  const double boundary = 1.0 + 1.0 / beta;
  if (std::abs(qp - boundary) <= 1e-12) {
    std::ostringstream os;
    os << "q'=" << qp << " lies on the regime boundary 1+1/beta=" << boundary
       << "; use hilhorst_uts_closed on the diagonal";
    throw DomainError(os.str());
  }

  const double upper = heaviside(qp - boundary) - heaviside(qp - 2.0);
  // The mixed-index first bracket tests q-(1+1/beta), which is identically zero.
  const double lower = opts.bracket == RegimeBracket::q_prime
                           ? heaviside(qp - 1.0) - heaviside(qp - boundary)
                           : heaviside(qp - 1.0) - heaviside(0.0);

  const double s = qp - 1.0;
  const double lambda = fam.lambda();
  const double a = fam.a();
  const double b = fam.b();
  const double lambda_beta = std::pow(lambda, beta);
  const double lambda_bs = std::pow(lambda, beta * s);
  const double gamma = 1.0 - beta * s;

  Complex out{0.0, 0.0};
  if (lower != 0.0) {
    const Hyp2F1Params p{1.0 / s, (2.0 - qp) / (s * gamma), 1.0 / s + beta * (2.0 - qp) / gamma};
    const auto arg = [&](double x) { return 1.0 / (s * kI * k * lambda_bs * std::pow(x, gamma)); };
    const double inner =
        opts.prefactor == FirstRegimePrefactor::derived ? lambda_bs : lambda_beta;
    const Complex pref = s * lambda_beta / ((2.0 - qp) * std::pow((1.0 - qp) * kI * k * inner, 1.0 / s));
    const double e = (qp - 2.0) / s;
    out += lower * pref *
           (std::pow(a, e) * gauss_2f1(p, arg(a)) - std::pow(b, e) * gauss_2f1(p, arg(b)));
  }
  if (upper != 0.0) {
    const Hyp2F1Params p{1.0 / s, (beta - 1.0) / (beta * s - 1.0),
                         (beta * qp - 2.0) / (beta * s - 1.0)};
    const auto arg = [&](double x) { return s * kI * k * lambda_bs * std::pow(x, gamma); };
    out += upper * lambda_beta / (beta - 1.0) *
           (std::pow(a, 1.0 - beta) * gauss_2f1(p, arg(a)) -
            std::pow(b, 1.0 - beta) * gauss_2f1(p, arg(b)));
  }
  return out;
}

unsigned default_worker_count() {
  if (const char* env = std::getenv("QFOURIER_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<TransformSample> qft_batch(const DensitySpec& d, std::span<const Complex> ks,
                                       double qp, const QuadratureConfig& cfg, unsigned workers) {
  cfg.validate();
  std::vector<TransformSample> out(ks.size());
  detail::parallel_for(ks.size(), workers == 0 ? default_worker_count() : workers,
                       [&](std::size_t i) { out[i] = qft_complex(d, ks[i], qp, cfg); });
  return out;
}

std::vector<double> linear_grid(double k_min, double k_max, int n) {
  if (!(k_min < k_max) || n < 2 || !std::isfinite(k_min) || !std::isfinite(k_max)) {
    std::ostringstream os;
    os << "k-grid requires k_min < k_max and n >= 2, got " << k_min << ":" << k_max << ":" << n;
    throw DomainError(os.str());
  }
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double step = (k_max - k_min) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = k_min + step * i;
  grid.back() = k_max;
  return grid;
}

}  // namespace qfourier
