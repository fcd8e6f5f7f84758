#include "qfourier/densities.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qfourier/errors.hpp"

namespace qfourier {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_hilhorst_args(double a, double b, double q) {
  if (!(std::isfinite(a) && std::isfinite(b) && a > 0.0 && a < b)) {
    std::ostringstream os;
    os << "Hilhorst support requires 0 < a < b, got a=" << a << " b=" << b;
    throw DomainError(os.str());
  }
  if (!(q > 1.0 && q < 2.0)) {
    std::ostringstream os;
    os << "Hilhorst family requires 1 < q < 2 (beta = 1/(q-1) diverges at q=1), got q=" << q;
    throw DomainError(os.str());
  }
}

double power_exponent(double q) { return (q - 2.0) / (q - 1.0); }

}  // namespace

double hilhorst_lambda(double a, double b, double q) {
  check_hilhorst_args(a, b, q);
  const double e = power_exponent(q);
  const double bracket = ((q - 1.0) / (2.0 - q)) * (std::pow(a, e) - std::pow(b, e));
  return std::pow(bracket, 1.0 - q);
}

double hilhorst_lambda_infimum(double a, double q) {
  check_hilhorst_args(a, std::numeric_limits<double>::max(), q);
  return std::pow(((q - 1.0) / (2.0 - q)) * std::pow(a, power_exponent(q)), 1.0 - q);
}

double solve_b_for_lambda(double a, double lambda_target, double q) {
  const double infimum = hilhorst_lambda_infimum(a, q);
  if (!(lambda_target > infimum) || !std::isfinite(lambda_target)) {
    std::ostringstream os;
    os << std::setprecision(17) << "lambda=" << lambda_target
       << " is not achievable for a=" << a << ", q=" << q
       << "; lambda must exceed the b->inf infimum " << infimum;
    throw UnachievableTargetError(os.str(), infimum);
  }
  // lambda is strictly decreasing in b, so the inversion of the defining
  // relation a^e - b^e = lambda^{1/(1-q)} (2-q)/(q-1) is unique.
  const double e = power_exponent(q);
  const double gap = std::pow(lambda_target, 1.0 / (1.0 - q)) * (2.0 - q) / (q - 1.0);
  const double b_pow = std::pow(a, e) - gap;
  const double b = std::pow(b_pow, 1.0 / e);
  if (!(b > a) || !std::isfinite(b)) {
    std::ostringstream os;
    os << "lambda=" << lambda_target << " yields no finite right end for a=" << a;
    throw UnachievableTargetError(os.str(), infimum);
  }
  return b;
}

HilhorstFamily::HilhorstFamily(double a, double b, double q)
    : a_(a), b_(b), q_(q), lambda_(hilhorst_lambda(a, b, q)), beta_(1.0 / (q - 1.0)) {}

double HilhorstFamily::operator()(double x) const noexcept {
  if (x < a_ || x > b_) return 0.0;
  return std::pow(lambda_ / x, beta_);
}

double HilhorstFamily::analytic_mass() const noexcept {
  return std::pow(lambda_, beta_) * (std::pow(a_, 1.0 - beta_) - std::pow(b_, 1.0 - beta_)) /
         (beta_ - 1.0);
}

QGaussianDensity::QGaussianDensity(double q, double width, const QuadratureConfig& cfg)
    : q_(q), width_(width) {
  DeformationParameter{q};
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw DomainError("q-Gaussian width must be positive and finite");
  }
  const Integrand g = [this](double x) { return Complex(shape(x), 0.0); };
  const IntegralResult half = integrate_semi_infinite(g, 0.0, true, cfg);
  if (!half.converged) throw ConvergenceError("q-Gaussian normalization did not converge");
  norm_ = 1.0 / (2.0 * half.value.real());
}

double QGaussianDensity::shape(double x) const noexcept {
  const double s = (x / width_) * (x / width_);
  if (q_ == 1.0) return std::exp(-s);
  return std::pow(1.0 + (q_ - 1.0) * s, 1.0 / (1.0 - q_));
}

double QGaussianDensity::operator()(double x) const noexcept { return norm_ * shape(x); }

TabulatedDensity::TabulatedDensity(std::vector<double> xs, std::vector<double> fs)
    : xs_(std::move(xs)), fs_(std::move(fs)) {
  if (xs_.size() != fs_.size() || xs_.size() < 2) {
    throw DomainError("tabulated density needs at least two (x, f) pairs");
  }
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(fs_[i])) {
      throw DomainError("tabulated density contains non-finite values");
    }
    if (fs_[i] < 0.0) {
      std::ostringstream os;
      os << "tabulated density has negative value f=" << fs_[i] << " at x=" << xs_[i];
      throw DomainError(os.str());
    }
    if (i > 0 && !(xs_[i] > xs_[i - 1])) {
      std::ostringstream os;
      os << "tabulated x values must be strictly increasing (row " << i + 1 << ")";
      throw DomainError(os.str());
    }
  }
}

TabulatedDensity TabulatedDensity::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open tabulated density file: " + path.string());
  std::vector<double> xs;
  std::vector<double> fs;
  std::string line;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      std::string compact;
      std::remove_copy_if(line.begin(), line.end(), std::back_inserter(compact),
                          [](unsigned char ch) { return std::isspace(ch); });
      if (compact != "x,f") {
        throw DomainError(path.string() + ": expected header 'x,f', got '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw DomainError(path.string() + ":" + std::to_string(lineno) + ": expected 'x,f'");
    }
    try {
      std::size_t used = 0;
      const std::string xs_str = line.substr(0, comma);
      const std::string fs_str = line.substr(comma + 1);
      xs.push_back(std::stod(xs_str, &used));
      fs.push_back(std::stod(fs_str, &used));
    } catch (const std::exception&) {
      throw DomainError(path.string() + ":" + std::to_string(lineno) + ": malformed number");
    }
  }
  if (!header_seen) throw DomainError(path.string() + ": missing header 'x,f'");
  return TabulatedDensity(std::move(xs), std::move(fs));
}

double TabulatedDensity::operator()(double x) const noexcept {
  if (x < xs_.front() || x > xs_.back()) return 0.0;
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  if (it == xs_.end()) return fs_.back();
  const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  const double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
  return fs_[i - 1] + t * (fs_[i] - fs_[i - 1]);
}

bool Support::bounded() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }

double DensitySpec::operator()(double x) const noexcept {
  return std::visit([x](const auto& d) { return d(x); }, variant_);
}

Support DensitySpec::support() const noexcept {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(overloaded{
                        [](const HilhorstFamily& d) { return Support{d.a(), d.b()}; },
                        [](const QGaussianDensity&) { return Support{-inf, inf}; },
                        [](const TabulatedDensity& d) {
                          return Support{d.xs().front(), d.xs().back()};
                        },
                    },
                    variant_);
}

std::vector<double> DensitySpec::discontinuities() const {
  return std::visit(overloaded{
                        [](const HilhorstFamily& d) { return std::vector<double>{d.a(), d.b()}; },
                        [](const QGaussianDensity&) { return std::vector<double>{}; },
                        [](const TabulatedDensity& d) {
                          std::vector<double> out;
                          if (d.fs().front() > 0.0) out.push_back(d.xs().front());
                          if (d.fs().back() > 0.0) out.push_back(d.xs().back());
                          return out;
                        },
                    },
                    variant_);
}

std::vector<double> DensitySpec::breakpoints() const {
  return std::visit(overloaded{
                        [](const HilhorstFamily& d) { return std::vector<double>{d.a(), d.b()}; },
                        [](const QGaussianDensity&) { return std::vector<double>{}; },
                        [](const TabulatedDensity& d) { return d.xs(); },
                    },
                    variant_);
}

std::optional<double> DensitySpec::intrinsic_q() const noexcept {
  return std::visit(overloaded{
                        [](const HilhorstFamily& d) { return std::optional<double>(d.q()); },
                        [](const QGaussianDensity& d) { return std::optional<double>(d.q()); },
                        [](const TabulatedDensity&) { return std::optional<double>{}; },
                    },
                    variant_);
}

std::string DensitySpec::describe() const {
  std::ostringstream os;
  os << std::setprecision(17);
  std::visit(overloaded{
                 [&os](const HilhorstFamily& d) {
                   os << "hilhorst:a=" << d.a() << ",b=" << d.b() << ",q=" << d.q();
                 },
                 [&os](const QGaussianDensity& d) {
                   os << "qgaussian:q=" << d.q() << ",width=" << d.width();
                 },
                 [&os](const TabulatedDensity& d) {
                   os << "tabulated:points=" << d.xs().size() << ",x0=" << d.xs().front()
                      << ",x1=" << d.xs().back();
                 },
             },
             variant_);
  return os.str();
}

double density_eval(const DensitySpec& d, double x) noexcept { return d(x); }

IntegralResult integrate_over_support(const DensitySpec& d, const Integrand& g,
                                      const QuadratureConfig& cfg, double lo, double hi) {
  const Support s = d.support();
  lo = std::max(lo, s.lo);
  hi = std::min(hi, s.hi);
  IntegralResult out;
  out.converged = true;
  if (!(lo < hi)) return out;

  std::vector<double> cuts;
  if (std::isfinite(lo)) cuts.push_back(lo);
  for (double p : d.breakpoints()) {
    if (p > lo && p < hi) cuts.push_back(p);
  }
  if (std::isfinite(hi)) cuts.push_back(hi);
  if (cuts.empty()) cuts.push_back(0.0);

  const auto accumulate = [&out](const IntegralResult& piece) {
    out.value += piece.value;
    out.abs_err_estimate += piece.abs_err_estimate;
    out.subdivisions_used += piece.subdivisions_used;
    out.converged = out.converged && piece.converged;
  };
  if (!std::isfinite(lo)) accumulate(integrate_semi_infinite(g, cuts.front(), false, cfg));
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    accumulate(integrate_finite(g, cuts[i - 1], cuts[i], cfg));
  }
  if (!std::isfinite(hi)) accumulate(integrate_semi_infinite(g, cuts.back(), true, cfg));
  return out;
}

double verify_normalization(const DensitySpec& d, const QuadratureConfig& cfg) {
  const Integrand g = [&d](double x) { return Complex(d(x), 0.0); };
  const IntegralResult r = integrate_over_support(d, g, cfg);
  if (!r.converged) {
    throw ConvergenceError("normalization integral did not converge for " + d.describe());
  }
  return r.value.real();
}

}  // namespace qfourier
