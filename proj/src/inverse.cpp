#include "qfourier/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qfourier/errors.hpp"
#include "qfourier/parallel.hpp"
#include "qfourier/transform.hpp"

namespace qfourier {

namespace {

// Edge magnitude above this fraction of the peak marks F as not decayed.
constexpr double kTruncationRatio = 0.1;

bool truncation_dominated(const SpectrumSamples& s) {
  double peak = 0.0;
  for (const Complex& v : s.values) peak = std::max(peak, std::abs(v));
  const double edge = std::max(std::abs(s.values.front()), std::abs(s.values.back()));
  return peak > 0.0 && edge > kTruncationRatio * peak;
}

}  // namespace

void InverseConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(k_max > 0.0) || !std::isfinite(k_max) ||
      n_k < 16 || n_k % 2 != 0) {
    std::ostringstream os;
    os << "invalid inverse config: epsilon=" << epsilon << " k_max=" << k_max << " n_k=" << n_k
       << " (need 0<epsilon<1, k_max>0, even n_k>=16)";
    throw DomainError(os.str());
  }
}

SpectrumSamples sample_spectrum(const Spectrum& F, const InverseConfig& cfg, unsigned workers) {
  cfg.validate();
  SpectrumSamples s;
  s.k_max = cfg.k_max;
  const std::size_t n = static_cast<std::size_t>(cfg.n_k) + 1;
  s.ks.resize(n);
  s.values.resize(n);
  const double h = 2.0 * cfg.k_max / cfg.n_k;
  for (std::size_t i = 0; i < n; ++i) s.ks[i] = -cfg.k_max + h * static_cast<double>(i);
  s.ks.back() = cfg.k_max;
  detail::parallel_for(n, workers, [&](std::size_t i) { s.values[i] = F(s.ks[i]); });
  return s;
}

InversePoint invert_samples(const SpectrumSamples& samples, double x) {
  const std::size_t n = samples.ks.size();
  const double h = 2.0 * samples.k_max / static_cast<double>(n - 1);
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double phase = -samples.ks[i] * x;
    sum += w * samples.values[i] * Complex(std::cos(phase), std::sin(phase));
  }
  const Complex integral = sum * (h / 3.0) / (2.0 * std::numbers::pi);

  InversePoint p;
  p.x = x;
  p.value = integral.real();
  p.imag_residue = integral.imag();
  p.residue_warning = std::abs(p.imag_residue) > 1e-3 * std::abs(p.value);
  p.truncation_warning = truncation_dominated(samples);
  return p;
}

InversePoint inverse_qft(const Spectrum& F, const InverseConfig& cfg, double x) {
  return invert_samples(sample_spectrum(F, cfg), x);
}

RecoveryReport roundtrip(const DensitySpec& d, const InverseConfig& cfg,
                         const QuadratureConfig& qcfg, unsigned workers) {
  cfg.validate();
  qcfg.validate();
  const double qp = 1.0 + cfg.epsilon;

  std::vector<double> errs(static_cast<std::size_t>(cfg.n_k) + 1, 0.0);
  std::vector<char> ok(errs.size(), 1);
  const auto index_of = [&cfg](double k) {
    const double h = 2.0 * cfg.k_max / cfg.n_k;
    return static_cast<std::size_t>(std::lround((k + cfg.k_max) / h));
  };
  const Spectrum F = [&](double k) {
    const TransformSample t = qft_real(d, k, qp, qcfg);
    const std::size_t i = index_of(k);
    errs[i] = t.abs_err_estimate;
    ok[i] = t.converged ? 1 : 0;
    return t.value;
  };
  const SpectrumSamples samples =
      sample_spectrum(F, cfg, workers == 0 ? default_worker_count() : workers);

  RecoveryReport report;
  report.max_transform_err_estimate = *std::max_element(errs.begin(), errs.end());
  report.transform_converged = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
  report.truncation_warning = truncation_dominated(samples);

  const std::vector<double> jumps = d.discontinuities();
  const Support sup = d.support();
  const double jump_margin = sup.bounded() ? 0.01 * sup.width() : 0.0;

  for (double x : cfg.x_points) {
    const InversePoint inv = invert_samples(samples, x);
    RecoveryPoint rp;
    rp.x = x;
    rp.f_true = d(x);
    rp.f_recovered = inv.value;
    rp.abs_err = std::abs(rp.f_recovered - rp.f_true);
    rp.imag_residue = inv.imag_residue;
    rp.residue_warning = inv.residue_warning;
    rp.flagged = std::any_of(jumps.begin(), jumps.end(),
                             [&](double j) { return std::abs(x - j) <= jump_margin; });
    if (!rp.flagged) report.l1_error += rp.abs_err;
    report.points.push_back(rp);
  }
  return report;
}

}  // namespace qfourier
