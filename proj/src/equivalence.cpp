#include "qfourier/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "qfourier/errors.hpp"
#include "qfourier/parallel.hpp"
#include "qfourier/transform.hpp"

namespace qfourier {

namespace {

constexpr double kLambdaRelTol = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

void EquivalenceClassProbe::validate() const {
  if (members.size() < 2) throw DomainError("equivalence probe needs at least two members");
  for (const HilhorstFamily& m : members) {
    if (m.q() != q) throw DomainError("equivalence probe members must share the probe's q");
    if (std::abs(m.lambda() - lambda) > kLambdaRelTol * lambda) {
      std::ostringstream os;
      os << std::setprecision(17) << "member (a=" << m.a() << ", b=" << m.b()
         << ") has lambda=" << m.lambda() << ", probe lambda=" << lambda;
      throw DomainError(os.str());
    }
  }
}

EquivalenceClassProbe build_class(double q, double lambda, std::span<const double> a_values) {
  if (a_values.empty()) throw DomainError("build_class: at least one member required");
  EquivalenceClassProbe probe;
  probe.q = q;
  probe.lambda = lambda;
  std::ostringstream failures;
  double infimum = 0.0;
  for (double a : a_values) {
    try {
      probe.members.emplace_back(a, solve_b_for_lambda(a, lambda, q), q);
    } catch (const UnachievableTargetError& e) {
      failures << "\n  a=" << a << ": " << e.what();
      infimum = std::max(infimum, e.infimum());
    }
  }
  if (!failures.str().empty()) {
    throw UnachievableTargetError("build_class: unachievable members:" + failures.str(), infimum);
  }
  return probe;
}

CollapseReport verify_collapse(const EquivalenceClassProbe& p, std::span<const double> k_grid,
                               const QuadratureConfig& qcfg, unsigned workers) {
  p.validate();
  qcfg.validate();
  const std::size_t nm = p.members.size();
  const std::size_t nk = k_grid.size();
  std::vector<DensitySpec> specs;
  specs.reserve(nm);
  for (const HilhorstFamily& m : p.members) specs.emplace_back(m);

  // Flattened (member, k) table.
  std::vector<TransformSample> table(nm * nk);
  detail::parallel_for(table.size(), workers == 0 ? default_worker_count() : workers,
                       [&](std::size_t idx) {
                         const std::size_t m = idx / nk;
                         const std::size_t j = idx % nk;
                         table[idx] = ft_diagonal(specs[m], Complex(k_grid[j], 0.0), qcfg);
                       });

  CollapseReport report;
  bool within_budget = true;
  for (std::size_t j = 0; j < nk; ++j) {
    CollapseRow row;
    row.k = k_grid[j];
    row.closed_form = hilhorst_uts_closed(p.lambda, p.q, Complex(row.k, 0.0));
    for (std::size_t m = 0; m < nm; ++m) {
      const TransformSample& t = table[m * nk + j];
      row.values.push_back(t.value);
      row.err_estimates.push_back(t.abs_err_estimate);
      report.quadrature_converged = report.quadrature_converged && t.converged;
    }
    for (std::size_t m = 0; m < nm; ++m) {
      // Rounding floor so exact agreement is not judged against a zero estimate.
      const double cf_budget = 10.0 * row.err_estimates[m] + 64.0 * kEps * std::abs(row.closed_form);
      const double cf_dev = std::abs(row.values[m] - row.closed_form);
      if (cf_dev > row.max_closed_form_deviation) {
        row.max_closed_form_deviation = cf_dev;
        row.closed_form_budget = cf_budget;
      }
      within_budget = within_budget && cf_dev <= cf_budget;
      for (std::size_t n = m + 1; n < nm; ++n) {
        const double dev = std::abs(row.values[m] - row.values[n]);
        const double budget = 10.0 * (row.err_estimates[m] + row.err_estimates[n]) +
                              64.0 * kEps * (std::abs(row.values[m]) + std::abs(row.values[n]));
        if (dev >= row.max_pairwise_deviation) {
          row.max_pairwise_deviation = dev;
          row.pairwise_budget = budget;
        }
        within_budget = within_budget && dev <= budget;
      }
    }
    report.max_pairwise_deviation = std::max(report.max_pairwise_deviation, row.max_pairwise_deviation);
    report.max_closed_form_deviation =
        std::max(report.max_closed_form_deviation, row.max_closed_form_deviation);
    report.rows.push_back(std::move(row));
  }
  report.collapse_ok = within_budget && report.quadrature_converged && nk > 0;
  return report;
}

SeparationReport verify_separation(const EquivalenceClassProbe& p1,
                                   const EquivalenceClassProbe& p2,
                                   std::span<const double> k_grid) {
  if (p1.q != p2.q) {
    throw DomainError("verify_separation: classes at different q are not comparable");
  }
  if (!(std::abs(p1.lambda - p2.lambda) > 1e-6 * p1.lambda)) {
    throw DomainError("verify_separation: lambdas coincide within 1e-6; same class");
  }
  SeparationReport report;
  double smallest_k = std::numeric_limits<double>::infinity();
  for (double k : k_grid) {
    SeparationRow row;
    row.k = k;
    row.first = hilhorst_uts_closed(p1.lambda, p1.q, Complex(k, 0.0));
    row.second = hilhorst_uts_closed(p2.lambda, p2.q, Complex(k, 0.0));
    row.difference = std::abs(row.first - row.second);
    if (row.difference > report.max_difference) {
      report.max_difference = row.difference;
      report.witness_k = k;
    }
    if (k != 0.0) smallest_k = std::min(smallest_k, std::abs(k));
    report.rows.push_back(row);
  }
  report.grid_sufficient = std::isfinite(smallest_k);
  // d/du [1 + (1-q) i u]^{1/(1-q)} has modulus |F|^q, smallest at the larger u = k lambda,
  // so half of |k| |lambda1 - lambda2| |F(k lambda_max)|^q is a first-order lower bound.
  if (report.grid_sufficient) {
    const double lambda_max = std::max(p1.lambda, p2.lambda);
    const double slope =
        std::pow(std::abs(hilhorst_uts_closed(lambda_max, p1.q, Complex(smallest_k, 0.0))), p1.q);
    report.floor = 0.5 * std::abs(p1.lambda - p2.lambda) * smallest_k * slope;
  }
  report.separation_ok = report.grid_sufficient && report.max_difference >= report.floor;
  return report;
}

}  // namespace qfourier
