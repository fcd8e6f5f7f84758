#pragma once

#include <span>
#include <vector>

#include "qfourier/densities.hpp"
#include "qfourier/qkernel.hpp"
#include "qfourier/quad.hpp"

namespace qfourier {

/// A finite sample of one equivalence class: Hilhorst members sharing lambda at fixed q.
struct EquivalenceClassProbe {
  double q = 1.5;
  double lambda = 1.0;
  std::vector<HilhorstFamily> members;

  /// Throws DomainError unless there are >= 2 members, all at index q with
  /// lambda equal to `lambda` within 1e-12 relative.
  void validate() const;
};

/// Builds members (a_i, b_i) with b_i solving hilhorst_lambda(a_i, b_i, q) = lambda.
///
/// Throws DomainError on an empty list and UnachievableTargetError naming every
/// offending a otherwise. A single member is allowed here; validate() is what
/// requires two.
EquivalenceClassProbe build_class(double q, double lambda, std::span<const double> a_values);

struct CollapseRow {
  double k = 0.0;
  std::vector<Complex> values;       // per member
  std::vector<double> err_estimates; // per member
  Complex closed_form{};
  double max_pairwise_deviation = 0.0;
  double pairwise_budget = 0.0;      // 10 x summed error estimates of the worst pair
  double max_closed_form_deviation = 0.0;
  double closed_form_budget = 0.0;
};

struct CollapseReport {
  std::vector<CollapseRow> rows;
  double max_pairwise_deviation = 0.0;
  double max_closed_form_deviation = 0.0;
  bool quadrature_converged = true;
  bool collapse_ok = false;
};

/// Diagonal transform of every member at every real k, compared pairwise and
/// against hilhorst_uts_closed(lambda, q, k).
CollapseReport verify_collapse(const EquivalenceClassProbe& p, std::span<const double> k_grid,
                               const QuadratureConfig& qcfg = {}, unsigned workers = 0);

struct SeparationRow {
  double k = 0.0;
  Complex first{};
  Complex second{};
  double difference = 0.0;
};

struct SeparationReport {
  std::vector<SeparationRow> rows;
  double max_difference = 0.0;
  double witness_k = 0.0;
  double floor = 0.0;  // 0.5 |lambda1 - lambda2| k_min |F(k_min lambda_max)|^q, k_min = min_{k != 0} |k|
  bool grid_sufficient = false;
  bool separation_ok = false;
};

/// Closed-form comparison of two classes at the same q. Throws DomainError when
/// the indices differ or the lambdas are not separated by more than 1e-6 relative.
SeparationReport verify_separation(const EquivalenceClassProbe& p1,
                                   const EquivalenceClassProbe& p2,
                                   std::span<const double> k_grid);

}  // namespace qfourier
