#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qfourier/densities.hpp"
#include "qfourier/qkernel.hpp"
#include "qfourier/quad.hpp"

namespace qfourier {

/// One point evaluation of a q-Fourier transform.
struct TransformSample {
  Complex k{};
  Complex value{};
  double abs_err_estimate = 0.0;
  bool converged = true;
};

/// Complex-k q-Fourier transform at index qp.
///
/// Im(k) > 0 integrates the kernel over [0, inf), Im(k) < 0 returns minus the
/// integral over (-inf, 0], and real k is routed to qft_real. qp outside [1, 2)
/// yields zero through the admissibility window.
TransformSample qft_complex(const DensitySpec& d, Complex k, double qp,
                            const QuadratureConfig& cfg = {});

/// Real-axis transform: the kernel integrated over the whole support.
TransformSample qft_real(const DensitySpec& d, double k, double qp,
                         const QuadratureConfig& cfg = {});

/// Diagonal transform F_T: qft_complex at qp equal to the density's own q.
/// `q` overrides/supplies the index for densities that do not carry one.
TransformSample ft_diagonal(const DensitySpec& d, Complex k, const QuadratureConfig& cfg = {},
                            std::optional<double> q = std::nullopt);

/// Closed form of the diagonal transform of any Hilhorst member:
/// [1 + (1-q) i k lambda]^{1/(1-q)} for Im(k) >= 0 (real k read as k + i0),
/// zero for Im(k) < 0 or q outside [1, 2).
Complex hilhorst_uts_closed(double lambda, double q, Complex k);

/// How the two regimes of the hypergeometric closed form are selected.
enum class RegimeBracket {
  /// {H(q'-1) - H[q'-(1+1/beta)]} and {H[q'-(1+1/beta)] - H(q'-2)}: a partition of [1, 2).
  q_prime,
  /// First bracket H(q'-1) - H[q-(1+1/beta)], mixing q and q'; it vanishes identically.
  mixed_index,
};

/// Normalization factor in front of the first-regime hypergeometric pair.
enum class FirstRegimePrefactor {
  /// (q'-1) lambda^beta / ((2-q') [(1-q') i k lambda^{beta(q'-1)}]^{1/(q'-1)}).
  derived,
  /// Same with lambda^beta inside the bracket; off by lambda^{beta - beta/(q'-1)}.
  full_power_inside,
};

struct ClosedFormOptions {
  RegimeBracket bracket = RegimeBracket::q_prime;
  FirstRegimePrefactor prefactor = FirstRegimePrefactor::derived;
};

/// Hypergeometric closed form of the transform of a Hilhorst member at
/// off-diagonal index qp, valid for Im(k) > 0.
///
/// Throws DomainError for real k, qp == 1, or qp on the regime boundary
/// 1 + 1/beta (= q); hypergeometric failures propagate with their parameters.
Complex hilhorst_full_closed(const HilhorstFamily& fam, Complex k, double qp,
                             const ClosedFormOptions& opts = {});

/// Worker count for batch evaluation: $QFOURIER_WORKERS if set, else hardware threads.
unsigned default_worker_count();

/// Evaluates qft_complex on every k; results are in input order.
std::vector<TransformSample> qft_batch(const DensitySpec& d, std::span<const Complex> ks,
                                       double qp, const QuadratureConfig& cfg = {},
                                       unsigned workers = 0);

/// Uniform grid of n points from k_min to k_max inclusive.
std::vector<double> linear_grid(double k_min, double k_max, int n);

}  // namespace qfourier
