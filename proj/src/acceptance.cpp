#include "qfourier/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "qfourier/densities.hpp"
#include "qfourier/equivalence.hpp"
#include "qfourier/hyp2f1.hpp"
#include "qfourier/inverse.hpp"
#include "qfourier/transform.hpp"

namespace qfourier::acceptance {

namespace {

const double kSqrt2 = std::sqrt(2.0);

struct Outcome {
  bool passed;
  std::string detail;
};

// Accuracy the quadrature was asked to deliver for a value of this size. A
// comparison at tolerance tol only certifies anything when this is <= tol.
double contract(Complex v, const QuadratureConfig& cfg) {
  return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(v));
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

// Fixed composite 5-point Gauss-Legendre rule on uniform panels; shares no code
// with the adaptive integrator.
Complex composite_gauss_legendre(const std::function<Complex(double)>& f, double a, double b,
                                 int panels) {
  static constexpr std::array<double, 5> nodes = {-0.906179845938663992797626878299,
                                                  -0.538469310105683091036314420700, 0.0,
                                                  0.538469310105683091036314420700,
                                                  0.906179845938663992797626878299};
  static constexpr std::array<double, 5> weights = {0.236926885056189087514264040720,
                                                    0.478628670499366468041291514836,
                                                    0.568888888888888888888888888889,
                                                    0.478628670499366468041291514836,
                                                    0.236926885056189087514264040720};
  const double h = (b - a) / panels;
  Complex sum{0.0, 0.0};
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t j = 0; j < nodes.size(); ++j) sum += weights[j] * f(mid + 0.5 * h * nodes[j]);
  }
  return 0.5 * h * sum;
}

Outcome check_normalization(const Options& opts) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> ua(0.1, 5.0), uratio(1.1, 50.0), uq(1.05, 1.9);
  double worst = 0.0;
  double worst_oracle = 0.0;
  bool certified = true;
  for (int i = 0; i < 20; ++i) {
    const double a = ua(rng);
    const double b = a * uratio(rng);
    const double q = uq(rng);
    const HilhorstFamily fam(a, b, q);
    const double mass = verify_normalization(DensitySpec(fam), opts.quad);
    worst = std::max(worst, std::abs(mass - 1.0));
    worst_oracle = std::max(worst_oracle, std::abs(fam.analytic_mass() - 1.0));
    certified = certified && contract(1.0, opts.quad) <= 1e-9;
  }
  const bool ok = worst <= 1e-9 && worst_oracle <= 1e-9 && certified;
  return {ok, "max|int f - 1|=" + sci(worst) + " antiderivative max|mass-1|=" + sci(worst_oracle) +
                  (certified ? "" : " (quadrature tolerance looser than 1e-9)")};
}

Outcome check_diagonal_closed_form(const Options& opts) {
  const DensitySpec d(HilhorstFamily(1.0, 2.0, 1.5));
  double worst = 0.0;
  bool certified = true;
  bool converged = true;
  for (double k : linear_grid(-5.0, 5.0, 21)) {
    const TransformSample s = ft_diagonal(d, Complex(k, 0.0), opts.quad);
    worst = std::max(worst, std::abs(s.value - hilhorst_uts_closed(kSqrt2, 1.5, Complex(k, 0.0))));
    certified = certified && contract(s.value, opts.quad) <= 1e-6;
    converged = converged && s.converged;
  }
  const Complex spot = hilhorst_uts_closed(kSqrt2, 1.5, {1.0, 0.0});
  const Complex spot_oracle = 1.0 / Complex(0.5, -kSqrt2);
  const Complex spot_numeric = ft_diagonal(d, {1.0, 0.0}, opts.quad).value;
  const bool spot_ok = std::abs(spot - spot_oracle) <= 1e-14 &&
                       std::abs(spot.real() - 0.22222) < 1e-5 &&
                       std::abs(spot.imag() - 0.62854) < 1e-5 &&
                       std::abs(spot_numeric - spot_oracle) <= 1e-6;
  std::ostringstream os;
  os << "max|F_T - closed|=" << sci(worst) << " F(1)=" << std::setprecision(10) << spot_numeric.real()
     << (spot_numeric.imag() < 0 ? "" : "+") << spot_numeric.imag() << "i";
  if (!certified) os << " (quadrature tolerance looser than 1e-6)";
  return {worst <= 1e-6 && spot_ok && certified && converged, os.str()};
}

Outcome check_collapse(const Options& opts) {
  const std::array<double, 2> a_values = {1.0, 1.5};
  const EquivalenceClassProbe probe = build_class(1.5, kSqrt2, a_values);
  const bool members_ok = std::abs(probe.members[0].b() - 2.0) <= 1e-12 * 2.0 &&
                          std::abs(probe.members[1].b() - 6.0) <= 1e-12 * 6.0;
  const std::vector<double> grid = linear_grid(-5.0, 5.0, 21);
  const CollapseReport r = verify_collapse(probe, grid, opts.quad, opts.workers);
  bool certified = true;
  for (const CollapseRow& row : r.rows) {
    for (const Complex& v : row.values) certified = certified && contract(v, opts.quad) <= 1e-6;
  }
  std::ostringstream os;
  os << "members b=(" << std::setprecision(15) << probe.members[0].b() << ", "
     << probe.members[1].b() << ") max|dF_T|=" << sci(r.max_pairwise_deviation)
     << " collapse_ok=" << (r.collapse_ok ? "true" : "false");
  if (!certified) os << " (quadrature tolerance looser than 1e-6)";
  return {members_ok && r.max_pairwise_deviation <= 1e-6 && r.quadrature_converged && certified,
          os.str()};
}

struct FullFormMismatch {
  double derived = 0.0;
  double alt_prefactor = 0.0;
  double alt_bracket = 0.0;
  bool certified = true;
};

FullFormMismatch full_form_mismatch(const Options& opts) {
  const HilhorstFamily fam(1.0, 2.0, 1.5);
  const DensitySpec d(fam);
  FullFormMismatch m;
  for (double qp : {1.3, 1.7}) {
    for (Complex k : {Complex(0.0, 0.5), Complex(0.0, 2.0), Complex(1.0, 1.0)}) {
      const TransformSample s = qft_complex(d, k, qp, opts.quad);
      const double scale = std::abs(s.value);
      m.certified = m.certified && s.converged && contract(s.value, opts.quad) <= 1e-6 * scale;
      const auto rel = [&](const ClosedFormOptions& o) {
        return std::abs(hilhorst_full_closed(fam, k, qp, o) - s.value) / scale;
      };
      m.derived = std::max(m.derived, rel({}));
      m.alt_prefactor = std::max(
          m.alt_prefactor, rel({RegimeBracket::q_prime, FirstRegimePrefactor::full_power_inside}));
      m.alt_bracket = std::max(
          m.alt_bracket, rel({RegimeBracket::mixed_index, FirstRegimePrefactor::derived}));
    }
  }
  return m;
}

Outcome check_full_closed_form(const Options& opts) {
  const FullFormMismatch m = full_form_mismatch(opts);
  std::ostringstream os;
  os << "max rel |closed - quadrature|=" << sci(m.derived)
     << " (q' regime bracket, derived prefactor)";
  if (!m.certified) os << " (quadrature tolerance looser than 1e-6)";
  return {m.derived <= 1e-6 && m.certified, os.str()};
}

Outcome check_separation(const Options&) {
  const EquivalenceClassProbe first{1.5, kSqrt2, {}};
  const EquivalenceClassProbe second{1.5, 2.0, {}};
  const std::vector<double> grid = linear_grid(0.1, 5.0, 50);
  const SeparationReport r = verify_separation(first, second, grid);
  std::ostringstream os;
  os << "max|F_UTS1 - F_UTS2|=" << std::setprecision(6) << r.max_difference
     << " at k=" << r.witness_k << " floor=" << r.floor;
  return {r.max_difference >= 0.1 && r.separation_ok, os.str()};
}

Outcome check_classical_limit(const Options& opts) {
  const HilhorstFamily fam(1.0, 2.0, 1.5);
  const DensitySpec d(fam);
  double worst = 0.0;
  bool certified = true;
  for (double k : {0.5, 1.0, 3.0}) {
    const TransformSample s = qft_real(d, k, 1.0 + 1e-8, opts.quad);
    const Complex oracle = composite_gauss_legendre(
        [&](double x) {
          return std::pow(fam.lambda() / x, fam.beta()) * std::exp(Complex(0.0, k * x));
        },
        1.0, 2.0, 4000);
    worst = std::max(worst, std::abs(s.value - oracle));
    certified = certified && s.converged && contract(s.value, opts.quad) <= 1e-6;
  }
  std::string detail = "max|F(q'=1+1e-8) - classical|=" + sci(worst);
  if (!certified) detail += " (quadrature tolerance looser than 1e-6)";
  return {worst <= 1e-6 && certified, detail};
}

Outcome check_inverse(const Options& opts) {
  const DensitySpec d(HilhorstFamily(1.0, 2.0, 1.5));
  InverseConfig cfg;
  cfg.epsilon = 1e-6;
  cfg.x_points = {1.25, 1.5, 1.75};
  std::vector<double> l1;
  double worst_at_400 = 0.0;
  bool certified = true;
  std::ostringstream os;
  for (double k_max : {50.0, 100.0, 200.0, 400.0}) {
    cfg.k_max = k_max;
    const RecoveryReport r = roundtrip(d, cfg, opts.quad, opts.workers);
    l1.push_back(r.l1_error);
    // A uniform error delta in F moves the truncated inverse by at most k_max delta / pi.
    certified = certified && r.transform_converged &&
                k_max / std::numbers::pi * contract(1.0, opts.quad) <= 5e-3;
    if (k_max == 400.0) {
      for (const RecoveryPoint& p : r.points) {
        worst_at_400 = std::max(worst_at_400, p.abs_err);
        os << " err(" << p.x << ")=" << sci(p.abs_err);
      }
    }
  }
  bool monotone = true;
  for (std::size_t i = 1; i < l1.size(); ++i) monotone = monotone && l1[i] <= 1.1 * l1[i - 1];
  std::ostringstream head;
  head << "L1[50,100,200,400]=" << sci(l1[0]) << "," << sci(l1[1]) << "," << sci(l1[2]) << ","
       << sci(l1[3]) << (monotone ? " non-increasing" : " NOT non-increasing")
       << "; k_max=400 pointwise max=" << sci(worst_at_400) << " (bound 5e-3)" << os.str();
  if (!certified) head << " (quadrature tolerance too loose)";
  return {monotone && worst_at_400 <= 5e-3 && certified, head.str()};
}

Outcome check_hyp2f1(const Options& opts) {
  double worst_identity = 0.0;
  const Complex ln_case = gauss_2f1({1.0, 1.0, 2.0}, 0.5);
  worst_identity = std::abs(ln_case - 2.0 * std::log(2.0)) / (2.0 * std::log(2.0));

  const double a = 0.7;
  for (double b : {0.3, 1.9, 3.4}) {
    for (Complex z : {Complex(0.3, 0.1), Complex(-0.8, 0.4), Complex(-4.0, -2.0),
                      Complex(0.6, 0.7), Complex(2.5, 1.5)}) {
      const Complex expect = std::pow(1.0 - z, -a);
      worst_identity = std::max(worst_identity,
                                std::abs(gauss_2f1({a, b, b}, z) - expect) / std::abs(expect));
    }
  }

  std::mt19937_64 rng(opts.seed ^ 0x2f1u);
  std::uniform_real_distribution<double> up(0.1, 2.5), uc(1.2, 4.0), ur(0.0, 3.0),
      uth(-std::numbers::pi, std::numbers::pi);
  const auto near_int = [](double v) { return std::abs(v - std::round(v)) < 0.05; };
  double worst_residual = 0.0;
  int tested = 0;
  while (tested < 100) {
    const double pa = up(rng), pb = up(rng), pc = uc(rng);
    const Complex z = std::polar(ur(rng), uth(rng));
    if (std::abs(1.0 - z) < 0.2 || near_int(pc - pa - pb) || near_int(pa - pb)) continue;
    const Complex f_minus = gauss_2f1({pa, pb, pc - 1.0}, z);
    const Complex f_mid = gauss_2f1({pa, pb, pc}, z);
    const Complex f_plus = gauss_2f1({pa, pb, pc + 1.0}, z);
    const Complex t1 = pc * (pc - 1.0) * (z - 1.0) * f_minus;
    const Complex t2 = pc * (pc - 1.0 - (2.0 * pc - pa - pb - 1.0) * z) * f_mid;
    const Complex t3 = (pc - pa) * (pc - pb) * z * f_plus;
    const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
    worst_residual = std::max(worst_residual, std::abs(t1 + t2 + t3) / scale);
    ++tested;
  }
  return {worst_identity <= 1e-8 && worst_residual <= 1e-8,
          "max identity rel err=" + sci(worst_identity) +
              " max contiguous residual=" + sci(worst_residual) + " over 100 points"};
}

struct Check {
  const char* name;
  Outcome (*run)(const Options&);
};

constexpr std::array<Check, 8> kChecks = {{
    {"normalization of 20 random Hilhorst families", check_normalization},
    {"diagonal transform vs closed form on the real axis", check_diagonal_closed_form},
    {"equivalence collapse of (1,2) and (1.5,6) at q=1.5", check_collapse},
    {"hypergeometric closed form vs quadrature", check_full_closed_form},
    {"class separation for lambda=sqrt2 vs 2", check_separation},
    {"classical limit q'=1+1e-8", check_classical_limit},
    {"inverse recovery of Hilhorst(1,2,1.5)", check_inverse},
    {"2F1 identities and contiguous relation", check_hyp2f1},
}};

}  // namespace

std::vector<std::string> criterion_names() {
  std::vector<std::string> names;
  for (const Check& c : kChecks) names.emplace_back(c.name);
  return names;
}

std::vector<CriterionResult> run_all(const Options& opts, std::ostream* log) {
  std::vector<CriterionResult> results;
  int id = 0;
  for (const Check& c : kChecks) {
    CriterionResult r;
    r.id = ++id;
    r.name = c.name;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = c.run(opts);
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (log) {
      *log << "[" << (r.passed ? "PASS" : "FAIL") << "] " << r.id << ". " << r.name << " -- "
           << r.detail << " (" << std::fixed << std::setprecision(2) << r.seconds << "s)"
           << std::defaultfloat << std::endl;
      if (r.id == 4) {
        // The alternative first-regime prefactor and mixed-index bracket are
        // reported alongside the verdict rather than folded into it.
        try {
          const FullFormMismatch m = full_form_mismatch(opts);
          *log << "[INFO] 4. lambda^beta-inside prefactor: max rel mismatch=" << sci(m.alt_prefactor)
               << "; mixed-index regime bracket: max rel mismatch=" << sci(m.alt_bracket)
               << std::endl;
        } catch (const std::exception& e) {
          *log << "[INFO] 4. alternative variants raised: " << e.what() << std::endl;
        }
      }
    }
    results.push_back(std::move(r));
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.passed; });
}

}  // namespace qfourier::acceptance
