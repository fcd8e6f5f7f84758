#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "qfourier/acceptance.hpp"
#include "qfourier/equivalence.hpp"
#include "qfourier/errors.hpp"
#include "qfourier/hyp2f1.hpp"
#include "qfourier/inverse.hpp"
#include "qfourier/serialize.hpp"
#include "qfourier/transform.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace qfourier;

namespace {

std::string repr_complex(Complex z) {
  std::ostringstream os;
  os << '(' << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "j)";
  return os.str();
}

void bind_errors(py::module_& m) {
  static py::exception<DomainError> domain(m, "DomainError", PyExc_ValueError);
  static py::exception<NumericError> numeric(m, "NumericError", PyExc_RuntimeError);
  static py::exception<BranchCutError> branch(m, "BranchCutError", numeric.ptr());
  static py::exception<ConvergenceError> convergence(m, "ConvergenceError", numeric.ptr());
  static py::exception<DegenerateParameterError> degenerate(m, "DegenerateParameterError", numeric.ptr());
  static py::exception<UnachievableTargetError> unachievable(m, "UnachievableTargetError", numeric.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const UnachievableTargetError& e) {
      py::object err = py::handle(unachievable.ptr())(e.what());
      err.attr("infimum") = e.infimum();
      PyErr_SetObject(unachievable.ptr(), err.ptr());
    } catch (const DegenerateParameterError& e) {
      py::set_error(degenerate, e.what());
    } catch (const ConvergenceError& e) {
      py::set_error(convergence, e.what());
    } catch (const BranchCutError& e) {
      py::set_error(branch, e.what());
    } catch (const NumericError& e) {
      py::set_error(numeric, e.what());
    } catch (const DomainError& e) {
      py::set_error(domain, e.what());
    }
  });
}

void bind_core(py::module_& m) {
  py::class_<QuadratureConfig>(m, "QuadratureConfig")
      .def(py::init([](double rel_tol, double abs_tol, int max_subdivisions, double tail_cutoff) {
             QuadratureConfig cfg{rel_tol, abs_tol, max_subdivisions, tail_cutoff};
             cfg.validate();
             return cfg;
           }),
           "rel_tol"_a = 1e-9, "abs_tol"_a = 1e-12, "max_subdivisions"_a = 2000,
           "tail_cutoff"_a = 1e-14)
      .def_readwrite("rel_tol", &QuadratureConfig::rel_tol)
      .def_readwrite("abs_tol", &QuadratureConfig::abs_tol)
      .def_readwrite("max_subdivisions", &QuadratureConfig::max_subdivisions)
      .def_readwrite("tail_cutoff", &QuadratureConfig::tail_cutoff);

  m.def("q_exp", [](Complex z, double q) { return q_exp(z, DeformationParameter(q)); }, "z"_a, "q"_a,
        "Principal-branch q-exponential [1 + (1-q) z]^{1/(1-q)}.");
  m.def("gauss_2f1", [](Complex a, Complex b, Complex c, Complex z) { return gauss_2f1({a, b, c}, z); },
        "a"_a, "b"_a, "c"_a, "z"_a, "Gauss hypergeometric function 2F1(a, b; c; z).");
}

void bind_densities(py::module_& m) {
  m.def("hilhorst_lambda", &hilhorst_lambda, "a"_a, "b"_a, "q"_a);
  m.def("hilhorst_lambda_infimum", &hilhorst_lambda_infimum, "a"_a, "q"_a);
  m.def("solve_b_for_lambda", &solve_b_for_lambda, "a"_a, "lambda_target"_a, "q"_a);

  py::class_<HilhorstFamily>(m, "HilhorstFamily")
      .def(py::init<double, double, double>(), "a"_a, "b"_a, "q"_a)
      .def_property_readonly("a", &HilhorstFamily::a)
      .def_property_readonly("b", &HilhorstFamily::b)
      .def_property_readonly("q", &HilhorstFamily::q)
      .def_property_readonly("lam", &HilhorstFamily::lambda)
      .def_property_readonly("beta", &HilhorstFamily::beta)
      .def("__call__", &HilhorstFamily::operator(), "x"_a)
      .def("__repr__", [](const HilhorstFamily& f) { return DensitySpec(f).describe(); });

  py::class_<QGaussianDensity>(m, "QGaussianDensity")
      .def(py::init<double, double, const QuadratureConfig&>(), "q"_a, "width"_a,
           "cfg"_a = QuadratureConfig{})
      .def_property_readonly("q", &QGaussianDensity::q)
      .def_property_readonly("width", &QGaussianDensity::width)
      .def_property_readonly("normalization", &QGaussianDensity::normalization)
      .def("__call__", &QGaussianDensity::operator(), "x"_a);

  py::class_<TabulatedDensity>(m, "TabulatedDensity")
      .def(py::init<std::vector<double>, std::vector<double>>(), "xs"_a, "fs"_a)
      .def_static("load_csv", &TabulatedDensity::load_csv, "path"_a)
      .def_property_readonly("xs", &TabulatedDensity::xs)
      .def_property_readonly("fs", &TabulatedDensity::fs)
      .def("__call__", &TabulatedDensity::operator(), "x"_a);

  py::class_<DensitySpec>(m, "DensitySpec")
      .def(py::init<HilhorstFamily>())
      .def(py::init<QGaussianDensity>())
      .def(py::init<TabulatedDensity>())
      .def_static("parse", &parse_density_spec, "text"_a, "cfg"_a = QuadratureConfig{},
                  "Parse 'hilhorst:a=..,b=..,q=..', 'qgaussian:q=..,width=..' or 'tabulated:path=..'.")
      .def("__call__", &DensitySpec::operator(), "x"_a)
      .def_property_readonly("support", [](const DensitySpec& d) {
        const Support s = d.support();
        return py::make_tuple(s.lo, s.hi);
      })
      .def_property_readonly("discontinuities", &DensitySpec::discontinuities)
      .def_property_readonly("intrinsic_q", &DensitySpec::intrinsic_q)
      .def("__repr__", &DensitySpec::describe);
  py::implicitly_convertible<HilhorstFamily, DensitySpec>();
  py::implicitly_convertible<QGaussianDensity, DensitySpec>();
  py::implicitly_convertible<TabulatedDensity, DensitySpec>();

  m.def("verify_normalization", &verify_normalization, "d"_a, "cfg"_a = QuadratureConfig{});
}

void bind_transform(py::module_& m) {
  py::class_<TransformSample>(m, "TransformSample")
      .def_readonly("k", &TransformSample::k)
      .def_readonly("value", &TransformSample::value)
      .def_readonly("abs_err_estimate", &TransformSample::abs_err_estimate)
      .def_readonly("converged", &TransformSample::converged)
      .def("__repr__", [](const TransformSample& s) {
        return "TransformSample(k=" + repr_complex(s.k) + ", value=" + repr_complex(s.value) + ")";
      });

  m.def("qft_real", &qft_real, "d"_a, "k"_a, "qp"_a, "cfg"_a = QuadratureConfig{});
  m.def("qft_complex", &qft_complex, "d"_a, "k"_a, "qp"_a, "cfg"_a = QuadratureConfig{});
  m.def("ft_diagonal", &ft_diagonal, "d"_a, "k"_a, "cfg"_a = QuadratureConfig{}, "q"_a = py::none());
  m.def(
      "qft_batch",
      [](const DensitySpec& d, const std::vector<Complex>& ks, double qp, const QuadratureConfig& cfg,
         unsigned workers) {
        py::gil_scoped_release release;
        return qft_batch(d, ks, qp, cfg, workers);
      },
      "d"_a, "ks"_a, "qp"_a, "cfg"_a = QuadratureConfig{}, "workers"_a = 0);
  m.def("linear_grid", &linear_grid, "k_min"_a, "k_max"_a, "n"_a);
  m.def("hilhorst_uts_closed", &hilhorst_uts_closed, "lam"_a, "q"_a, "k"_a);

  py::enum_<RegimeBracket>(m, "RegimeBracket")
      .value("q_prime", RegimeBracket::q_prime)
      .value("mixed_index", RegimeBracket::mixed_index);
  py::enum_<FirstRegimePrefactor>(m, "FirstRegimePrefactor")
      .value("derived", FirstRegimePrefactor::derived)
      .value("full_power_inside", FirstRegimePrefactor::full_power_inside);
  m.def(
      "hilhorst_full_closed",
      [](const HilhorstFamily& fam, Complex k, double qp, RegimeBracket bracket,
         FirstRegimePrefactor prefactor) { return hilhorst_full_closed(fam, k, qp, {bracket, prefactor}); },
      "fam"_a, "k"_a, "qp"_a, "bracket"_a = RegimeBracket::q_prime,
      "prefactor"_a = FirstRegimePrefactor::derived);
}

void bind_inverse(py::module_& m) {
  py::class_<InverseConfig>(m, "InverseConfig")
      .def(py::init([](double epsilon, double k_max, int n_k, std::vector<double> x_points) {
             InverseConfig cfg{epsilon, k_max, n_k, std::move(x_points)};
             cfg.validate();
             return cfg;
           }),
           "epsilon"_a = 1e-6, "k_max"_a = 200.0, "n_k"_a = 8192, "x_points"_a = std::vector<double>{})
      .def_readwrite("epsilon", &InverseConfig::epsilon)
      .def_readwrite("k_max", &InverseConfig::k_max)
      .def_readwrite("n_k", &InverseConfig::n_k)
      .def_readwrite("x_points", &InverseConfig::x_points);

  py::class_<RecoveryPoint>(m, "RecoveryPoint")
      .def_readonly("x", &RecoveryPoint::x)
      .def_readonly("f_true", &RecoveryPoint::f_true)
      .def_readonly("f_recovered", &RecoveryPoint::f_recovered)
      .def_readonly("abs_err", &RecoveryPoint::abs_err)
      .def_readonly("flagged", &RecoveryPoint::flagged)
      .def_readonly("imag_residue", &RecoveryPoint::imag_residue)
      .def_readonly("residue_warning", &RecoveryPoint::residue_warning);

  py::class_<RecoveryReport>(m, "RecoveryReport")
      .def_readonly("points", &RecoveryReport::points)
      .def_readonly("l1_error", &RecoveryReport::l1_error)
      .def_readonly("truncation_warning", &RecoveryReport::truncation_warning)
      .def_readonly("max_transform_err_estimate", &RecoveryReport::max_transform_err_estimate)
      .def_readonly("transform_converged", &RecoveryReport::transform_converged);

  m.def(
      "roundtrip",
      [](const DensitySpec& d, const InverseConfig& cfg, const QuadratureConfig& qcfg, unsigned workers) {
        py::gil_scoped_release release;
        return roundtrip(d, cfg, qcfg, workers);
      },
      "d"_a, "cfg"_a, "qcfg"_a = QuadratureConfig{}, "workers"_a = 0);
}

void bind_equivalence(py::module_& m) {
  py::class_<EquivalenceClassProbe>(m, "EquivalenceClassProbe")
      .def_readonly("q", &EquivalenceClassProbe::q)
      .def_readonly("lam", &EquivalenceClassProbe::lambda)
      .def_readonly("members", &EquivalenceClassProbe::members)
      .def("validate", &EquivalenceClassProbe::validate);

  py::class_<CollapseRow>(m, "CollapseRow")
      .def_readonly("k", &CollapseRow::k)
      .def_readonly("values", &CollapseRow::values)
      .def_readonly("err_estimates", &CollapseRow::err_estimates)
      .def_readonly("closed_form", &CollapseRow::closed_form)
      .def_readonly("max_pairwise_deviation", &CollapseRow::max_pairwise_deviation)
      .def_readonly("pairwise_budget", &CollapseRow::pairwise_budget);

  py::class_<CollapseReport>(m, "CollapseReport")
      .def_readonly("rows", &CollapseReport::rows)
      .def_readonly("max_pairwise_deviation", &CollapseReport::max_pairwise_deviation)
      .def_readonly("max_closed_form_deviation", &CollapseReport::max_closed_form_deviation)
      .def_readonly("quadrature_converged", &CollapseReport::quadrature_converged)
      .def_readonly("collapse_ok", &CollapseReport::collapse_ok);

  py::class_<SeparationReport>(m, "SeparationReport")
      .def_readonly("max_difference", &SeparationReport::max_difference)
      .def_readonly("witness_k", &SeparationReport::witness_k)
      .def_readonly("floor", &SeparationReport::floor)
      .def_readonly("grid_sufficient", &SeparationReport::grid_sufficient)
      .def_readonly("separation_ok", &SeparationReport::separation_ok);

  m.def(
      "build_class",
      [](double q, double lambda, const std::vector<double>& a_values) {
        return build_class(q, lambda, a_values);
      },
      "q"_a, "lam"_a, "a_values"_a);
  m.def(
      "verify_collapse",
      [](const EquivalenceClassProbe& p, const std::vector<double>& k_grid, const QuadratureConfig& qcfg,
         unsigned workers) {
        py::gil_scoped_release release;
        return verify_collapse(p, k_grid, qcfg, workers);
      },
      "probe"_a, "k_grid"_a, "qcfg"_a = QuadratureConfig{}, "workers"_a = 0);
  m.def(
      "verify_separation",
      [](const EquivalenceClassProbe& p1, const EquivalenceClassProbe& p2, const std::vector<double>& k_grid) {
        return verify_separation(p1, p2, k_grid);
      },
      "p1"_a, "p2"_a, "k_grid"_a);
}

void bind_acceptance(py::module_& m) {
  m.def("criterion_names", &acceptance::criterion_names);
  m.def(
      "selftest",
      [](unsigned workers) {
        acceptance::Options opts;
        opts.workers = workers == 0 ? default_worker_count() : workers;
        std::vector<acceptance::CriterionResult> results;
        {
          py::gil_scoped_release release;
          results = acceptance::run_all(opts, nullptr);
        }
        py::list out;
        for (const auto& r : results) {
          out.append(py::dict("id"_a = r.id, "name"_a = r.name, "passed"_a = r.passed,
                              "detail"_a = r.detail, "seconds"_a = r.seconds));
        }
        return out;
      },
      "workers"_a = 0, "Run the eight acceptance checks and return one dict per check.");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "q-Fourier transforms of admissible densities";
  bind_errors(m);
  bind_core(m);
  bind_densities(m);
  bind_transform(m);
  bind_inverse(m);
  bind_equivalence(m);
  bind_acceptance(m);
}
