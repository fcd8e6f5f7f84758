// qfourier command-line front end: transform, class, invert, selftest.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qfourier/acceptance.hpp"
#include "qfourier/densities.hpp"
#include "qfourier/equivalence.hpp"
#include "qfourier/errors.hpp"
#include "qfourier/inverse.hpp"
#include "qfourier/serialize.hpp"
#include "qfourier/transform.hpp"

namespace {

using namespace qfourier;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct GridSpec {
  double k_min = -5.0;
  double k_max = 5.0;
  int n = 21;
  std::string text = "-5:5:21";
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  g.text = text;
  std::stringstream ss(text);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3) throw DomainError("k-grid must be k_min:k_max:n, got '" + text + "'");
  try {
    std::size_t used = 0;
    g.k_min = std::stod(parts[0], &used);
    g.k_max = std::stod(parts[1], &used);
    g.n = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("n");
  } catch (const std::exception&) {
    throw DomainError("k-grid must be k_min:k_max:n, got '" + text + "'");
  }
  linear_grid(g.k_min, g.k_max, g.n);  // validates
  return g;
}

struct QuadFlags {
  QuadratureConfig cfg;

  void attach(CLI::App* app) {
    app->add_option("--rel-tol", cfg.rel_tol, "Quadrature relative tolerance")->capture_default_str();
    app->add_option("--abs-tol", cfg.abs_tol, "Quadrature absolute tolerance")->capture_default_str();
    app->add_option("--max-subdivisions", cfg.max_subdivisions, "Quadrature panel budget")
        ->capture_default_str();
    app->add_option("--tail-cutoff", cfg.tail_cutoff, "Relative tail threshold on infinite rays")
        ->capture_default_str();
  }

  void echo(ConfigEcho& e) const {
    e.emplace_back("rel_tol", format_number(cfg.rel_tol));
    e.emplace_back("abs_tol", format_number(cfg.abs_tol));
    e.emplace_back("max_subdivisions", std::to_string(cfg.max_subdivisions));
    e.emplace_back("tail_cutoff", format_number(cfg.tail_cutoff));
  }
};

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open output file '" + path + "'");
  out << content;
}

std::string join_numbers(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
  return s;
}

unsigned resolve_workers(int flag) { return flag > 0 ? static_cast<unsigned>(flag) : default_worker_count(); }

struct TransformCmd {
  std::string density;
  double qp = 1.5;
  std::string grid = "-5:5:21";
  double k_im = 0.0;
  std::string out = "-";
  std::string format = "csv";
  int workers = 0;
  QuadFlags quad;

  int run() const {
    quad.cfg.validate();
    if (!DeformationParameter::admissible(qp)) {
      std::ostringstream os;
      os << "--qp " << qp << " is outside the admissible range [1,2)";
      throw DomainError(os.str());
    }
    const GridSpec g = parse_grid(grid);
    const DensitySpec d = parse_density_spec(density, quad.cfg);
    std::vector<Complex> ks;
    for (double k : linear_grid(g.k_min, g.k_max, g.n)) ks.emplace_back(k, k_im);
    const std::vector<TransformSample> samples = qft_batch(d, ks, qp, quad.cfg, resolve_workers(workers));
    for (const TransformSample& s : samples) {
      if (!s.converged) {
        std::ostringstream os;
        os << "quadrature did not converge at k=" << s.k;
        throw ConvergenceError(os.str());
      }
    }
    ConfigEcho echo = {{"command", "transform"},
                       {"density", d.describe()},
                       {"qp", format_number(qp)},
                       {"k_grid", g.text},
                       {"k_im", format_number(k_im)},
                       {"format", format}};
    quad.echo(echo);
    std::ostringstream os;
    if (format == "json") {
      write_transform_json(os, samples, echo);
    } else {
      write_transform_csv(os, samples, echo);
    }
    emit(out, os.str());
    return kExitOk;
  }
};

struct ClassCmd {
  double q = 1.5;
  double lambda = 0.0;
  std::vector<double> a_values;
  std::string grid = "-5:5:21";
  std::optional<double> separate_from;
  std::string separation_grid = "0.1:5:50";
  std::string out = "-";
  int workers = 0;
  QuadFlags quad;

  int run() const {
    quad.cfg.validate();
    DeformationParameter{q};
    const GridSpec g = parse_grid(grid);
    const EquivalenceClassProbe probe = build_class(q, lambda, a_values);
    probe.validate();
    const std::vector<double> ks = linear_grid(g.k_min, g.k_max, g.n);
    const CollapseReport collapse = verify_collapse(probe, ks, quad.cfg, resolve_workers(workers));

    std::optional<SeparationReport> separation;
    if (separate_from) {
      const GridSpec sg = parse_grid(separation_grid);
      const EquivalenceClassProbe other{q, *separate_from, {}};
      separation = verify_separation(probe, other, linear_grid(sg.k_min, sg.k_max, sg.n));
      if (!separation->grid_sufficient) {
        std::cerr << "warning: separation grid has no nonzero k; classes cannot be separated\n";
      }
    }

    ConfigEcho echo = {{"command", "class"},
                       {"q", format_number(q)},
                       {"lambda", format_number(lambda)},
                       {"a_values", join_numbers(a_values)},
                       {"k_grid", g.text}};
    if (separate_from) {
      echo.emplace_back("separate_from", format_number(*separate_from));
      echo.emplace_back("separation_grid", separation_grid);
    }
    quad.echo(echo);
    std::ostringstream os;
    write_class_json(os, probe, collapse, separation, echo);
    emit(out, os.str());

    if (!collapse.quadrature_converged) throw ConvergenceError("quadrature did not converge");
    const bool ok = collapse.collapse_ok && (!separation || separation->separation_ok);
    return ok ? kExitOk : kExitCheckFailed;
  }
};

struct InvertCmd {
  std::string density;
  InverseConfig inv;
  std::string out = "-";
  int workers = 0;
  QuadFlags quad;

  int run() {
    quad.cfg.validate();
    inv.validate();
    if (inv.x_points.empty()) throw DomainError("--x needs at least one evaluation point");
    const DensitySpec d = parse_density_spec(density, quad.cfg);
    const RecoveryReport r = roundtrip(d, inv, quad.cfg, resolve_workers(workers));
    if (!r.transform_converged) throw ConvergenceError("transform quadrature did not converge");
    if (r.truncation_warning) {
      std::cerr << "warning: transform has not decayed at k_max=" << inv.k_max
                << "; recovery is truncation dominated\n";
    }
    for (const RecoveryPoint& p : r.points) {
      if (p.residue_warning) {
        std::cerr << "warning: imaginary residue " << p.imag_residue << " at x=" << p.x << '\n';
      }
      if (p.flagged) std::cerr << "note: x=" << p.x << " is jump-adjacent; excluded from L1\n";
    }
    ConfigEcho echo = {{"command", "invert"},
                       {"density", d.describe()},
                       {"epsilon", format_number(inv.epsilon)},
                       {"k_max", format_number(inv.k_max)},
                       {"n_k", std::to_string(inv.n_k)},
                       {"x", join_numbers(inv.x_points)}};
    quad.echo(echo);
    std::ostringstream os;
    write_recovery_csv(os, r, echo);
    emit(out, os.str());
    return kExitOk;
  }
};

struct SelftestCmd {
  bool list = false;
  std::optional<double> quad_tol;
  int workers = 0;
  std::uint64_t seed = acceptance::Options{}.seed;

  int run() const {
    if (list) {
      int i = 0;
      for (const std::string& name : acceptance::criterion_names()) std::cout << ++i << ". " << name << '\n';
      return kExitOk;
    }
    acceptance::Options opts;
    opts.seed = seed;
    opts.workers = resolve_workers(workers);
    if (quad_tol) {
      opts.quad.rel_tol = *quad_tol;
      opts.quad.abs_tol = *quad_tol;
    }
    opts.quad.validate();
    const auto results = acceptance::run_all(opts, &std::cout);
    int passed = 0;
    for (const auto& r : results) passed += r.passed ? 1 : 0;
    std::cout << passed << "/" << results.size() << " checks passed\n";
    return acceptance::all_passed(results) ? kExitOk : kExitCheckFailed;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-Fourier transforms, inversion and equivalence-class checks"};
  app.require_subcommand(1);

  TransformCmd transform;
  auto* t = app.add_subcommand("transform", "Evaluate the q-Fourier transform on a k-grid");
  t->add_option("--density", transform.density, "Density spec, e.g. hilhorst:a=1,b=2,q=1.5")->required();
  t->add_option("--qp", transform.qp, "Transform index q' in [1,2)")->required();
  t->add_option("--k-grid", transform.grid, "k_min:k_max:n")->capture_default_str();
  t->add_option("--k-im", transform.k_im, "Imaginary part added to every grid k")->capture_default_str();
  t->add_option("--out", transform.out, "Output path ('-' for stdout)")->capture_default_str();
  t->add_option("--format", transform.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  t->add_option("--workers", transform.workers, "Worker threads (default $QFOURIER_WORKERS or all cores)");
  transform.quad.attach(t);

  ClassCmd cls;
  auto* c = app.add_subcommand("class", "Build an equivalence class and verify collapse/separation");
  c->add_option("--q", cls.q, "Deformation index of the class")->required();
  c->add_option("--lambda", cls.lambda, "Shared lambda of the class")->required();
  c->add_option("--a-values", cls.a_values, "Left support ends, comma separated")->delimiter(',')->required();
  c->add_option("--k-grid", cls.grid, "Real k-grid for the collapse check")->capture_default_str();
  c->add_option("--separate-from", cls.separate_from, "Second lambda for the separation check");
  c->add_option("--separation-grid", cls.separation_grid)->capture_default_str();
  c->add_option("--out", cls.out)->capture_default_str();
  c->add_option("--workers", cls.workers);
  cls.quad.attach(c);

  InvertCmd invert;
  auto* inv = app.add_subcommand("invert", "Recover a density from its near-classical transform");
  inv->add_option("--density", invert.density)->required();
  inv->add_option("--epsilon", invert.inv.epsilon, "q' = 1 + epsilon")->capture_default_str();
  inv->add_option("--k-max", invert.inv.k_max)->capture_default_str();
  inv->add_option("--n-k", invert.inv.n_k, "Simpson panels on [-k_max, k_max]")->capture_default_str();
  inv->add_option("--x", invert.inv.x_points, "Evaluation points, comma separated")->delimiter(',')->required();
  inv->add_option("--out", invert.out)->capture_default_str();
  inv->add_option("--workers", invert.workers);
  invert.quad.attach(inv);

  SelftestCmd selftest;
  auto* s = app.add_subcommand("selftest", "Run the acceptance checks");
  s->add_flag("--list", selftest.list, "List check names without running them");
  s->add_option("--quad-tol", selftest.quad_tol, "Override quadrature rel/abs tolerance");
  s->add_option("--workers", selftest.workers);
  s->add_option("--seed", selftest.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*t) return transform.run();
    if (*c) return cls.run();
    if (*inv) return invert.run();
    if (*s) return selftest.run();
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitConfig;
}
