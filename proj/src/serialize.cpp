#include "qfourier/serialize.hpp"

#include <cstdio>
#include <map>

#include "json.hpp"
#include "qfourier/errors.hpp"

namespace qfourier {

namespace {

using nlohmann::ordered_json;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

std::map<std::string, std::string> parse_fields(std::string_view body, std::string_view spec) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const auto comma = body.find(',', pos);
    const std::string_view item =
        body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw DomainError("density spec '" + std::string(spec) + "': expected key=value, got '" +
                        std::string(item) + "'");
    }
    const std::string key = trim(item.substr(0, eq));
    if (!out.emplace(key, trim(item.substr(eq + 1))).second) {
      throw DomainError("density spec '" + std::string(spec) + "': duplicate key '" + key + "'");
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double take_number(std::map<std::string, std::string>& fields, const std::string& key,
                   std::string_view spec) {
  const auto it = fields.find(key);
  if (it == fields.end()) {
    throw DomainError("density spec '" + std::string(spec) + "': missing '" + key + "'");
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    fields.erase(it);
    return v;
  } catch (const std::exception&) {
    throw DomainError("density spec '" + std::string(spec) + "': '" + key +
                      "' is not a number: '" + it->second + "'");
  }
}

void reject_leftovers(const std::map<std::string, std::string>& fields, std::string_view spec) {
  if (!fields.empty()) {
    throw DomainError("density spec '" + std::string(spec) + "': unknown key '" +
                      fields.begin()->first + "'");
  }
}

ordered_json meta_object(const ConfigEcho& echo) {
  ordered_json meta = ordered_json::object();
  for (const auto& [key, value] : echo) meta[key] = value;
  return meta;
}

void write_echo(std::ostream& os, const ConfigEcho& echo) {
  for (const auto& [key, value] : echo) os << "# " << key << '=' << value << '\n';
}

ordered_json complex_pair(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

DensitySpec parse_density_spec(std::string_view text, const QuadratureConfig& cfg) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError("density spec '" + std::string(text) + "': expected name:key=value,...");
  }
  const std::string name = trim(text.substr(0, colon));
  auto fields = parse_fields(text.substr(colon + 1), text);
  if (name == "hilhorst") {
    const double a = take_number(fields, "a", text);
    const double b = take_number(fields, "b", text);
    const double q = take_number(fields, "q", text);
    reject_leftovers(fields, text);
    return HilhorstFamily(a, b, q);
  }
  if (name == "qgaussian") {
    const double q = take_number(fields, "q", text);
    const double width = take_number(fields, "width", text);
    reject_leftovers(fields, text);
    return QGaussianDensity(q, width, cfg);
  }
  if (name == "tabulated") {
    const auto it = fields.find("path");
    if (it == fields.end()) throw DomainError("tabulated density spec needs path=...");
    const std::string path = it->second;
    fields.erase(it);
    reject_leftovers(fields, text);
    return TabulatedDensity::load_csv(path);
  }
  throw DomainError("unknown density '" + name + "' (expected hilhorst, qgaussian, tabulated)");
}

void write_transform_csv(std::ostream& os, std::span<const TransformSample> samples,
                         const ConfigEcho& echo) {
  write_echo(os, echo);
  os << "k_re,k_im,F_re,F_im,abs_err\n";
  for (const TransformSample& s : samples) {
    os << format_number(s.k.real()) << ',' << format_number(s.k.imag()) << ','
       << format_number(s.value.real()) << ',' << format_number(s.value.imag()) << ','
       << format_number(s.abs_err_estimate) << '\n';
  }
}

void write_transform_json(std::ostream& os, std::span<const TransformSample> samples,
                          const ConfigEcho& echo) {
  ordered_json records = ordered_json::array();
  for (const TransformSample& s : samples) {
    records.push_back({{"k_re", s.k.real()},
                       {"k_im", s.k.imag()},
                       {"F_re", s.value.real()},
                       {"F_im", s.value.imag()},
                       {"abs_err", s.abs_err_estimate}});
  }
  ordered_json doc;
  doc["meta"] = meta_object(echo);
  doc["records"] = std::move(records);
  os << doc.dump(2) << '\n';
}

void write_recovery_csv(std::ostream& os, const RecoveryReport& report, const ConfigEcho& echo) {
  write_echo(os, echo);
  os << "# l1_error=" << format_number(report.l1_error) << '\n';
  os << "x,f_true,f_recovered,abs_err,flagged\n";
  for (const RecoveryPoint& p : report.points) {
    os << format_number(p.x) << ',' << format_number(p.f_true) << ','
       << format_number(p.f_recovered) << ',' << format_number(p.abs_err) << ','
       << (p.flagged ? "true" : "false") << '\n';
  }
}

void write_class_json(std::ostream& os, const EquivalenceClassProbe& probe,
                      const CollapseReport& collapse,
                      const std::optional<SeparationReport>& separation, const ConfigEcho& echo) {
  ordered_json members = ordered_json::array();
  for (const HilhorstFamily& m : probe.members) {
    members.push_back({{"a", m.a()}, {"b", m.b()}, {"lambda", m.lambda()}});
  }
  ordered_json table = ordered_json::array();
  for (const CollapseRow& row : collapse.rows) {
    ordered_json values = ordered_json::array();
    for (const Complex& v : row.values) values.push_back(complex_pair(v));
    table.push_back({{"k", row.k},
                     {"member_values", std::move(values)},
                     {"member_abs_err", row.err_estimates},
                     {"closed_form", complex_pair(row.closed_form)},
                     {"max_pairwise_deviation", row.max_pairwise_deviation},
                     {"pairwise_budget", row.pairwise_budget},
                     {"max_closed_form_deviation", row.max_closed_form_deviation},
                     {"closed_form_budget", row.closed_form_budget}});
  }

  ordered_json doc;
  doc["meta"] = meta_object(echo);
  doc["class"] = {{"q", probe.q}, {"lambda", probe.lambda}, {"members", std::move(members)}};
  doc["collapse"] = {{"max_pairwise_deviation", collapse.max_pairwise_deviation},
                     {"max_closed_form_deviation", collapse.max_closed_form_deviation},
                     {"quadrature_converged", collapse.quadrature_converged},
                     {"table", std::move(table)}};
  if (separation) {
    ordered_json rows = ordered_json::array();
    for (const SeparationRow& r : separation->rows) {
      rows.push_back({{"k", r.k},
                      {"first", complex_pair(r.first)},
                      {"second", complex_pair(r.second)},
                      {"difference", r.difference}});
    }
    doc["separation"] = {{"max_difference", separation->max_difference},
                         {"witness_k", separation->witness_k},
                         {"floor", separation->floor},
                         {"grid_sufficient", separation->grid_sufficient},
                         {"table", std::move(rows)}};
  }
  doc["collapse_ok"] = collapse.collapse_ok;
  doc["separation_ok"] = separation ? ordered_json(separation->separation_ok) : ordered_json(nullptr);
  os << doc.dump(2) << '\n';
}

}  // namespace qfourier
