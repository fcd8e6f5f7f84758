#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qfourier/densities.hpp"
#include "qfourier/equivalence.hpp"
#include "qfourier/inverse.hpp"
#include "qfourier/transform.hpp"

namespace qfourier {

/// Resolved configuration echoed into every output file, in insertion order.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// Scientific notation with 17 significant digits ("%.16e").
std::string format_number(double v);

/// Parses `hilhorst:a=..,b=..,q=..`, `qgaussian:q=..,width=..` or
/// `tabulated:path=..`. Throws DomainError on malformed or unknown specs.
DensitySpec parse_density_spec(std::string_view text, const QuadratureConfig& cfg = {});

/// CSV columns `k_re,k_im,F_re,F_im,abs_err`, preceded by `# key=value` lines.
void write_transform_csv(std::ostream& os, std::span<const TransformSample> samples,
                         const ConfigEcho& echo);

/// `{"meta": {...}, "records": [{"k_re", "k_im", "F_re", "F_im", "abs_err"}, ...]}`.
void write_transform_json(std::ostream& os, std::span<const TransformSample> samples,
                          const ConfigEcho& echo);

/// CSV columns `x,f_true,f_recovered,abs_err,flagged`.
void write_recovery_csv(std::ostream& os, const RecoveryReport& report, const ConfigEcho& echo);

/// Class descriptor, per-k deviation table and the `collapse_ok` /
/// `separation_ok` verdicts (the latter null when no separation was run).
void write_class_json(std::ostream& os, const EquivalenceClassProbe& probe,
                      const CollapseReport& collapse,
                      const std::optional<SeparationReport>& separation, const ConfigEcho& echo);

}  // namespace qfourier
