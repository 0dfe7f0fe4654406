#pragma once

#include <string>

#include "ocsw/assignment.hpp"
#include "ocsw/core.hpp"
#include "ocsw/demand.hpp"

namespace ocsw {

enum class LpObjective {
  kFeasibility,  // constant objective; pure constraint satisfaction
  kMinMaxLoad,   // auxiliary variable bounding every leaf-plane load
};

/// Emits the topology-design model as solver-neutral LP text: integer
/// variables L_<a>_<b>_<h> and C_<i>_<j>_<h>, demand-completeness equality
/// rows, leaf-load inequality rows, circuit-linking rows and the
/// bidirectionality rows. Row order is lexicographic so exports are
/// byte-stable. Throws std::invalid_argument on invalid inputs.
std::string export_model(const LeafDemandMatrix& demand,
                         const ClusterConfig& cfg, LpObjective objective);

/// Parses an external solver's solution (one `name value` per line, `#` or
/// empty lines skipped) back into an assignment. Values must be integral
/// within 1e-6. Unknown variable names are errors; C values, when present,
/// are cross-checked against the assignment. Throws std::runtime_error on
/// malformed input.
SpineAssignment import_solution(const std::string& text,
                                const ClusterConfig& cfg);

}  // namespace ocsw
