#pragma once

#include <string>

#include "ocsw/assignment.hpp"
#include "ocsw/core.hpp"
#include "ocsw/demand.hpp"
#include "ocsw/sim.hpp"

namespace ocsw {

// JSON/CSV serialization of the domain types. All writers emit stable key
// order and end with a newline; loaders throw std::runtime_error with the
// offending path/field on malformed input.

ClusterConfig load_config_json(const std::string& path);
std::string config_to_json(const ClusterConfig& cfg);

// Demand: JSON {"size": n, "entries": [[...]]} or headerless CSV (n rows of
// n integers). Dispatches on file extension (.json vs anything else).
LeafDemandMatrix load_demand(const std::string& path);
std::string demand_to_json(const LeafDemandMatrix& demand);
std::string demand_to_csv(const LeafDemandMatrix& demand);

std::string assignment_to_json(const SpineAssignment& asg);
SpineAssignment load_assignment_json(const std::string& path);

std::string topology_to_json(const LogicalTopology& topo);
LogicalTopology load_topology_json(const std::string& path);

std::string polarization_to_json(const PolarizationReport& report, int tau);

std::string sim_report_to_json(const SimReport& report);
std::string sim_report_jobs_csv(const SimReport& report);
std::string sim_report_cdf_csv(const SimReport& report);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace ocsw
