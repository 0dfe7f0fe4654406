#pragma once

#include <string>
#include <vector>

namespace ocsw {

struct Violation {
  std::string field;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// Architecture parameters of a three-tier leaf-spine-OCS cluster.
///
/// A pod is a leaf-spine sub-fabric; pods interconnect through groups of
/// optical circuit switches, one group per spine plane. `tau` is the number
/// of parallel links between each leaf and each spine inside a pod.
/// Instances are immutable after validation; all derived counts are pure
/// functions of the fields.
struct ClusterConfig {
  int pods = 0;                // P
  int leaf_uplink_ports = 0;   // K_leaf; GPU-facing port count is the same
  int spine_ocs_ports = 0;     // K_spine
  int ocs_ports = 0;           // K_ocs, egress/ingress port pairs per OCS
  int tau = 1;                 // links per leaf-spine pair
  int gpus_per_server = 8;
  double link_bandwidth_gbps = 200.0;
  double intra_server_bandwidth_gbps = 400.0;

  int leaves_per_pod() const { return spine_ocs_ports / tau; }
  int spine_planes() const { return leaf_uplink_ports / tau; }  // H
  int total_leaves() const { return leaves_per_pod() * pods; }  // eta
  int gpus_per_segment() const { return leaf_uplink_ports; }
  long long max_gpus() const {
    return static_cast<long long>(leaf_uplink_ports) * spine_ocs_ports *
           ocs_ports / tau;
  }
};

/// Checks every config invariant; returns the violated ones with the
/// offending field and bound.
ValidationResult validate_config(const ClusterConfig& cfg);

/// Pod owning a leaf. Leaves are numbered contiguously per pod, so this is
/// plain integer division. Throws std::out_of_range for a bad index.
int pod_of_leaf(int leaf, const ClusterConfig& cfg);

}  // namespace ocsw
