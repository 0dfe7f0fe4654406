#include "ocsw/core.hpp"

#include <sstream>
#include <stdexcept>

namespace ocsw {

std::string ValidationResult::to_string() const {
  if (ok()) return "ok";
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) out << "; ";
    out << violations[i].field << ": " << violations[i].message;
  }
  return out.str();
}

ValidationResult validate_config(const ClusterConfig& cfg) {
  ValidationResult r;
  auto fail = [&r](const char* field, std::string msg) {
    r.violations.push_back({field, std::move(msg)});
  };

  if (cfg.pods < 1) fail("pods", "must be >= 1");
  if (cfg.leaf_uplink_ports < 1) fail("leaf_uplink_ports", "must be >= 1");
  if (cfg.spine_ocs_ports < 1) fail("spine_ocs_ports", "must be >= 1");
  if (cfg.ocs_ports < 1) fail("ocs_ports", "must be >= 1");
  if (cfg.tau < 1) fail("tau", "must be >= 1");
  if (cfg.gpus_per_server < 1) fail("gpus_per_server", "must be >= 1");
  if (cfg.link_bandwidth_gbps <= 0)
    fail("link_bandwidth_gbps", "must be positive");
  if (cfg.intra_server_bandwidth_gbps <= 0)
    fail("intra_server_bandwidth_gbps", "must be positive");
  if (!r.ok()) return r;

  if (cfg.leaf_uplink_ports % cfg.tau != 0)
    fail("leaf_uplink_ports", "K_leaf not divisible by tau");
  if (cfg.spine_ocs_ports % cfg.tau != 0)
    fail("spine_ocs_ports", "K_spine not divisible by tau");
  if (cfg.pods > cfg.ocs_ports)
    fail("pods", "P exceeds K_ocs (an OCS group interconnects at most K_ocs pods)");
  return r;
}

int pod_of_leaf(int leaf, const ClusterConfig& cfg) {
  if (leaf < 0 || leaf >= cfg.total_leaves())
    throw std::out_of_range("leaf index " + std::to_string(leaf) +
                            " out of range [0, " +
                            std::to_string(cfg.total_leaves()) + ")");
  return leaf / cfg.leaves_per_pod();
}

}  // namespace ocsw
