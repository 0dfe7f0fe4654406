#pragma once

#include <optional>

#include "ocsw/assignment.hpp"
#include "ocsw/core.hpp"
#include "ocsw/demand.hpp"

namespace ocsw {

struct DesignResult {
  SpineAssignment assignment;
  LogicalTopology topology;
};

/// Leaf-centric logical topology design. Orients the demand, splits the
/// orientation fairly across the H spine planes, and folds the result into
/// per-plane circuits. The output always satisfies demand completeness and
/// L2 compatibility; with tau = 2 it is contention-free for any valid
/// demand, and with tau = 1 per-plane leaf loads never exceed 2.
/// Throws std::invalid_argument when the demand fails validation.
DesignResult design_leaf_centric(const LeafDemandMatrix& demand,
                                 const ClusterConfig& cfg);

/// Greedy contention-free design for tau = 1, valid whenever every demand
/// row sum is at most half of the plane count H. Each link requirement is
/// placed on the lowest-index plane still unused by both endpoint leaves.
/// Throws std::invalid_argument when the precondition fails.
SpineAssignment design_greedy_tau1(const LeafDemandMatrix& demand,
                                   const ClusterConfig& cfg);

/// Pod-centric baseline: aggregates demand to pod level, splits the pod
/// matrix fairly across planes, then assigns leaf pairs first-fit against
/// remaining plane capacity. Leaf loads are ignored on purpose; this is the
/// paradigm whose routing polarization the leaf-centric design removes.
DesignResult design_pod_centric(const LeafDemandMatrix& demand,
                                const ClusterConfig& cfg);

/// Exact per-(leaf, plane) load analysis of an assignment.
PolarizationReport analyze_polarization(const SpineAssignment& asg,
                                        const ClusterConfig& cfg);

struct BruteForceLimits {
  int max_leaves = 8;
  int max_units = 12;
};

/// Exhaustive oracle for tiny instances: searches every per-unit plane
/// assignment for one that is contention-free (loads <= tau). Returns
/// nullopt when none exists. Refuses instances beyond the limits.
std::optional<SpineAssignment> brute_force_design(
    const LeafDemandMatrix& demand, const ClusterConfig& cfg,
    const BruteForceLimits& limits = {});

}  // namespace ocsw
