#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ocsw/assignment.hpp"
#include "ocsw/core.hpp"
#include "ocsw/demand.hpp"
#include "ocsw/hash.hpp"
#include "ocsw/trace.hpp"

namespace ocsw {

enum class Designer { kLeafCentric, kPodCentric, kGreedyTau1, kBest };

const char* designer_name(Designer d);
std::optional<Designer> designer_from_name(const std::string& name);

struct SegmentAlloc {
  int segment = 0;
  int gpus = 0;
};
using Placement = std::vector<SegmentAlloc>;

/// First-fit GPU placement: whole job in one segment if possible, else one
/// pod, else the fewest pods (largest free pods first). Returns nullopt
/// when the job does not fit and must queue.
std::optional<Placement> place_job(int gpu_count,
                                   const std::vector<int>& free_gpus_per_segment,
                                   const ClusterConfig& cfg);

struct ActivePlacement {
  int job_id = 0;
  Placement segments;
};

struct RequirementBuild {
  LeafDemandMatrix demand;
  int clipped_units = 0;  // units dropped to respect the row-sum cap
};

/// Leaf-level requirement implied by the active placements: each job's
/// segments form a ring in sorted order and every cross-pod adjacent pair
/// contributes one link. Rows are clipped to K_leaf if oversubscribed
/// (extra units dropped multiplicity-first, lexicographically).
RequirementBuild build_leaf_requirement(
    const std::vector<ActivePlacement>& placements, const ClusterConfig& cfg);

/// Progressive-filling max-min fair rates. flow_links[f] lists the directed
/// link ids the flow traverses; every flow is additionally capped at
/// flow_cap_gbps (a single path cannot exceed one physical link).
std::vector<double> allocate_rates(
    const std::vector<std::vector<int>>& flow_links,
    const std::vector<double>& link_capacity_gbps, double flow_cap_gbps);

struct SimOptions {
  Designer designer = Designer::kLeafCentric;
  HashStrategy hashing = HashStrategy::kEcmp;
  std::uint64_t seed = 0;
  double reconfig_delay_s = 0.010;  // OCS settle time, pauses affected flows
  bool verify_epochs = true;        // re-check Eqs after every reconfiguration
  double max_sim_time_s = 0.0;      // 0 = automatic stall guard
};

struct JobStats {
  int id = 0;
  double arrival_s = 0.0;
  double start_s = 0.0;
  double finish_s = 0.0;
  double jrt = 0.0;       // finish - start
  double jct = 0.0;       // finish - arrival
  double slowdown = -1.0; // (jrt - jrt_best)/jrt_best; < 0 until baseline set
  bool rejected = false;
};

struct SimReport {
  Designer designer = Designer::kLeafCentric;
  std::uint64_t seed = 0;
  HashStrategy hashing = HashStrategy::kEcmp;
  std::vector<JobStats> jobs;
  double avg_jrt = 0.0;
  double avg_jct = 0.0;
  int reconfig_count = 0;
  int epoch_check_failures = 0;
  int clipped_units = 0;
  bool has_baseline = false;
  double avg_slowdown = 0.0;
  std::vector<std::pair<double, double>> slowdown_cdf;  // (slowdown, fraction)
  std::vector<std::string> warnings;
  // Wall-clock designer overhead; excluded from the canonical JSON so that
  // seeded runs serialize bit-identically.
  double designer_wall_total_s = 0.0;
};

/// Event-driven flow-level simulation of one trace on one cluster.
/// Deterministic for identical (trace, config, options).
SimReport run_simulation(const JobTrace& trace, const ClusterConfig& cfg,
                         const SimOptions& options);

/// Fills per-job slowdowns and the slowdown CDF from a Best-fabric run of
/// the same trace.
void attach_baseline(SimReport& report, const SimReport& best);

}  // namespace ocsw
