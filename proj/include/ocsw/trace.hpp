#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ocsw {

/// One synthetic workload class: Poisson arrivals of k-GPU jobs with
/// lognormal runtimes around the class mean.
struct JobClass {
  int gpu_count = 8;
  double arrival_rate_per_s = 0.0;  // lambda_k
  double mean_runtime_s = 0.0;      // T_k
  double runtime_sigma = 0.5;       // lognormal shape; 0 = constant runtime
  double comm_volume_gb = 0.0;      // per cross-pod leaf pair
};

struct JobSpec {
  int id = 0;
  double arrival_s = 0.0;
  int gpu_count = 0;
  double ideal_runtime_s = 0.0;
  double comm_volume_gb = 0.0;
};

struct JobTrace {
  std::vector<JobSpec> jobs;  // sorted by arrival, ids in arrival order
  double horizon_s = 0.0;
};

/// Per-class Poisson arrival generation over [0, horizon). Deterministic
/// for a given seed, independent of platform (the RNG and all variate
/// transforms are fixed rather than delegated to std:: distributions).
JobTrace gen_trace(const std::vector<JobClass>& classes, double horizon_s,
                   std::uint64_t seed);

/// Expected fraction of GPU time occupied: sum_k k*lambda_k*T_k / gpu_num.
double workload_level(const std::vector<JobClass>& classes, double gpu_num);

/// Empirical estimate of the same ratio from a realized trace.
double workload_level(const JobTrace& trace, double gpu_num);

/// Scales every arrival rate so the analytic workload level hits `target`.
std::vector<JobClass> calibrate(const std::vector<JobClass>& classes,
                                double gpu_num, double target);

/// Truncated heavy tail over k in {8, 16, ..., 4096}: most jobs are small.
std::vector<JobClass> default_job_mix();

// Trace CSV: header then one `job_id,arrival_s,gpu_count,ideal_runtime_s,
// comm_volume_gb` row per job. Class-mix config is a JSON array.
JobTrace load_trace_csv(const std::string& path);
void save_trace_csv(const JobTrace& trace, const std::string& path);
std::vector<JobClass> load_job_classes_json(const std::string& path);

}  // namespace ocsw
