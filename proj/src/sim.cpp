#include "ocsw/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>

#include "ocsw/design.hpp"

namespace ocsw {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTimeEps = 1e-9;
constexpr double kGbitEps = 1e-6;
}  // namespace

const char* designer_name(Designer d) {
  switch (d) {
    case Designer::kLeafCentric: return "leaf-centric";
    case Designer::kPodCentric: return "pod-centric";
    case Designer::kGreedyTau1: return "greedy-tau1";
    case Designer::kBest: return "best";
  }
  return "?";
}

std::optional<Designer> designer_from_name(const std::string& name) {
  if (name == "leaf-centric" || name == "leaf_centric")
    return Designer::kLeafCentric;
  if (name == "pod-centric" || name == "pod_centric")
    return Designer::kPodCentric;
  if (name == "greedy-tau1" || name == "greedy_tau1")
    return Designer::kGreedyTau1;
  if (name == "best") return Designer::kBest;
  return std::nullopt;
}

std::optional<Placement> place_job(int gpu_count,
                                   const std::vector<int>& free_gpus_per_segment,
                                   const ClusterConfig& cfg) {
  const int segments = static_cast<int>(free_gpus_per_segment.size());
  if (segments != cfg.total_leaves())
    throw std::invalid_argument("place_job: segment count mismatch");
  const int per_pod = cfg.leaves_per_pod();

  // Whole job in one segment if any fits.
  for (int s = 0; s < segments; ++s)
    if (free_gpus_per_segment[s] >= gpu_count)
      return Placement{{s, gpu_count}};

  // One pod, segments in index order.
  const int pods = cfg.pods;
  for (int p = 0; p < pods; ++p) {
    long long pod_free = 0;
    for (int s = p * per_pod; s < (p + 1) * per_pod; ++s)
      pod_free += free_gpus_per_segment[s];
    if (pod_free < gpu_count) continue;
    Placement alloc;
    int remaining = gpu_count;
    for (int s = p * per_pod; s < (p + 1) * per_pod && remaining > 0; ++s) {
      const int take = std::min(remaining, free_gpus_per_segment[s]);
      if (take > 0) {
        alloc.push_back({s, take});
        remaining -= take;
      }
    }
    return alloc;
  }

  // Fewest pods: largest free pods first (index breaks ties), then allocate
  // across the chosen pods in index order.
  std::vector<std::pair<long long, int>> by_free;  // (-free, pod)
  long long total_free = 0;
  for (int p = 0; p < pods; ++p) {
    long long pod_free = 0;
    for (int s = p * per_pod; s < (p + 1) * per_pod; ++s)
      pod_free += free_gpus_per_segment[s];
    total_free += pod_free;
    if (pod_free > 0) by_free.push_back({-pod_free, p});
  }
  if (total_free < gpu_count) return std::nullopt;
  std::sort(by_free.begin(), by_free.end());
  std::vector<int> chosen;
  long long covered = 0;
  for (const auto& [neg_free, p] : by_free) {
    chosen.push_back(p);
    covered += -neg_free;
    if (covered >= gpu_count) break;
  }
  std::sort(chosen.begin(), chosen.end());
  Placement alloc;
  int remaining = gpu_count;
  for (int p : chosen) {
    for (int s = p * per_pod; s < (p + 1) * per_pod && remaining > 0; ++s) {
      const int take = std::min(remaining, free_gpus_per_segment[s]);
      if (take > 0) {
        alloc.push_back({s, take});
        remaining -= take;
      }
    }
  }
  return alloc;
}

namespace {

// Ring order over a job's segments; only cross-pod adjacencies carry
// leaf-level requirements.
std::vector<std::pair<int, int>> ring_edges(const Placement& placement) {
  std::vector<int> segs;
  for (const auto& part : placement)
    if (part.gpus > 0) segs.push_back(part.segment);
  std::sort(segs.begin(), segs.end());
  segs.erase(std::unique(segs.begin(), segs.end()), segs.end());

  std::vector<std::pair<int, int>> edges;
  if (segs.size() < 2) return edges;
  for (std::size_t i = 0; i + 1 < segs.size(); ++i)
    edges.push_back({segs[i], segs[i + 1]});
  if (segs.size() > 2) edges.push_back({segs.front(), segs.back()});
  return edges;
}

}  // namespace

RequirementBuild build_leaf_requirement(
    const std::vector<ActivePlacement>& placements, const ClusterConfig& cfg) {
  const int n = cfg.total_leaves();
  std::map<std::pair<int, int>, int> units;  // cross-pod pairs only
  for (const auto& ap : placements) {
    for (auto [a, b] : ring_edges(ap.segments)) {
      if (pod_of_leaf(a, cfg) == pod_of_leaf(b, cfg)) continue;
      units[{a, b}] += 1;
    }
  }

  RequirementBuild out;
  out.demand = LeafDemandMatrix(n);
  std::vector<int> budget(n, cfg.leaf_uplink_ports);

  // Two passes keep every pair routable when rows saturate: first one unit
  // per pair, then the remaining multiplicity, both in lexicographic order.
  for (const auto& [pair, count] : units) {
    (void)count;
    const auto [a, b] = pair;
    if (budget[a] >= 1 && budget[b] >= 1) {
      out.demand.add_unit(a, b);
      --budget[a];
      --budget[b];
    } else {
      ++out.clipped_units;
    }
  }
  for (const auto& [pair, count] : units) {
    const auto [a, b] = pair;
    for (int extra = 1; extra < count; ++extra) {
      if (budget[a] >= 1 && budget[b] >= 1) {
        out.demand.add_unit(a, b);
        --budget[a];
        --budget[b];
      } else {
        ++out.clipped_units;
      }
    }
  }
  return out;
}

std::vector<double> allocate_rates(
    const std::vector<std::vector<int>>& flow_links,
    const std::vector<double>& link_capacity_gbps, double flow_cap_gbps) {
  const std::size_t flows = flow_links.size();
  const std::size_t links = link_capacity_gbps.size();
  std::vector<double> rate(flows, 0.0);
  std::vector<char> frozen(flows, 0);
  std::vector<double> residual = link_capacity_gbps;
  std::vector<int> users(links, 0);

  for (std::size_t f = 0; f < flows; ++f)
    for (int l : flow_links[f]) users[l] += 1;

  std::size_t remaining = flows;
  while (remaining > 0) {
    // Uniform rate raise until a link saturates or the per-flow cap hits.
    double delta = kInf;
    for (std::size_t f = 0; f < flows; ++f)
      if (!frozen[f]) delta = std::min(delta, flow_cap_gbps - rate[f]);
    for (std::size_t l = 0; l < links; ++l)
      if (users[l] > 0) delta = std::min(delta, residual[l] / users[l]);
    delta = std::max(delta, 0.0);

    for (std::size_t f = 0; f < flows; ++f)
      if (!frozen[f]) rate[f] += delta;
    for (std::size_t l = 0; l < links; ++l)
      if (users[l] > 0) residual[l] -= delta * users[l];

    // Freeze capped flows and every flow crossing a saturated link.
    for (std::size_t f = 0; f < flows; ++f) {
      if (frozen[f]) continue;
      bool freeze = rate[f] >= flow_cap_gbps - 1e-12;
      if (!freeze)
        for (int l : flow_links[f])
          if (residual[l] <= 1e-12) {
            freeze = true;
            break;
          }
      if (freeze) {
        frozen[f] = 1;
        --remaining;
        for (int l : flow_links[f]) users[l] -= 1;
      }
    }
  }
  return rate;
}

namespace {

struct FlowRec {
  int src = 0;
  int dst = 0;
  int seq = 0;  // per-job flow index
  bool cross_pod = false;
  std::vector<int> links;
};

struct JobRec {
  JobSpec spec;
  enum { kPending, kQueued, kRunning, kDone, kRejected } state = kPending;
  double start = 0;
  double finish = 0;
  double compute_end = 0;
  double comm_remaining_gbits = 0;
  bool has_cross = false;
  Placement alloc;
  std::vector<FlowRec> flows;
  double min_rate = 0;
};

class Simulation {
 public:
  Simulation(const JobTrace& trace, const ClusterConfig& cfg,
             const SimOptions& opt)
      : cfg_(cfg),
        opt_(opt),
        leaves_(cfg.total_leaves()),
        planes_(cfg.spine_planes()),
        free_(cfg.total_leaves(), cfg.gpus_per_segment()) {
    if (auto r = validate_config(cfg); !r.ok())
      throw std::invalid_argument("invalid config: " + r.to_string());
    jobs_.reserve(trace.jobs.size());
    for (const auto& spec : trace.jobs) {
      JobRec rec;
      rec.spec = spec;
      jobs_.push_back(std::move(rec));
    }
    // Directed links: leaf->spine per plane, spine->leaf per plane, one
    // inter-pod bundle per (pod, pod, plane), plus one zero-capacity slot
    // for flows the topology cannot carry.
    up_base_ = 0;
    down_base_ = leaves_ * planes_;
    bundle_base_ = 2 * leaves_ * planes_;
    dummy_link_ = bundle_base_ + cfg.pods * cfg.pods * planes_;
    link_capacity_.assign(dummy_link_ + 1, 0.0);
    const double up_cap = cfg.tau * cfg.link_bandwidth_gbps;
    for (int i = 0; i < down_base_; ++i) link_capacity_[i] = up_cap;
    for (int i = down_base_; i < bundle_base_; ++i) link_capacity_[i] = up_cap;
  }

  SimReport run() {
    std::size_t next_arrival = 0;
    while (true) {
      double t_next = kInf;
      if (next_arrival < jobs_.size())
        t_next = jobs_[next_arrival].spec.arrival_s;
      for (const auto& job : jobs_) {
        if (job.state != JobRec::kRunning) continue;
        t_next = std::min(t_next, finish_estimate(job));
        // Communication can end before compute; that instant frees link
        // capacity for everyone else, so it must be an event too.
        if (job.comm_remaining_gbits > kGbitEps && job.min_rate > 0) {
          const double begin =
              job.has_cross ? std::max(now_, pause_until_) : now_;
          t_next =
              std::min(t_next, begin + job.comm_remaining_gbits / job.min_rate);
        }
      }

      if (t_next == kInf) {
        for (const auto& job : jobs_)
          if (job.state == JobRec::kRunning || job.state == JobRec::kQueued)
            throw std::runtime_error(
                "simulation stalled at t=" + std::to_string(now_) +
                ": job " + std::to_string(job.spec.id) +
                " cannot progress (zero rate or unsatisfiable size)");
        break;
      }

      advance_comm(t_next);
      now_ = t_next;

      bool topology_dirty = false;
      bool flows_dirty = false;

      // Completions first so freed GPUs are visible to this instant's
      // arrivals and to the queue.
      for (auto& job : jobs_) {
        if (job.state != JobRec::kRunning) continue;
        if (job.compute_end <= now_ + kTimeEps &&
            job.comm_remaining_gbits <= kGbitEps) {
          job.state = JobRec::kDone;
          job.finish = now_;
          for (const auto& part : job.alloc) free_[part.segment] += part.gpus;
          if (job.has_cross) topology_dirty = true;
          flows_dirty = true;
        }
      }

      while (next_arrival < jobs_.size() &&
             jobs_[next_arrival].spec.arrival_s <= now_ + kTimeEps) {
        JobRec& job = jobs_[next_arrival];
        ++next_arrival;
        const long long cluster_capacity =
            static_cast<long long>(leaves_) * cfg_.gpus_per_segment();
        if (job.spec.gpu_count > cfg_.max_gpus() ||
            job.spec.gpu_count > cluster_capacity) {
          job.state = JobRec::kRejected;
          warn("job " + std::to_string(job.spec.id) +
               " rejected: requires " + std::to_string(job.spec.gpu_count) +
               " GPUs");
          continue;
        }
        job.state = JobRec::kQueued;
        queue_.push_back(static_cast<int>(&job - jobs_.data()));
      }

      // Strict FIFO: place from the head only.
      while (!queue_.empty()) {
        JobRec& job = jobs_[queue_.front()];
        auto placement = place_job(job.spec.gpu_count, free_, cfg_);
        if (!placement) break;
        queue_.pop_front();
        start_job(job, *placement);
        if (job.has_cross) topology_dirty = true;
        flows_dirty = true;
      }

      if (topology_dirty && opt_.designer != Designer::kBest) reconfigure();
      if (flows_dirty || topology_dirty) route_flows();
      recompute_rates();
    }
    return make_report();
  }

 private:
  void warn(std::string msg) {
    if (warnings_.size() < 100) warnings_.push_back(std::move(msg));
  }

  void start_job(JobRec& job, const Placement& placement) {
    job.state = JobRec::kRunning;
    job.start = now_;
    job.compute_end = now_ + job.spec.ideal_runtime_s;
    job.alloc = placement;
    for (const auto& part : placement) free_[part.segment] -= part.gpus;

    job.flows.clear();
    int seq = 0;
    for (auto [a, b] : ring_edges(placement)) {
      const bool cross = pod_of_leaf(a, cfg_) != pod_of_leaf(b, cfg_);
      job.has_cross = job.has_cross || cross;
      job.flows.push_back({a, b, seq++, cross, {}});
      job.flows.push_back({b, a, seq++, cross, {}});
    }
    job.comm_remaining_gbits =
        job.flows.empty() ? 0.0 : job.spec.comm_volume_gb * 8.0;
  }

  double finish_estimate(const JobRec& job) const {
    double comm_end = now_;
    if (job.comm_remaining_gbits > kGbitEps) {
      if (job.min_rate <= 0) return kInf;
      const double begin =
          job.has_cross ? std::max(now_, pause_until_) : now_;
      comm_end = begin + job.comm_remaining_gbits / job.min_rate;
    }
    return std::max(job.compute_end, comm_end);
  }

  void advance_comm(double t_next) {
    for (auto& job : jobs_) {
      if (job.state != JobRec::kRunning) continue;
      if (job.comm_remaining_gbits <= kGbitEps || job.min_rate <= 0) continue;
      const double begin =
          job.has_cross ? std::max(now_, pause_until_) : now_;
      const double elapsed = std::max(0.0, t_next - begin);
      job.comm_remaining_gbits =
          std::max(0.0, job.comm_remaining_gbits - elapsed * job.min_rate);
    }
  }

  void reconfigure() {
    std::vector<ActivePlacement> active;
    for (const auto& job : jobs_)
      if (job.state == JobRec::kRunning)
        active.push_back({job.spec.id, job.alloc});

    auto build = build_leaf_requirement(active, cfg_);
    clipped_units_ += build.clipped_units;
    if (build.clipped_units > 0)
      warn("reconfiguration at t=" + std::to_string(now_) + " clipped " +
           std::to_string(build.clipped_units) + " demand units");

    const auto wall_start = std::chrono::steady_clock::now();
    try {
      switch (opt_.designer) {
        case Designer::kLeafCentric: {
          auto result = design_leaf_centric(build.demand, cfg_);
          assignment_ = std::move(result.assignment);
          topology_ = std::move(result.topology);
          break;
        }
        case Designer::kPodCentric: {
          auto result = design_pod_centric(build.demand, cfg_);
          assignment_ = std::move(result.assignment);
          topology_ = std::move(result.topology);
          break;
        }
        case Designer::kGreedyTau1: {
          assignment_ = design_greedy_tau1(build.demand, cfg_);
          topology_ = topology_from_assignment(assignment_, cfg_);
          break;
        }
        case Designer::kBest:
          return;  // no fabric to configure
      }
    } catch (const std::exception& e) {
      throw std::runtime_error(
          "simulation aborted: designer failed at t=" + std::to_string(now_) +
          " epoch " + std::to_string(reconfig_count_ + 1) + ": " + e.what());
    }
    designer_wall_s_ += std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - wall_start)
                            .count();
    ++reconfig_count_;
    pause_until_ = std::max(pause_until_, now_ + opt_.reconfig_delay_s);

    if (opt_.verify_epochs) {
      bool ok = satisfies_demand(assignment_, build.demand) &&
                check_l2_compatibility(assignment_, cfg_);
      if (ok && (opt_.designer == Designer::kGreedyTau1 ||
                 (opt_.designer == Designer::kLeafCentric && cfg_.tau == 2))) {
        ok = analyze_polarization(assignment_, cfg_).contention_free;
      }
      if (!ok) {
        ++epoch_check_failures_;
        warn("epoch " + std::to_string(reconfig_count_) +
             " failed invariant verification");
      }
    }

    have_topology_ = true;
  }

  int up_link(int leaf, int h) const { return up_base_ + leaf * planes_ + h; }
  int down_link(int leaf, int h) const {
    return down_base_ + leaf * planes_ + h;
  }
  int bundle_link(int i, int j, int h) const {
    return bundle_base_ + (i * cfg_.pods + j) * planes_ + h;
  }

  void route_flows() {
    // Inter-pod bundle capacities follow the current circuit counts.
    for (int i = 0; i < cfg_.pods; ++i)
      for (int j = 0; j < cfg_.pods; ++j)
        for (int h = 0; h < planes_; ++h)
          link_capacity_[bundle_link(i, j, h)] =
              (have_topology_ && i != j)
                  ? topology_.circuits(i, j, h) * cfg_.link_bandwidth_gbps
                  : 0.0;

    if (opt_.designer == Designer::kBest) return;  // no paths needed

    std::vector<int> flow_count(link_capacity_.size(), 0);
    auto path_load = [&](const std::vector<int>& links) {
      int total = 0;
      for (int l : links) total += flow_count[l];
      return static_cast<double>(total);
    };

    for (auto& job : jobs_) {
      if (job.state != JobRec::kRunning) continue;
      for (auto& flow : job.flows) {
        flow.links.clear();
        const FiveTuple tuple{
            0x0A000000u + static_cast<std::uint32_t>(flow.src),
            0x0A000000u + static_cast<std::uint32_t>(flow.dst),
            static_cast<std::uint16_t>(10000 + job.spec.id % 50000),
            static_cast<std::uint16_t>(20000 + flow.seq % 40000),
            6};
        if (!flow.cross_pod) {
          // Intra-pod hop: any plane works, hash across all of them.
          const int h = pick_path(tuple, planes_, [&](int idx) {
            return path_load({up_link(flow.src, idx), down_link(flow.dst, idx)});
          });
          flow.links = {up_link(flow.src, h), down_link(flow.dst, h)};
        } else {
          const int i = pod_of_leaf(flow.src, cfg_);
          const int j = pod_of_leaf(flow.dst, cfg_);
          // Candidate paths are the assignment's per-plane units for this
          // leaf pair, one candidate per unit.
          std::vector<int> unit_planes;
          if (have_topology_)
            for (int h = 0; h < planes_; ++h)
              for (int u = 0; u < assignment_.links(flow.src, flow.dst, h); ++u)
                unit_planes.push_back(h);
          if (unit_planes.empty() && have_topology_) {
            // Demand was clipped away; fall back to planes with circuits.
            for (int h = 0; h < planes_; ++h)
              if (topology_.circuits(i, j, h) > 0) unit_planes.push_back(h);
          }
          if (unit_planes.empty()) {
            warn("flow " + std::to_string(flow.src) + "->" +
                 std::to_string(flow.dst) + " has no usable plane");
            flow.links = {dummy_link_};
          } else {
            const int pick = pick_path(
                tuple, static_cast<int>(unit_planes.size()), [&](int idx) {
                  const int h = unit_planes[idx];
                  return path_load({up_link(flow.src, h), bundle_link(i, j, h),
                                    down_link(flow.dst, h)});
                });
            const int h = unit_planes[pick];
            flow.links = {up_link(flow.src, h), bundle_link(i, j, h),
                          down_link(flow.dst, h)};
          }
        }
        for (int l : flow.links) flow_count[l] += 1;
      }
    }
  }

  template <typename LoadFn>
  int pick_path(const FiveTuple& tuple, int count, LoadFn&& load) {
    if (opt_.hashing == HashStrategy::kRehashing)
      return ecmp_select(tuple, count, HashStrategy::kRehashing,
                         std::function<double(int)>(load));
    return ecmp_select(tuple, count, HashStrategy::kEcmp);
  }

  void recompute_rates() {
    const double cap = cfg_.link_bandwidth_gbps;
    if (opt_.designer == Designer::kBest) {
      for (auto& job : jobs_)
        if (job.state == JobRec::kRunning)
          job.min_rate = job.flows.empty() ? 0.0 : cap;
      return;
    }

    std::vector<std::vector<int>> flow_links;
    std::vector<std::pair<int, int>> owner;  // (job index, unused)
    for (std::size_t ji = 0; ji < jobs_.size(); ++ji) {
      JobRec& job = jobs_[ji];
      if (job.state != JobRec::kRunning) continue;
      job.min_rate = kInf;
      if (job.comm_remaining_gbits <= kGbitEps) continue;
      for (const auto& flow : job.flows) {
        flow_links.push_back(flow.links);
        owner.push_back({static_cast<int>(ji), 0});
      }
    }
    const auto rates = allocate_rates(flow_links, link_capacity_, cap);
    for (std::size_t f = 0; f < rates.size(); ++f) {
      JobRec& job = jobs_[owner[f].first];
      job.min_rate = std::min(job.min_rate, rates[f]);
    }
    for (auto& job : jobs_)
      if (job.state == JobRec::kRunning && job.min_rate == kInf)
        job.min_rate = 0.0;
  }

  SimReport make_report() const {
    SimReport report;
    report.designer = opt_.designer;
    report.seed = opt_.seed;
    report.hashing = opt_.hashing;
    report.reconfig_count = reconfig_count_;
    report.epoch_check_failures = epoch_check_failures_;
    report.clipped_units = clipped_units_;
    report.warnings = warnings_;
    report.designer_wall_total_s = designer_wall_s_;

    double jrt_sum = 0, jct_sum = 0;
    int completed = 0;
    for (const auto& job : jobs_) {
      JobStats stats;
      stats.id = job.spec.id;
      stats.arrival_s = job.spec.arrival_s;
      stats.rejected = job.state == JobRec::kRejected;
      if (job.state == JobRec::kDone) {
        stats.start_s = job.start;
        stats.finish_s = job.finish;
        stats.jrt = job.finish - job.start;
        stats.jct = job.finish - job.spec.arrival_s;
        jrt_sum += stats.jrt;
        jct_sum += stats.jct;
        ++completed;
      }
      report.jobs.push_back(stats);
    }
    if (completed > 0) {
      report.avg_jrt = jrt_sum / completed;
      report.avg_jct = jct_sum / completed;
    }
    return report;
  }

  const ClusterConfig cfg_;
  const SimOptions opt_;
  const int leaves_;
  const int planes_;

  double now_ = 0;
  double pause_until_ = -kInf;
  std::vector<int> free_;
  std::vector<JobRec> jobs_;
  std::deque<int> queue_;

  SpineAssignment assignment_;
  LogicalTopology topology_;
  bool have_topology_ = false;

  int up_base_ = 0;
  int down_base_ = 0;
  int bundle_base_ = 0;
  int dummy_link_ = 0;
  std::vector<double> link_capacity_;

  int reconfig_count_ = 0;
  int epoch_check_failures_ = 0;
  int clipped_units_ = 0;
  double designer_wall_s_ = 0;
  std::vector<std::string> warnings_;
};

}  // namespace

SimReport run_simulation(const JobTrace& trace, const ClusterConfig& cfg,
                         const SimOptions& options) {
  JobTrace sorted = trace;
  std::stable_sort(sorted.jobs.begin(), sorted.jobs.end(),
                   [](const JobSpec& x, const JobSpec& y) {
                     return x.arrival_s < y.arrival_s;
                   });
  Simulation sim(sorted, cfg, options);
  return sim.run();
}

void attach_baseline(SimReport& report, const SimReport& best) {
  std::map<int, double> best_jrt;
  for (const auto& job : best.jobs)
    if (!job.rejected) best_jrt[job.id] = job.jrt;

  std::vector<double> slowdowns;
  for (auto& job : report.jobs) {
    if (job.rejected) continue;
    auto it = best_jrt.find(job.id);
    if (it == best_jrt.end() || it->second <= 0) continue;
    job.slowdown = (job.jrt - it->second) / it->second;
    slowdowns.push_back(job.slowdown);
  }
  std::sort(slowdowns.begin(), slowdowns.end());
  report.slowdown_cdf.clear();
  double sum = 0;
  for (std::size_t i = 0; i < slowdowns.size(); ++i) {
    sum += slowdowns[i];
    report.slowdown_cdf.push_back(
        {slowdowns[i],
         static_cast<double>(i + 1) / static_cast<double>(slowdowns.size())});
  }
  report.avg_slowdown = slowdowns.empty() ? 0.0 : sum / slowdowns.size();
  report.has_baseline = true;
}

}  // namespace ocsw
