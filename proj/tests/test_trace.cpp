#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ocsw/io.hpp"
#include "ocsw/trace.hpp"

using namespace ocsw;

TEST_CASE("workload level evaluates the class-rate formula exactly") {
  JobClass c;
  c.gpu_count = 8;
  c.arrival_rate_per_s = 0.1;
  c.mean_runtime_s = 100.0;
  CHECK(workload_level({c}, 1000.0) == 0.08);
  CHECK(workload_level(std::vector<JobClass>{}, 1000.0) == 0.0);
}

TEST_CASE("workload level scales linearly in each arrival rate") {
  auto mix = default_job_mix();
  const double base = workload_level(mix, 4096.0);
  mix[2].arrival_rate_per_s *= 3.0;
  const double grown = workload_level(mix, 4096.0);
  const double contribution = mix[2].gpu_count *
                              (mix[2].arrival_rate_per_s / 3.0) *
                              mix[2].mean_runtime_s / 4096.0;
  CHECK(grown == doctest::Approx(base + 2.0 * contribution).epsilon(1e-12));
}

TEST_CASE("calibrate rescales rates to the target level") {
  auto mix = default_job_mix();
  const auto doubled = calibrate(mix, 1024.0, 2.0 * workload_level(mix, 1024.0));
  for (std::size_t i = 0; i < mix.size(); ++i)
    CHECK(doubled[i].arrival_rate_per_s ==
          doctest::Approx(2.0 * mix[i].arrival_rate_per_s).epsilon(1e-12));

  const auto same = calibrate(mix, 1024.0, workload_level(mix, 1024.0));
  for (std::size_t i = 0; i < mix.size(); ++i)
    CHECK(same[i].arrival_rate_per_s ==
          doctest::Approx(mix[i].arrival_rate_per_s).epsilon(1e-12));

  const auto paper_level = calibrate(mix, 8192.0, 0.767);
  CHECK(std::fabs(workload_level(paper_level, 8192.0) - 0.767) <= 1e-9);
}

TEST_CASE("zero rates generate an empty trace") {
  JobClass idle;
  idle.gpu_count = 8;
  idle.arrival_rate_per_s = 0.0;
  idle.mean_runtime_s = 100.0;
  const JobTrace trace = gen_trace({idle}, 1000.0, 1);
  CHECK(trace.jobs.empty());
}

TEST_CASE("gen_trace rejects bad inputs") {
  CHECK_THROWS_AS(gen_trace({}, 100.0, 1), std::invalid_argument);
  JobClass c;
  c.arrival_rate_per_s = -1.0;
  CHECK_THROWS_AS(gen_trace({c}, 100.0, 1), std::invalid_argument);
  c.arrival_rate_per_s = 0.1;
  c.mean_runtime_s = 10.0;
  CHECK_THROWS_AS(gen_trace({c}, 0.0, 1), std::invalid_argument);
}

TEST_CASE("seeded generation: golden job count near the Poisson mean") {
  JobClass c;
  c.gpu_count = 16;
  c.arrival_rate_per_s = 0.1;
  c.mean_runtime_s = 100.0;
  c.runtime_sigma = 0.5;
  const JobTrace trace = gen_trace({c}, 100.0, 42);
  CHECK(trace.jobs.size() == 10);  // golden under seed 42; E[count] = 10
  for (std::size_t i = 0; i < trace.jobs.size(); ++i) {
    CHECK(trace.jobs[i].arrival_s < 100.0);
    CHECK(trace.jobs[i].ideal_runtime_s > 0);
    if (i) CHECK(trace.jobs[i].arrival_s >= trace.jobs[i - 1].arrival_s);
    CHECK(trace.jobs[i].id == static_cast<int>(i));
  }
}

TEST_CASE("two classes merge into one sorted trace") {
  JobClass small;
  small.gpu_count = 8;
  small.arrival_rate_per_s = 0.05;
  small.mean_runtime_s = 50.0;
  JobClass big;
  big.gpu_count = 64;
  big.arrival_rate_per_s = 0.02;
  big.mean_runtime_s = 200.0;
  const JobTrace trace = gen_trace({small, big}, 500.0, 7);
  REQUIRE(!trace.jobs.empty());
  bool saw_small = false, saw_big = false;
  for (std::size_t i = 0; i < trace.jobs.size(); ++i) {
    if (i) CHECK(trace.jobs[i].arrival_s >= trace.jobs[i - 1].arrival_s);
    saw_small |= trace.jobs[i].gpu_count == 8;
    saw_big |= trace.jobs[i].gpu_count == 64;
  }
  CHECK(saw_small);
  CHECK(saw_big);
}

TEST_CASE("identical seeds reproduce identical traces byte for byte") {
  const auto mix = default_job_mix();
  const JobTrace a = gen_trace(mix, 2000.0, 99);
  const JobTrace b = gen_trace(mix, 2000.0, 99);
  REQUIRE(a.jobs.size() == b.jobs.size());
  for (std::size_t i = 0; i < a.jobs.size(); ++i) {
    CHECK(a.jobs[i].arrival_s == b.jobs[i].arrival_s);
    CHECK(a.jobs[i].ideal_runtime_s == b.jobs[i].ideal_runtime_s);
    CHECK(a.jobs[i].gpu_count == b.jobs[i].gpu_count);
  }

  const std::string path_a = "trace_seed_a.csv";
  const std::string path_b = "trace_seed_b.csv";
  save_trace_csv(a, path_a);
  save_trace_csv(b, path_b);
  CHECK(read_file(path_a) == read_file(path_b));
  std::remove(path_a.c_str());
  std::remove(path_b.c_str());
}

TEST_CASE("trace CSV round-trips exactly") {
  const auto mix = default_job_mix();
  const JobTrace original = gen_trace(mix, 1500.0, 5);
  const std::string path = "trace_roundtrip.csv";
  save_trace_csv(original, path);
  const JobTrace loaded = load_trace_csv(path);
  std::remove(path.c_str());
  REQUIRE(loaded.jobs.size() == original.jobs.size());
  for (std::size_t i = 0; i < loaded.jobs.size(); ++i) {
    CHECK(loaded.jobs[i].id == original.jobs[i].id);
    CHECK(loaded.jobs[i].arrival_s == original.jobs[i].arrival_s);
    CHECK(loaded.jobs[i].gpu_count == original.jobs[i].gpu_count);
    CHECK(loaded.jobs[i].ideal_runtime_s == original.jobs[i].ideal_runtime_s);
    CHECK(loaded.jobs[i].comm_volume_gb == original.jobs[i].comm_volume_gb);
  }
}

TEST_CASE("malformed trace rows are reported with their line") {
  const std::string path = "trace_bad.csv";
  write_file(path, "job_id,arrival_s,gpu_count,ideal_runtime_s,comm_volume_gb\n"
                   "0,1.5,8,oops,0\n");
  CHECK_THROWS_WITH_AS(load_trace_csv(path), doctest::Contains(":2"),
                       std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("empirical workload level approaches the analytic target") {
  auto mix = calibrate(default_job_mix(), 4096.0, 0.767);
  const JobTrace trace = gen_trace(mix, 100000.0, 2024);
  const double level = workload_level(trace, 4096.0);
  CHECK(std::fabs(level - 0.767) <= 0.01);  // seeded, fixed outcome
}
