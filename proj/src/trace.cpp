#include "ocsw/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ocsw {

namespace {

// Variate transforms are written out instead of using std:: distributions:
// the standard leaves their algorithms implementation-defined, and traces
// must be byte-reproducible from a seed.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

double exponential(std::mt19937_64& rng, double rate) {
  return -std::log1p(-uniform01(rng)) / rate;
}

double standard_normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc())
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

}  // namespace

JobTrace gen_trace(const std::vector<JobClass>& classes, double horizon_s,
                   std::uint64_t seed) {
  if (classes.empty()) throw std::invalid_argument("gen_trace: no job classes");
  if (horizon_s <= 0)
    throw std::invalid_argument("gen_trace: horizon must be positive");
  for (const auto& c : classes) {
    if (c.arrival_rate_per_s < 0)
      throw std::invalid_argument("gen_trace: negative arrival rate");
    if (c.gpu_count < 1)
      throw std::invalid_argument("gen_trace: gpu_count must be >= 1");
    if (c.arrival_rate_per_s > 0 && c.mean_runtime_s <= 0)
      throw std::invalid_argument("gen_trace: mean runtime must be positive");
  }

  JobTrace trace;
  trace.horizon_s = horizon_s;

  // Independent per-class streams so scaling one class's rate does not
  // disturb any other class's arrivals.
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const JobClass& cls = classes[ci];
    if (cls.arrival_rate_per_s <= 0) continue;
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (ci + 1));
    double t = 0;
    while (true) {
      t += exponential(rng, cls.arrival_rate_per_s);
      if (t >= horizon_s) break;
      double runtime = cls.mean_runtime_s;
      if (cls.runtime_sigma > 0) {
        const double sigma = cls.runtime_sigma;
        const double mu = std::log(cls.mean_runtime_s) - sigma * sigma / 2;
        runtime = std::exp(mu + sigma * standard_normal(rng));
      }
      trace.jobs.push_back(
          {0, t, cls.gpu_count, runtime, cls.comm_volume_gb});
    }
  }

  std::stable_sort(trace.jobs.begin(), trace.jobs.end(),
                   [](const JobSpec& x, const JobSpec& y) {
                     return x.arrival_s < y.arrival_s;
                   });
  for (std::size_t i = 0; i < trace.jobs.size(); ++i)
    trace.jobs[i].id = static_cast<int>(i);
  return trace;
}

double workload_level(const std::vector<JobClass>& classes, double gpu_num) {
  if (gpu_num <= 0)
    throw std::invalid_argument("workload_level: gpu_num must be positive");
  double sum = 0;
  for (const auto& c : classes)
    sum += c.gpu_count * c.arrival_rate_per_s * c.mean_runtime_s;
  return sum / gpu_num;
}

double workload_level(const JobTrace& trace, double gpu_num) {
  if (gpu_num <= 0)
    throw std::invalid_argument("workload_level: gpu_num must be positive");
  if (trace.horizon_s <= 0) return 0;
  double sum = 0;
  for (const auto& j : trace.jobs) sum += j.gpu_count * j.ideal_runtime_s;
  return sum / (gpu_num * trace.horizon_s);
}

std::vector<JobClass> calibrate(const std::vector<JobClass>& classes,
                                double gpu_num, double target) {
  const double current = workload_level(classes, gpu_num);
  if (current <= 0)
    throw std::invalid_argument("calibrate: current workload level is zero");
  const double factor = target / current;
  std::vector<JobClass> scaled = classes;
  for (auto& c : scaled) c.arrival_rate_per_s *= factor;
  return scaled;
}

std::vector<JobClass> default_job_mix() {
  // Most jobs are small; sizes and runtimes fall off roughly geometrically.
  // Rates here are relative weights; calibrate() sets the absolute level.
  std::vector<JobClass> mix;
  double weight = 1.0;
  double runtime = 240.0;
  for (int k = 8; k <= 4096; k *= 2) {
    JobClass c;
    c.gpu_count = k;
    c.arrival_rate_per_s = weight;
    c.mean_runtime_s = runtime;
    c.runtime_sigma = 0.5;
    c.comm_volume_gb = k <= 16 ? 0.0 : 4.0 * (k / 64.0 + 1.0);
    mix.push_back(c);
    weight *= 0.3;
    runtime *= 1.1;
  }
  return mix;
}

void save_trace_csv(const JobTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace: " + path);
  out << "job_id,arrival_s,gpu_count,ideal_runtime_s,comm_volume_gb\n";
  for (const auto& j : trace.jobs)
    out << j.id << ',' << format_double(j.arrival_s) << ',' << j.gpu_count
        << ',' << format_double(j.ideal_runtime_s) << ','
        << format_double(j.comm_volume_gb) << '\n';
}

JobTrace load_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read trace: " + path);
  JobTrace trace;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("job_id", 0) == 0) continue;
    std::istringstream row(line);
    std::string field;
    JobSpec job;
    try {
      std::getline(row, field, ',');
      job.id = std::stoi(field);
      std::getline(row, field, ',');
      job.arrival_s = std::stod(field);
      std::getline(row, field, ',');
      job.gpu_count = std::stoi(field);
      std::getline(row, field, ',');
      job.ideal_runtime_s = std::stod(field);
      std::getline(row, field, ',');
      job.comm_volume_gb = std::stod(field);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": malformed trace row");
    }
    if (job.gpu_count < 1 || job.arrival_s < 0 || job.ideal_runtime_s <= 0 ||
        job.comm_volume_gb < 0)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": out-of-range trace values");
    trace.jobs.push_back(job);
    trace.horizon_s = std::max(trace.horizon_s, job.arrival_s);
  }
  std::stable_sort(trace.jobs.begin(), trace.jobs.end(),
                   [](const JobSpec& x, const JobSpec& y) {
                     return x.arrival_s < y.arrival_s;
                   });
  return trace;
}

std::vector<JobClass> load_job_classes_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read class mix: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  if (!doc.is_array())
    throw std::runtime_error(path + ": class mix must be a JSON array");
  std::vector<JobClass> classes;
  for (const auto& item : doc) {
    JobClass c;
    c.gpu_count = item.at("gpu_count").get<int>();
    c.arrival_rate_per_s = item.at("arrival_rate_per_s").get<double>();
    c.mean_runtime_s = item.at("mean_runtime_s").get<double>();
    c.runtime_sigma = item.value("runtime_sigma", 0.5);
    c.comm_volume_gb = item.value("comm_volume_gb", 0.0);
    classes.push_back(c);
  }
  return classes;
}

}  // namespace ocsw
