#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "diana/scenario.hpp"
#include "diana/types.hpp"

namespace diana {

/// A generated job and the site whose meta-scheduler receives it.
struct WorkloadJob {
  JobSpec job;
  SiteId origin;
};

// Preset defaults.
//   P1  1000 compute jobs, exponential demand (mean 60 MFLOP), 10 MB of input
//       at the origin, bursts of 10 with exponential gaps sized for `load`
//       (default 0.9) of the total capacity
//   P2  `per_class` (25) jobs in each class of 8/17/26/35 processors with
//       per-class runtimes 19.999/99.999/444.444/555.555 s, all at t = 0 in
//       shuffled order
//   P3  20 data-intensive jobs of 100 MFLOP reading 10 GB from `data_site`
//       (default: storage endpoint "se" if declared, else the origin)
//   P4  `jobs_per_site` (20) x sites jobs of 3 MFLOP reading 1 MB, all at t = 0
// Origin defaults to the first site, user to the first user.
namespace presets {
inline constexpr int p1_jobs = 1000;
inline constexpr double p1_mean_compute = 60.0;
inline constexpr double p1_data_size = 10e6;
inline constexpr int p1_burst_size = 10;
inline constexpr double p1_load = 0.9;
inline constexpr int p2_per_class = 25;
inline constexpr int p2_processors[4] = {8, 17, 26, 35};
inline constexpr double p2_runtimes[4] = {19.999, 99.999, 444.444, 555.555};
inline constexpr int p3_jobs = 20;
inline constexpr double p3_compute = 100.0;
inline constexpr double p3_data_size = 10e9;
inline constexpr int p4_jobs_per_site = 20;
inline constexpr double p4_compute = 3.0;
inline constexpr double p4_data_size = 1e6;
}  // namespace presets

/// Expands the scenario's preset and bursts into jobs sorted by submit time
/// (ties keep generation order) with ids j000001, j000002, ...
/// Deterministic for a given (scenario, seed) on every platform.
std::vector<WorkloadJob> generate_workload(const Scenario& scenario, std::uint64_t seed);

/// FNV-1a over a canonical rendering of every job field.
std::uint64_t workload_hash(const std::vector<WorkloadJob>& jobs);
std::string hash_hex(std::uint64_t hash);

/// Portable draws on top of mt19937_64 (the standard distributions are not
/// specified bit-for-bit across library implementations).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on [0, 1).
  double uniform();
  double exponential(double mean);
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace diana
