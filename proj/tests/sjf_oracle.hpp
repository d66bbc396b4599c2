#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "diana/baselines.hpp"
#include "diana/workload.hpp"

// Single pool, all jobs present at t = 0, run one after another. Runtimes in
// integer milliseconds so every ordering is compared exactly.
namespace sjf_oracle {

inline std::int64_t runtime_ms(int processors) {
  for (int c = 0; c < 4; ++c)
    if (diana::presets::p2_processors[c] == processors)
      return static_cast<std::int64_t>(diana::presets::p2_runtimes[c] * 1000 + 0.5);
  return processors * 1000;
}

inline std::int64_t total_wait(const std::vector<diana::JobSpec>& order) {
  std::int64_t clock = 0, waited = 0;
  for (const auto& j : order) {
    waited += clock;
    clock += runtime_ms(j.processors_required);
  }
  return waited;
}

inline std::int64_t brute_force_min_wait(std::vector<diana::JobSpec> jobs) {
  std::vector<std::size_t> idx(jobs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::int64_t best = INT64_MAX;
  do {
    std::vector<diana::JobSpec> order;
    for (auto i : idx) order.push_back(jobs[i]);
    best = std::min(best, total_wait(order));
  } while (std::next_permutation(idx.begin(), idx.end()));
  return best;
}

}  // namespace sjf_oracle
