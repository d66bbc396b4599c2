#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diana/scenario.hpp"
#include "diana/workload.hpp"

namespace diana {

enum class JobStatus { pending, completed, failed_unreachable, rejected_unschedulable };
std::string_view to_string(JobStatus s);
JobStatus parse_job_status(std::string_view text);

struct JobMetrics {
  JobId job_id;
  UserId user;
  SiteId site;  // execution site, empty if the job never ran
  units::Seconds submit = 0.0;
  std::optional<units::Seconds> scheduled;  // bound to its execution site
  std::optional<units::Seconds> started;
  std::optional<units::Seconds> completed;
  std::optional<units::Seconds> queue_time;  // started - submit - transfer_time
  std::optional<units::Seconds> exec_time;   // completed - submit
  int migrations = 0;
  JobStatus status = JobStatus::pending;
  units::Seconds transfer_time = 0.0;
};

struct SiteMetrics {
  SiteId site;
  int nodes = 0;
  double busy_node_seconds = 0.0;
  double utilization = 0.0;  // busy node-seconds / (nodes x makespan)
  int jobs_run = 0;
};

struct RunSummary {
  std::string label;
  std::string scheduler;
  std::string queue;
  int sites = 0;
  int jobs = 0;
  int completed = 0;
  int failed_unreachable = 0;
  int rejected_unschedulable = 0;
  double mean_exec_time = 0.0;
  double total_exec_time = 0.0;
  double mean_queue_time = 0.0;
  double total_queue_time = 0.0;
  double mean_transfer_time = 0.0;
  double makespan = 0.0;
  std::uint64_t message_count = 0;  // scheduler + discovery
  std::uint64_t discovery_messages = 0;
  double messages_per_job = 0.0;
  int migrations = 0;
  int migration_episodes = 0;
  double mean_utilization = 0.0;
  std::string workload_hash;
};

// One line of the event trace. `site` is where it happened, `peer` the other
// end of a move, `value` a kind-specific number (priority, responder count).
struct TraceEvent {
  units::Seconds time = 0.0;
  std::string kind;
  JobId job;
  SiteId site;
  SiteId peer;
  double value = 0.0;
};

struct RunMetrics {
  std::vector<JobMetrics> jobs;
  std::vector<SiteMetrics> sites;
  RunSummary summary;
  std::vector<TraceEvent> trace;
  std::uint64_t trace_hash = 0;
};

struct RunOptions {
  std::string label;
  bool record_trace = true;
};

/// Validates the scenario, generates its workload under `seed` and simulates
/// it to completion (or the duration cap).
RunMetrics run(const Scenario& scenario, std::uint64_t seed, const RunOptions& options = {});

/// Simulates an explicit job list on the scenario's sites.
RunMetrics run_jobs(const Scenario& scenario, const std::vector<WorkloadJob>& jobs, const RunOptions& options = {});

/// Aggregates recomputed from per-job rows.
void summarize(RunMetrics& metrics);

}  // namespace diana
