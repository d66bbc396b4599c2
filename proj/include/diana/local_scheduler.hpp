#pragma once

#include <deque>
#include <set>
#include <vector>

#include "diana/queue_engine.hpp"
#include "diana/types.hpp"

namespace diana {

// Model of a site's local resource manager: a single waiting queue served
// head-of-line onto identical nodes, no backfilling. A job holds
// `processors_required` nodes for compute_demand / (node_power * processors).
class LocalScheduler {
 public:
  LocalScheduler(SiteId site, int node_count, units::Mflops node_power, Discipline discipline = Discipline::fcfs);

  /// Accepts an allocated job. Allocation is final: the job is never handed
  /// back to a meta-scheduler. Throws Unschedulable if it can never fit.
  void allocate(const JobSpec& job);

  /// Starts jobs from the head of the queue while they fit on idle nodes.
  std::vector<JobSpec> dispatch();

  /// Frees the nodes held by a running job.
  void release(const JobSpec& job);

  units::Seconds runtime(const JobSpec& job) const;

  const SiteId& site() const { return site_; }
  int node_count() const { return node_count_; }
  units::Mflops node_power() const { return node_power_; }
  int idle_nodes() const { return idle_; }
  int waiting_count() const { return static_cast<int>(waiting_.size()); }
  int waiting_demand() const { return waiting_demand_; }
  int running_count() const { return running_; }
  int allocated_count() const { return waiting_count() + running_; }
  bool was_allocated(const JobId& id) const { return allocated_ids_.count(id) != 0; }

 private:
  SiteId site_;
  int node_count_;
  units::Mflops node_power_;
  Discipline discipline_;
  int idle_;
  int running_ = 0;
  int waiting_demand_ = 0;
  std::deque<JobSpec> waiting_;
  std::set<JobId> allocated_ids_;
};

}  // namespace diana
