#include "diana/local_scheduler.hpp"

#include <algorithm>

namespace diana {

LocalScheduler::LocalScheduler(SiteId site, int node_count, units::Mflops node_power, Discipline discipline)
    : site_(std::move(site)), node_count_(node_count), node_power_(node_power), discipline_(discipline),
      idle_(node_count) {
  if (node_count_ < 1) throw ValidationError("site '" + site_ + "': node_count must be >= 1");
  if (!(node_power_ > 0.0)) throw ValidationError("site '" + site_ + "': node_power must be > 0");
  if (discipline_ == Discipline::priority_multiqueue)
    throw ValidationError("local schedulers serve fcfs or sjf only");
}

void LocalScheduler::allocate(const JobSpec& job) {
  if (job.processors_required > node_count_)
    throw Unschedulable("job '" + job.job_id + "' needs " + std::to_string(job.processors_required) +
                        " processors but site '" + site_ + "' has " + std::to_string(node_count_));
  allocated_ids_.insert(job.job_id);
  waiting_demand_ += job.processors_required;
  if (discipline_ == Discipline::fcfs) {
    waiting_.push_back(job);
    return;
  }
  // sjf: stable insert after every job with the same or smaller requirement
  auto pos = std::find_if(waiting_.begin(), waiting_.end(), [&](const JobSpec& queued) {
    return queued.processors_required > job.processors_required;
  });
  waiting_.insert(pos, job);
}

std::vector<JobSpec> LocalScheduler::dispatch() {
  std::vector<JobSpec> started;
  while (!waiting_.empty() && waiting_.front().processors_required <= idle_) {
    JobSpec job = std::move(waiting_.front());
    waiting_.pop_front();
    idle_ -= job.processors_required;
    waiting_demand_ -= job.processors_required;
    ++running_;
    started.push_back(std::move(job));
  }
  return started;
}

void LocalScheduler::release(const JobSpec& job) {
  idle_ += job.processors_required;
  --running_;
}

units::Seconds LocalScheduler::runtime(const JobSpec& job) const {
  return job.compute_demand / (node_power_ * job.processors_required);
}

}  // namespace diana
