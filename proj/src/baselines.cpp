#include "diana/baselines.hpp"

#include <algorithm>
#include <tuple>

namespace diana {

std::string_view to_string(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::diana:
      return "diana";
    case SchedulerKind::round_robin:
      return "round_robin";
    case SchedulerKind::flop_greedy:
      return "flop_greedy";
  }
  return "diana";
}

SchedulerKind parse_scheduler_kind(std::string_view text) {
  if (text == "diana") return SchedulerKind::diana;
  if (text == "round_robin" || text == "rr") return SchedulerKind::round_robin;
  if (text == "flop_greedy" || text == "flop") return SchedulerKind::flop_greedy;
  throw ValidationError("unknown scheduler '" + std::string(text) + "' (expected diana, round_robin or flop_greedy)");
}

void validate(SchedulerKind kind, Discipline discipline) {
  if (discipline == Discipline::priority_multiqueue && kind != SchedulerKind::diana)
    throw ValidationError("queue priority_multiqueue requires scheduler diana");
}

std::pair<SiteId, std::size_t> rr_schedule(const JobSpec& /*job*/, std::span<const SiteId> sites,
                                           std::size_t cursor) {
  if (sites.empty()) throw ValidationError("round robin needs at least one site");
  const std::size_t index = cursor % sites.size();
  return {sites[index], (index + 1) % sites.size()};
}

SiteId flop_schedule(const JobSpec& job, std::span<const SiteState> sites, std::uint64_t& message_counter) {
  if (sites.empty()) throw ValidationError("flop scheduler needs at least one site");
  message_counter += 2 * sites.size();
  const SiteState* best = nullptr;
  double best_capacity = -1.0;
  for (const auto& site : sites) {
    if (site.node_count < job.processors_required) continue;
    const double capacity = site.node_power * std::max(site.free_nodes, 0);
    if (!best || capacity > best_capacity || (capacity == best_capacity && site.site_id < best->site_id)) {
      best = &site;
      best_capacity = capacity;
    }
  }
  if (!best)
    throw Unschedulable("job '" + job.job_id + "': no site has " + std::to_string(job.processors_required) +
                        " processors");
  return best->site_id;
}

std::vector<JobSpec> sjf_order(std::vector<JobSpec> jobs) {
  std::stable_sort(jobs.begin(), jobs.end(), [](const JobSpec& a, const JobSpec& b) {
    return std::tie(a.processors_required, a.submit_time, a.job_id) <
           std::tie(b.processors_required, b.submit_time, b.job_id);
  });
  return jobs;
}

}  // namespace diana
