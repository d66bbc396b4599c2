#include "diana/types.hpp"

#include <cmath>

namespace diana {

std::string_view to_string(JobKind kind) {
  switch (kind) {
    case JobKind::compute_intensive:
      return "compute_intensive";
    case JobKind::data_intensive:
      return "data_intensive";
    case JobKind::mixed:
      return "mixed";
  }
  return "mixed";
}

JobKind parse_job_kind(std::string_view text) {
  if (text == "compute_intensive" || text == "compute") return JobKind::compute_intensive;
  if (text == "data_intensive" || text == "data") return JobKind::data_intensive;
  if (text == "mixed") return JobKind::mixed;
  throw ValidationError("unknown job kind '" + std::string(text) +
                        "' (expected compute_intensive, data_intensive or mixed)");
}

void validate(const JobSpec& job) {
  if (job.processors_required < 1)
    throw ValidationError("job '" + job.job_id + "': processors_required must be >= 1");
  if (!(job.compute_demand >= 0.0) || !std::isfinite(job.compute_demand))
    throw ValidationError("job '" + job.job_id + "': compute_demand must be finite and >= 0");
  if (!(job.data_size >= 0.0) || !std::isfinite(job.data_size))
    throw ValidationError("job '" + job.job_id + "': data_size must be finite and >= 0");
}

void validate(const SiteState& site) {
  if (site.node_count < 1) throw ValidationError("site '" + site.site_id + "': node_count must be >= 1");
  if (!(site.node_power > 0.0)) throw ValidationError("site '" + site.site_id + "': node_power must be > 0");
  if (site.arrival_rate < 0.0 || site.service_rate < 0.0)
    throw ValidationError("site '" + site.site_id + "': rates must be >= 0");
}

void validate(const NetworkLink& link) {
  const std::string name = link.from_site + "-" + link.to_site;
  if (!(link.bandwidth > 0.0)) throw ValidationError("link " + name + ": bandwidth must be > 0");
  if (!(link.latency >= 0.0)) throw ValidationError("link " + name + ": latency must be >= 0");
  if (!(link.background_load >= 0.0 && link.background_load < 1.0))
    throw ValidationError("link " + name + ": background_load must lie in [0, 1)");
}

units::Mbps available_bandwidth(const NetworkLink& link) {
  return link.bandwidth * (1.0 - link.background_load);
}

std::pair<SiteId, SiteId> LinkTable::key(const SiteId& a, const SiteId& b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

void LinkTable::add(const NetworkLink& link) { links_[key(link.from_site, link.to_site)] = link; }

std::optional<NetworkLink> LinkTable::find(const SiteId& a, const SiteId& b) const {
  if (auto it = links_.find(key(a, b)); it != links_.end()) return it->second;
  if (default_) {
    NetworkLink link = *default_;
    link.from_site = a;
    link.to_site = b;
    return link;
  }
  return std::nullopt;
}

void LinkTable::set_all_bandwidth(units::Mbps bandwidth) {
  if (default_) default_->bandwidth = bandwidth;
  for (auto& [k, link] : links_) link.bandwidth = bandwidth;
}

}  // namespace diana
