#include "diana/cost_model.hpp"

#include <algorithm>
#include <cmath>

namespace diana {

void validate(const CostWeights& w) {
  if (w.compute < 0.0 || w.transfer < 0.0 || w.network < 0.0)
    throw ValidationError("cost weights must be non-negative");
  if (!(w.compute + w.transfer + w.network > 0.0)) throw ValidationError("cost weights must not all be zero");
}

const CostWeights& WeightPresets::for_kind(JobKind kind) const {
  switch (kind) {
    case JobKind::compute_intensive:
      return compute_intensive;
    case JobKind::data_intensive:
      return data_intensive;
    case JobKind::mixed:
      return mixed;
  }
  return mixed;
}

units::Seconds compute_cost(const JobSpec& job, const SiteState& site, const CostModelConfig& config) {
  const int usable = std::min(job.processors_required, site.node_count);
  const double execution = job.compute_demand / (site.node_power * usable);
  const double queued = static_cast<double>(site.local_queue_length + site.diana_queue_length);
  const double delay = queued / std::max(site.service_rate, config.rate_floor);
  return execution + delay;
}

units::Seconds transfer_cost(const JobSpec& job, const SiteId& source, const SiteId& dest,
                             const std::optional<NetworkLink>& link) {
  if (source == dest) return 0.0;
  if (!link) throw UnreachableSite(source, dest);
  const double bps = units::bits_per_second(available_bandwidth(*link));
  return link->latency + units::bits(job.data_size) / bps;
}

double network_cost(const std::optional<NetworkLink>& link, const CostModelConfig& config) {
  if (!link) return 0.0;
  return config.reference_bandwidth / available_bandwidth(*link);
}

CostBreakdown total_cost(const JobSpec& job, const SiteState& site,
                         const std::optional<NetworkLink>& link, const CostWeights& weights,
                         const CostModelConfig& config) {
  CostBreakdown out;
  const bool local = job.data_site == site.site_id;
  out.compute_cost = compute_cost(job, site, config);
  out.transfer_cost = transfer_cost(job, job.data_site, site.site_id, local ? std::nullopt : link);
  out.network_cost = local ? 0.0 : network_cost(link, config);
  out.total = weights.compute * out.compute_cost + weights.transfer * out.transfer_cost +
              weights.network * out.network_cost;
  return out;
}

}  // namespace diana
