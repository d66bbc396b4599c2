#include "diana/scheduler.hpp"

#include <algorithm>
#include <tuple>

namespace diana {

std::string_view to_string(MigrationComparator c) {
  return c == MigrationComparator::lexicographic ? "lexicographic" : "weighted_sum";
}

MigrationComparator parse_migration_comparator(std::string_view text) {
  if (text == "lexicographic") return MigrationComparator::lexicographic;
  if (text == "weighted_sum") return MigrationComparator::weighted_sum;
  throw ValidationError("unknown migration comparator '" + std::string(text) +
                        "' (expected lexicographic or weighted_sum)");
}

std::string_view to_string(Placement p) { return p == Placement::cost ? "cost" : "local"; }

Placement parse_placement(std::string_view text) {
  if (text == "cost") return Placement::cost;
  if (text == "local") return Placement::local;
  throw ValidationError("unknown placement '" + std::string(text) + "' (expected cost or local)");
}

void validate(const DianaConfig& c) {
  validate(c.weights.compute_intensive);
  validate(c.weights.data_intensive);
  validate(c.weights.mixed);
  if (!(c.cost.reference_bandwidth > 0.0)) throw ValidationError("cost.reference_bandwidth must be > 0");
  if (!(c.poll_interval > 0.0)) throw ValidationError("scheduler.poll_interval must be > 0");
  if (c.queue_weight < 0.0 || c.cost_weight < 0.0)
    throw ValidationError("scheduler comparator weights must be non-negative");
  if (c.max_migrations < 0) throw ValidationError("scheduler.max_migrations must be >= 0");
}

CostWeights classify(const JobSpec& job, const WeightPresets& presets) { return presets.for_kind(job.kind); }

namespace {

std::optional<NetworkLink> link_for(const JobSpec& job, const SiteId& site, const LinkTable& links) {
  if (job.data_site == site) return std::nullopt;
  return links.find(job.data_site, site);
}

bool reachable(const JobSpec& job, const SiteId& site, const LinkTable& links) {
  return job.data_site == site || links.find(job.data_site, site).has_value();
}

}  // namespace

SchedulingDecision select_site(const JobSpec& job, std::span<const SiteState> candidates, const LinkTable& links,
                               const DianaConfig& config) {
  SchedulingDecision decision;
  decision.job_id = job.job_id;
  const CostWeights weights = classify(job, config.weights);

  const SiteState* best = nullptr;
  SiteCost best_cost;
  for (const auto& site : candidates) {
    if (site.node_count < job.processors_required || !reachable(job, site.site_id, links)) continue;
    const CostBreakdown cost = total_cost(job, site, link_for(job, site.site_id, links), weights, config.cost);
    SiteCost entry{site.site_id, cost.total, site.local_queue_length + site.diana_queue_length};
    decision.alternatives.push_back(entry);
    if (!best || std::tie(entry.total, entry.queued, entry.site) <
                     std::tie(best_cost.total, best_cost.queued, best_cost.site)) {
      best = &site;
      best_cost = entry;
      decision.cost = cost;
    }
  }
  if (!best)
    throw Unschedulable("job '" + job.job_id + "': no candidate site can host " +
                        std::to_string(job.processors_required) + " processors");
  decision.chosen_site = best->site_id;
  return decision;
}

SchedulingDecision schedule(const JobSpec& job, const SiteState& local, std::span<const PeerSnapshot> peers,
                            const LinkTable& links, const DianaConfig& config) {
  std::vector<SiteState> candidates;
  candidates.reserve(peers.size() + 1);
  candidates.push_back(local);
  for (const auto& peer : peers) candidates.push_back(peer.site);
  return select_site(job, candidates, links, config);
}

std::size_t jobs_ahead(double priority, const QueueState& state) {
  const auto order = state.priority_order();
  return static_cast<std::size_t>(std::count_if(
      order.begin(), order.end(), [&](const QueuedJob& queued) { return queued.priority >= priority; }));
}

std::optional<double> batch_cost(std::span<const JobSpec> batch, const SiteState& site, const LinkTable& links,
                                 const DianaConfig& config) {
  double sum = 0.0;
  for (const auto& job : batch) {
    if (site.node_count < job.processors_required || !reachable(job, site.site_id, links)) return std::nullopt;
    sum += total_cost(job, site, link_for(job, site.site_id, links), classify(job, config.weights), config.cost).total;
  }
  return sum;
}

MigrationDecision migrate_batch(std::span<const JobSpec> batch, const PeerSnapshot& local,
                                std::span<const PeerSnapshot> peers, const LinkTable& links,
                                const DianaConfig& config) {
  MigrationDecision out;
  out.target = local.site.site_id;
  const int local_key = local.jobs_ahead + local.queue_length;

  const PeerSnapshot* best = nullptr;
  auto rank = [&](const PeerSnapshot& p) {
    const double key = p.jobs_ahead + p.queue_length;
    if (config.comparator == MigrationComparator::weighted_sum)
      return std::tuple{config.queue_weight * key + config.cost_weight * p.total_cost, 0.0, p.site.site_id};
    return std::tuple{key, p.total_cost, p.site.site_id};
  };

  for (const auto& peer : peers) {
    if (peer.site.site_id == local.site.site_id) continue;
    const int key = peer.jobs_ahead + peer.queue_length;
    out.alternatives.push_back({peer.site.site_id, peer.total_cost, key});
    const bool no_worse = key <= local_key && peer.total_cost <= local.total_cost;
    const bool better = key < local_key || peer.total_cost < local.total_cost;
    if (!(no_worse && better)) continue;
    if (!best || rank(peer) < rank(*best)) best = &peer;
  }
  if (!best) return out;

  out.exported = true;
  out.target = best->site.site_id;
  for (const auto& job : batch) {
    SchedulingDecision d;
    d.job_id = job.job_id;
    d.chosen_site = out.target;
    d.was_migration = true;
    d.cost = total_cost(job, best->site, job.data_site == out.target ? std::nullopt : links.find(job.data_site, out.target),
                        classify(job, config.weights), config.cost);
    d.alternatives = out.alternatives;
    out.decisions.push_back(std::move(d));
  }
  return out;
}

std::vector<PeerSnapshot> poll_peers(const SiteId& requester, std::span<const SiteId> peers,
                                     const std::function<std::optional<PeerSnapshot>(const SiteId&)>& respond,
                                     units::Seconds now, std::uint64_t& message_counter) {
  std::vector<PeerSnapshot> out;
  for (const auto& peer : peers) {
    if (peer == requester) continue;
    ++message_counter;
    if (auto snap = respond(peer)) {
      ++message_counter;
      snap->snapshot_time = now;
      out.push_back(std::move(*snap));
    }
  }
  return out;
}

std::vector<PeerSnapshot> fresh_snapshots(std::span<const PeerSnapshot> snapshots, units::Seconds now,
                                          units::Seconds max_age) {
  std::vector<PeerSnapshot> out;
  for (const auto& s : snapshots)
    if (now - s.snapshot_time <= max_age) out.push_back(s);
  return out;
}

void on_allocation(const JobSpec& job, QueueState& diana_queue, LocalScheduler& local, const UserProfiles& users) {
  diana_queue.remove(job.job_id, users);
  local.allocate(job);
}

}  // namespace diana
