#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "diana/cost_model.hpp"
#include "diana/local_scheduler.hpp"
#include "diana/queue_engine.hpp"
#include "diana/types.hpp"

namespace diana {

enum class MigrationComparator { lexicographic, weighted_sum };
std::string_view to_string(MigrationComparator c);
MigrationComparator parse_migration_comparator(std::string_view text);

// Where first-time jobs may go. `cost` runs the normal scheduling scheme over
// local and polled peers; `local` keeps them on the submission site so that
// only migration moves work between sites.
enum class Placement { cost, local };
std::string_view to_string(Placement p);
Placement parse_placement(std::string_view text);

struct DianaConfig {
  WeightPresets weights;
  CostModelConfig cost;
  Placement placement = Placement::cost;
  bool migration = true;
  units::Seconds poll_interval = 30.0;
  MigrationComparator comparator = MigrationComparator::lexicographic;
  // weighted_sum comparator: queue_weight * congestion_key + cost_weight * cost
  double queue_weight = 1.0;
  double cost_weight = 1.0;
  int max_migrations = 4;

  friend bool operator==(const DianaConfig&, const DianaConfig&) = default;
};

void validate(const DianaConfig& config);

/// Weight preset for the job's declared kind. The tag is authoritative.
CostWeights classify(const JobSpec& job, const WeightPresets& presets = {});

/// What a peer reports when polled.
struct PeerSnapshot {
  SiteState site;
  int queue_length = 0;  // DIANA queue + local allocated jobs
  int jobs_ahead = 0;    // queued jobs ahead of the probe priority
  double total_cost = 0.0;
  units::Seconds snapshot_time = 0.0;
};

struct SiteCost {
  SiteId site;
  double total = 0.0;
  int queued = 0;
};

struct SchedulingDecision {
  JobId job_id;
  SiteId chosen_site;
  CostBreakdown cost;
  std::vector<SiteCost> alternatives;
  bool was_migration = false;
};

/// Argmin of total cost over `candidates`, tie-broken by fewer queued jobs
/// then lexical site id. Sites too small for the job or unreachable from its
/// data are skipped; throws Unschedulable when nothing remains.
SchedulingDecision select_site(const JobSpec& job, std::span<const SiteState> candidates, const LinkTable& links,
                               const DianaConfig& config);

/// Normal scheduling: the local site plus every polled peer.
SchedulingDecision schedule(const JobSpec& job, const SiteState& local, std::span<const PeerSnapshot> peers,
                            const LinkTable& links, const DianaConfig& config);

/// Queued jobs whose place precedes a newcomer with `priority` (equal
/// priorities precede, as they arrived first).
std::size_t jobs_ahead(double priority, const QueueState& state);

/// Summed total cost of running the whole batch on `site`. Returns nullopt if
/// some job cannot reach or fit the site.
std::optional<double> batch_cost(std::span<const JobSpec> batch, const SiteState& site, const LinkTable& links,
                                 const DianaConfig& config);

struct MigrationDecision {
  bool exported = false;
  SiteId target;  // local site id when staying
  std::vector<SchedulingDecision> decisions;  // one per job when exported
  std::vector<SiteCost> alternatives;         // remote (site, batch cost, congestion key)
};

/// Chooses where a congested site's batch goes. A peer qualifies only when it
/// is no worse than `local` on both the congestion key (jobs ahead + queue
/// length) and the batch cost, and strictly better on one of them; the best
/// qualifying peer by the configured comparator receives the whole batch.
MigrationDecision migrate_batch(std::span<const JobSpec> batch, const PeerSnapshot& local,
                                std::span<const PeerSnapshot> peers, const LinkTable& links,
                                const DianaConfig& config);

/// Sends one snapshot request per peer (skipping the requester). `respond`
/// returns nullopt on timeout. Each request counts one message and each reply
/// another.
std::vector<PeerSnapshot> poll_peers(const SiteId& requester, std::span<const SiteId> peers,
                                     const std::function<std::optional<PeerSnapshot>(const SiteId&)>& respond,
                                     units::Seconds now, std::uint64_t& message_counter);

/// Keeps snapshots no older than `max_age`.
std::vector<PeerSnapshot> fresh_snapshots(std::span<const PeerSnapshot> snapshots, units::Seconds now,
                                          units::Seconds max_age);

/// Hands a job from the DIANA queue to the site's local scheduler. Once
/// allocated a job never returns to a DIANA queue.
void on_allocation(const JobSpec& job, QueueState& diana_queue, LocalScheduler& local, const UserProfiles& users);

}  // namespace diana
