#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diana/baselines.hpp"
#include "diana/discovery.hpp"
#include "diana/queue_engine.hpp"
#include "diana/scheduler.hpp"
#include "diana/types.hpp"

namespace diana {

struct SiteSpec {
  SiteId id;
  int nodes = 1;
  units::Mflops power = 1.0;
  friend bool operator==(const SiteSpec&, const SiteSpec&) = default;
};

// Named site layouts.
//   paper5   five sites: site1 with 4 nodes, site2..site5 with 5 nodes each,
//            every count multiplied by node_scale
//   uniform  `count` sites named site01.. with `nodes` nodes each
struct TopologySpec {
  std::string preset;
  int count = 5;
  int nodes = 1;
  int node_scale = 1;
  units::Mflops power = 1.0;
  friend bool operator==(const TopologySpec&, const TopologySpec&) = default;
};

struct JobTemplate {
  units::Mflop compute = 1.0;
  int processors = 1;
  units::Bytes data_size = 0.0;
  SiteId data_site;  // empty: the submission site
  JobKind kind = JobKind::compute_intensive;
  friend bool operator==(const JobTemplate&, const JobTemplate&) = default;
};

// `count` jobs at `time`, repeated `repeat` times every `interval` seconds.
struct BurstSpec {
  units::Seconds time = 0.0;
  UserId user;
  SiteId site;
  int count = 1;
  JobTemplate job;
  int repeat = 1;
  units::Seconds interval = 0.0;
  friend bool operator==(const BurstSpec&, const BurstSpec&) = default;
};

// Parameters of the generated workloads P1..P4. Unset fields take the preset
// default (see workload.hpp).
struct PresetSpec {
  std::string name;
  std::optional<int> jobs;
  std::optional<double> load;
  std::optional<int> burst_size;
  std::optional<double> mean_compute;
  std::optional<int> per_class;
  std::optional<int> jobs_per_site;
  std::optional<double> data_size;
  std::optional<SiteId> data_site;
  std::optional<SiteId> origin;
  std::optional<UserId> user;
  friend bool operator==(const PresetSpec&, const PresetSpec&) = default;
};

struct WorkloadSpec {
  PresetSpec preset;
  std::vector<BurstSpec> bursts;
  friend bool operator==(const WorkloadSpec&, const WorkloadSpec&) = default;
};

struct SchedulerSpec {
  SchedulerKind kind = SchedulerKind::diana;
  Discipline queue = Discipline::priority_multiqueue;
  DianaConfig diana;
  friend bool operator==(const SchedulerSpec&, const SchedulerSpec&) = default;
};

// Arrival and service rates are exponentially weighted averages of per-window
// counts: rate <- alpha * count / window + (1 - alpha) * rate.
struct RateConfig {
  double alpha = 0.2;
  units::Seconds window = 10.0;
  friend bool operator==(const RateConfig&, const RateConfig&) = default;
};

enum class FailureAction { crash, shutdown, recover };
std::string_view to_string(FailureAction a);
FailureAction parse_failure_action(std::string_view text);

// crash: the meta-scheduler silently stops answering peers and discovery.
// shutdown: same, after deregistering. recover: answers again and re-registers.
// The site's local resource manager keeps running throughout.
struct FailureSpec {
  SiteId site;
  units::Seconds time = 0.0;
  FailureAction action = FailureAction::crash;
  friend bool operator==(const FailureSpec&, const FailureSpec&) = default;
};

struct Scenario {
  std::string name = "scenario";
  TopologySpec topology;
  std::vector<SiteSpec> sites;
  std::vector<SiteId> storage;
  std::optional<NetworkLink> default_link;
  std::vector<NetworkLink> links;
  std::vector<UserProfile> users;
  WorkloadSpec workload;
  SchedulerSpec scheduler;
  QueueConfig queue;
  DiscoveryConfig discovery;
  RateConfig rates;
  std::vector<FailureSpec> failures;
  units::Seconds duration_cap = 1e7;

  /// Topology preset expanded, or the explicit site list.
  std::vector<SiteSpec> resolved_sites() const;
  LinkTable link_table() const;
  UserProfiles user_profiles() const;
};

/// A validation failure tied to a dotted field path such as "queue.thrs" or
/// "sites[2].nodes".
class FieldError : public ValidationError {
 public:
  FieldError(std::string field, const std::string& message)
      : ValidationError(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

bool operator==(const NetworkLink& a, const NetworkLink& b);
bool operator==(const UserProfile& a, const UserProfile& b);
bool operator==(const Scenario& a, const Scenario& b);

/// Full validation; messages name the offending field.
void validate(const Scenario& scenario);

/// Parses the YAML scenario format (see docs/scenario-format.md). Unknown
/// keys are rejected; errors carry line numbers where available.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical YAML form; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

/// Byte counts written as "10GB", "1 MB", "512" (bytes).
double parse_size(std::string_view text);

}  // namespace diana
