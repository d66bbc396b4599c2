#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "diana/units.hpp"

namespace diana {

using JobId = std::string;
using UserId = std::string;
using SiteId = std::string;

// Error hierarchy. Everything the library throws derives from Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class UnreachableSite : public Error {
 public:
  UnreachableSite(const SiteId& from, const SiteId& to)
      : Error("no network link between '" + from + "' and '" + to + "'"), from_(from), to_(to) {}
  const SiteId& from() const { return from_; }
  const SiteId& to() const { return to_; }

 private:
  SiteId from_;
  SiteId to_;
};

class DuplicateJob : public Error {
 public:
  explicit DuplicateJob(const JobId& id) : Error("job '" + id + "' is already queued") {}
};

class Unschedulable : public Error {
 public:
  using Error::Error;
};

enum class JobKind { compute_intensive, data_intensive, mixed };

std::string_view to_string(JobKind kind);
JobKind parse_job_kind(std::string_view text);

struct JobSpec {
  JobId job_id;
  UserId user_id;
  units::Mflop compute_demand = 0.0;
  int processors_required = 1;
  units::Bytes data_size = 0.0;
  SiteId data_site;
  units::Seconds submit_time = 0.0;
  JobKind kind = JobKind::compute_intensive;
};

/// Throws ValidationError when the job violates its field invariants.
void validate(const JobSpec& job);

struct UserProfile {
  UserId user_id;
  double quota = 1.0;
};

// Quota lookup keyed by user.
using UserProfiles = std::map<UserId, double>;

/// Value view of a site as seen by the cost model and by peers.
///
/// `local_queue_length` counts jobs allocated to the local resource manager
/// that have not completed yet (waiting or running). `free_nodes` is idle
/// nodes minus nodes already promised to waiting or inbound jobs and may be
/// negative.
struct SiteState {
  SiteId site_id;
  int node_count = 1;
  units::Mflops node_power = 1.0;
  int local_queue_length = 0;
  int diana_queue_length = 0;
  int free_nodes = 1;
  double arrival_rate = 0.0;
  double service_rate = 0.0;
};

void validate(const SiteState& site);

struct NetworkLink {
  SiteId from_site;
  SiteId to_site;
  units::Mbps bandwidth = 1000.0;
  units::Seconds latency = 0.0;
  double background_load = 0.0;
};

void validate(const NetworkLink& link);

/// bandwidth x (1 - background_load)
units::Mbps available_bandwidth(const NetworkLink& link);

/// Symmetric link lookup with an optional default link.
class LinkTable {
 public:
  LinkTable() = default;
  explicit LinkTable(std::optional<NetworkLink> default_link) : default_(std::move(default_link)) {}

  void set_default(std::optional<NetworkLink> link) { default_ = std::move(link); }
  const std::optional<NetworkLink>& default_link() const { return default_; }

  void add(const NetworkLink& link);

  // Returns nullopt when no link (explicit or default) joins the two sites.
  // Querying a site against itself is a caller error; use is_local first.
  std::optional<NetworkLink> find(const SiteId& a, const SiteId& b) const;

  const std::map<std::pair<SiteId, SiteId>, NetworkLink>& explicit_links() const { return links_; }

  // Applies `bandwidth` to the default and every explicit link.
  void set_all_bandwidth(units::Mbps bandwidth);

 private:
  static std::pair<SiteId, SiteId> key(const SiteId& a, const SiteId& b);

  std::optional<NetworkLink> default_;
  std::map<std::pair<SiteId, SiteId>, NetworkLink> links_;
};

}  // namespace diana
