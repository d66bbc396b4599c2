#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "diana/types.hpp"

namespace diana {

/// Quantities that determine the priority of a queued job.
///
///   n  jobs of the job's user across all queues (including the job)
///   t  processors required by the job
///   T  processors required by every queued job (including t)
///   q  the user's quota
///   Q  sum of quotas of distinct users with queued jobs (q counted once)
///   L  total jobs across all queues
struct PriorityInputs {
  long n = 1;
  long t = 1;
  long T = 1;
  double q = 1.0;
  double Q = 1.0;
  long L = 1;

  /// The dynamic threshold N = (q * T) / (Q * t).
  double threshold() const;
};

/// N = (q * T) / (Q * t). Throws DomainError when t or Q is not positive.
double threshold_n(double q, double Q, double t, double T);
double threshold_n(const PriorityInputs& inputs);

/// Two-branch priority rule:
///   n <= N  ->  (N - n) / N
///   n >  N  ->  (N - n) / n
/// The result lies in [-1, 1] and is non-negative iff n <= N.
/// Throws DomainError for n < 1 or N <= 0.
double priority(double n, double threshold);

/// (arrival - service) / arrival, defined as 0 for an idle site.
double congestion_ratio(double arrival_rate, double service_rate);

enum class Discipline { fcfs, sjf, priority_multiqueue };
std::string_view to_string(Discipline d);
Discipline parse_discipline(std::string_view text);

enum class MigrationPolicy { negative_only, lowest_priority };
std::string_view to_string(MigrationPolicy p);
MigrationPolicy parse_migration_policy(std::string_view text);

struct QueueConfig {
  double thrs = 0.3;
  // Descending cut-points; B bands for B + 1 boundaries. Band i holds
  // priorities in [b[i+1], b[i]) and the top band also holds b[0].
  std::vector<double> band_boundaries{1.0, 0.5, 0.0, -0.5, -1.0};
  std::size_t batch_size = 10;
  MigrationPolicy migration_policy = MigrationPolicy::negative_only;
  double migration_cutoff = 0.0;

  std::size_t band_count() const { return band_boundaries.size() - 1; }
  friend bool operator==(const QueueConfig&, const QueueConfig&) = default;
};

void validate(const QueueConfig& config);

/// Strict: ratio > thrs.
bool is_congested(double ratio, const QueueConfig& config);

struct QueuedJob {
  JobId job_id;
  UserId user_id;
  int processors = 1;
  units::Seconds submit_time = 0.0;
  double priority = 0.0;
  std::size_t band = 0;
};

/// Ordering used inside bands: priority descending, then earlier submit,
/// then lexical job id.
bool precedes_by_priority(const QueuedJob& a, const QueuedJob& b);

/// The per-site DIANA queue.
///
/// Every arrival and every removal recomputes all priorities from the current
/// aggregates and re-bins jobs, so the state is a pure function of the queued
/// job set and the user quotas. Dispatch order follows the configured
/// discipline; `bands()` and `priority_order()` always reflect priorities.
class QueueState {
 public:
  explicit QueueState(QueueConfig config = {}, Discipline discipline = Discipline::priority_multiqueue);

  /// Adds `job` and reprioritizes. Returns the priority assigned to the job.
  /// Throws DuplicateJob if the id is queued, ValidationError for an unknown user.
  double enqueue(const JobSpec& job, const UserProfiles& users);

  /// Removes a job (dispatch or migration departure) and reprioritizes.
  std::optional<QueuedJob> remove(const JobId& id, const UserProfiles& users);

  /// Recomputes every priority from the current aggregates. Idempotent.
  void reprioritize(const UserProfiles& users);

  const std::vector<QueuedJob>& dispatch_order() const { return order_; }
  std::vector<QueuedJob> priority_order() const;
  const std::vector<std::vector<QueuedJob>>& bands() const { return bands_; }

  std::optional<QueuedJob> front() const;
  const QueuedJob* find(const JobId& id) const;
  bool contains(const JobId& id) const { return jobs_.count(id) != 0; }

  std::size_t size() const { return jobs_.size(); }
  bool empty() const { return jobs_.empty(); }
  long total_processors() const { return total_processors_; }
  double quota_sum() const { return quota_sum_; }
  long user_jobs(const UserId& user) const;
  const std::map<UserId, long>& per_user_counts() const { return per_user_; }

  /// Priority inputs for a queued job under the current aggregates.
  PriorityInputs inputs_for(const QueuedJob& job, const UserProfiles& users) const;

  const QueueConfig& config() const { return config_; }
  Discipline discipline() const { return discipline_; }

 private:
  std::size_t band_of(double priority) const;
  void refresh_quota_sum(const UserProfiles& users);

  QueueConfig config_;
  Discipline discipline_;
  std::map<JobId, QueuedJob> jobs_;
  std::map<UserId, long> per_user_;
  long total_processors_ = 0;
  double quota_sum_ = 0.0;
  std::vector<std::vector<QueuedJob>> bands_;
  std::vector<QueuedJob> order_;
};

double quota_of(const UserProfiles& users, const UserId& user);

/// Up to `batch_size` ids from the tail of the priority order (lowest first).
/// With MigrationPolicy::negative_only only jobs below the cutoff qualify.
/// `eligible`, when set, filters jobs further (e.g. a migration hop limit).
std::vector<JobId> migration_candidates(const QueueState& state, std::size_t batch_size,
                                        MigrationPolicy policy = MigrationPolicy::negative_only,
                                        double cutoff = 0.0,
                                        const std::function<bool(const QueuedJob&)>& eligible = {});

}  // namespace diana
