#include "diana/queue_engine.hpp"

#include <algorithm>
#include <cmath>

namespace diana {

double PriorityInputs::threshold() const { return threshold_n(q, Q, static_cast<double>(t), static_cast<double>(T)); }

double threshold_n(double q, double Q, double t, double T) {
  if (!(t > 0.0)) throw DomainError("threshold N: processor count t must be positive");
  if (!(Q > 0.0)) throw DomainError("threshold N: quota sum Q must be positive");
  return (q * T) / (Q * t);
}

double threshold_n(const PriorityInputs& in) { return in.threshold(); }

double priority(double n, double threshold) {
  if (!(n >= 1.0)) throw DomainError("priority: job count n must be >= 1");
  if (!(threshold > 0.0)) throw DomainError("priority: threshold N must be positive");
  if (n <= threshold) return (threshold - n) / threshold;
  return (threshold - n) / n;
}

double congestion_ratio(double arrival_rate, double service_rate) {
  if (arrival_rate <= 0.0) return 0.0;
  return (arrival_rate - service_rate) / arrival_rate;
}

bool is_congested(double ratio, const QueueConfig& config) { return ratio > config.thrs; }

std::string_view to_string(Discipline d) {
  switch (d) {
    case Discipline::fcfs:
      return "fcfs";
    case Discipline::sjf:
      return "sjf";
    case Discipline::priority_multiqueue:
      return "priority_multiqueue";
  }
  return "fcfs";
}

Discipline parse_discipline(std::string_view text) {
  if (text == "fcfs") return Discipline::fcfs;
  if (text == "sjf") return Discipline::sjf;
  if (text == "priority_multiqueue" || text == "priority") return Discipline::priority_multiqueue;
  throw ValidationError("unknown queue discipline '" + std::string(text) +
                        "' (expected fcfs, sjf or priority_multiqueue)");
}

std::string_view to_string(MigrationPolicy p) {
  return p == MigrationPolicy::negative_only ? "negative_only" : "lowest_priority";
}

MigrationPolicy parse_migration_policy(std::string_view text) {
  if (text == "negative_only") return MigrationPolicy::negative_only;
  if (text == "lowest_priority") return MigrationPolicy::lowest_priority;
  throw ValidationError("unknown migration policy '" + std::string(text) +
                        "' (expected negative_only or lowest_priority)");
}

void validate(const QueueConfig& c) {
  if (!(c.thrs >= 0.0 && c.thrs <= 1.0)) throw ValidationError("thrs must lie in [0, 1]");
  const auto& b = c.band_boundaries;
  if (b.size() < 2) throw ValidationError("bands: need at least two boundaries");
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] < -1.0 || b[i] > 1.0) throw ValidationError("bands: boundaries must lie in [-1, 1]");
    if (i > 0 && !(b[i] < b[i - 1])) throw ValidationError("bands: boundaries must be strictly descending");
  }
  if (c.batch_size < 1) throw ValidationError("batch_size must be >= 1");
}

bool precedes_by_priority(const QueuedJob& a, const QueuedJob& b) {
  if (a.priority != b.priority) return a.priority > b.priority;
  if (a.submit_time != b.submit_time) return a.submit_time < b.submit_time;
  return a.job_id < b.job_id;
}

namespace {

bool precedes_fcfs(const QueuedJob& a, const QueuedJob& b) {
  if (a.submit_time != b.submit_time) return a.submit_time < b.submit_time;
  return a.job_id < b.job_id;
}

bool precedes_sjf(const QueuedJob& a, const QueuedJob& b) {
  if (a.processors != b.processors) return a.processors < b.processors;
  return precedes_fcfs(a, b);
}

}  // namespace

double quota_of(const UserProfiles& users, const UserId& user) {
  auto it = users.find(user);
  if (it == users.end()) throw ValidationError("unknown user '" + user + "'");
  return it->second;
}

QueueState::QueueState(QueueConfig config, Discipline discipline)
    : config_(std::move(config)), discipline_(discipline), bands_(config_.band_count()) {
  validate(config_);
}

long QueueState::user_jobs(const UserId& user) const {
  auto it = per_user_.find(user);
  return it == per_user_.end() ? 0 : it->second;
}

std::size_t QueueState::band_of(double p) const {
  const auto& b = config_.band_boundaries;
  for (std::size_t i = 0; i + 1 < b.size(); ++i)
    if (p >= b[i + 1]) return i;
  return config_.band_count() - 1;
}

void QueueState::refresh_quota_sum(const UserProfiles& users) {
  quota_sum_ = 0.0;
  for (const auto& [user, count] : per_user_) quota_sum_ += quota_of(users, user);
}

double QueueState::enqueue(const JobSpec& job, const UserProfiles& users) {
  validate(job);
  if (jobs_.count(job.job_id)) throw DuplicateJob(job.job_id);
  quota_of(users, job.user_id);

  QueuedJob entry;
  entry.job_id = job.job_id;
  entry.user_id = job.user_id;
  entry.processors = job.processors_required;
  entry.submit_time = job.submit_time;
  jobs_.emplace(job.job_id, entry);
  ++per_user_[job.user_id];
  total_processors_ += job.processors_required;

  reprioritize(users);
  return jobs_.at(job.job_id).priority;
}

std::optional<QueuedJob> QueueState::remove(const JobId& id, const UserProfiles& users) {
  auto it = jobs_.find(id);
  if (it == jobs_.end()) return std::nullopt;
  QueuedJob out = it->second;
  jobs_.erase(it);
  if (--per_user_[out.user_id] == 0) per_user_.erase(out.user_id);
  total_processors_ -= out.processors;
  reprioritize(users);
  return out;
}

PriorityInputs QueueState::inputs_for(const QueuedJob& job, const UserProfiles& users) const {
  PriorityInputs in;
  in.n = user_jobs(job.user_id);
  in.t = job.processors;
  in.T = total_processors_;
  in.q = quota_of(users, job.user_id);
  in.Q = quota_sum_;
  in.L = static_cast<long>(jobs_.size());
  return in;
}

void QueueState::reprioritize(const UserProfiles& users) {
  refresh_quota_sum(users);
  for (auto& band : bands_) band.clear();
  order_.clear();
  order_.reserve(jobs_.size());

  for (auto& [id, job] : jobs_) {
    const PriorityInputs in = inputs_for(job, users);
    job.priority = priority(static_cast<double>(in.n), in.threshold());
    job.band = band_of(job.priority);
    order_.push_back(job);
  }

  std::vector<QueuedJob> by_priority = order_;
  std::sort(by_priority.begin(), by_priority.end(), precedes_by_priority);
  for (const auto& job : by_priority) bands_[job.band].push_back(job);

  switch (discipline_) {
    case Discipline::priority_multiqueue:
      order_ = std::move(by_priority);
      break;
    case Discipline::fcfs:
      std::sort(order_.begin(), order_.end(), precedes_fcfs);
      break;
    case Discipline::sjf:
      std::sort(order_.begin(), order_.end(), precedes_sjf);
      break;
  }
}

std::vector<QueuedJob> QueueState::priority_order() const {
  std::vector<QueuedJob> out;
  out.reserve(jobs_.size());
  for (const auto& band : bands_) out.insert(out.end(), band.begin(), band.end());
  return out;
}

std::optional<QueuedJob> QueueState::front() const {
  if (order_.empty()) return std::nullopt;
  return order_.front();
}

const QueuedJob* QueueState::find(const JobId& id) const {
  auto it = jobs_.find(id);
  return it == jobs_.end() ? nullptr : &it->second;
}

std::vector<JobId> migration_candidates(const QueueState& state, std::size_t batch_size, MigrationPolicy policy,
                                        double cutoff, const std::function<bool(const QueuedJob&)>& eligible) {
  std::vector<JobId> out;
  if (batch_size == 0) return out;
  const auto order = state.priority_order();
  for (auto it = order.rbegin(); it != order.rend() && out.size() < batch_size; ++it) {
    if (policy == MigrationPolicy::negative_only && !(it->priority < cutoff)) break;
    if (eligible && !eligible(*it)) continue;
    out.push_back(it->job_id);
  }
  return out;
}

}  // namespace diana
