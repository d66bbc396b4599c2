#include "diana/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "diana/baselines.hpp"
#include "diana/discovery.hpp"
#include "diana/local_scheduler.hpp"
#include "diana/scheduler.hpp"

namespace diana {

std::string_view to_string(JobStatus s) {
  switch (s) {
    case JobStatus::pending:
      return "pending";
    case JobStatus::completed:
      return "completed";
    case JobStatus::failed_unreachable:
      return "failed_unreachable";
    case JobStatus::rejected_unschedulable:
      return "rejected_unschedulable";
  }
  return "pending";
}

JobStatus parse_job_status(std::string_view text) {
  for (auto s : {JobStatus::pending, JobStatus::completed, JobStatus::failed_unreachable,
                 JobStatus::rejected_unschedulable})
    if (text == to_string(s)) return s;
  throw ValidationError("unknown job status '" + std::string(text) + "'");
}

namespace {

enum class Ev {
  job_submit,
  diana_dispatch,
  transfer_complete,
  local_dispatch,
  job_complete,
  callback,
  poll_tick,
  echo_tick,
  echo_deadline,
  congestion_check,
  migration,
  failure,
};

struct Event {
  double time = 0.0;
  std::uint64_t seq = 0;
  Ev kind = Ev::job_submit;
  int site = -1;
  int job = -1;
  int aux = -1;
};

struct Later {
  bool operator()(const Event& a, const Event& b) const { return std::tie(a.time, a.seq) > std::tie(b.time, b.seq); }
};

struct JobRt {
  JobSpec spec;  // data_site follows the data as the job moves
  int origin = 0;
  int dispatcher = -1;
  int migrations = 0;
  bool allocated = false;
  double runtime = 0.0;
  JobMetrics m;
};

struct SiteRt {
  SiteRt(SiteSpec s, LocalScheduler l, QueueState q) : spec(std::move(s)), local(std::move(l)), queue(std::move(q)) {}

  SiteSpec spec;
  LocalScheduler local;
  QueueState queue;
  bool up = true;
  int inbound_nodes = 0;
  int inbound_jobs = 0;
  double arrival_rate = 0.0;
  double service_rate = 0.0;
  int window_arrivals = 0;
  int window_completions = 0;
  std::map<SiteId, PeerSnapshot> cache;
  double last_poll = -std::numeric_limits<double>::infinity();
  bool dispatch_pending = false;
  bool local_pending = false;
  std::size_t rr_cursor = 0;
  double busy = 0.0;
  int jobs_run = 0;
};

struct EchoPending {
  EchoRound round;
  std::set<SiteId> responders;
};

class Simulation {
 public:
  Simulation(const Scenario& s, const std::vector<WorkloadJob>& jobs, const RunOptions& options)
      : scenario_(s),
        options_(options),
        kind_(s.scheduler.kind),
        cfg_(s.scheduler.diana),
        users_(s.user_profiles()),
        links_(s.link_table()),
        registry_(s.discovery) {
    const Discipline local_discipline = kind_ == SchedulerKind::diana ? Discipline::fcfs : s.scheduler.queue;
    const Discipline diana_discipline = kind_ == SchedulerKind::diana ? s.scheduler.queue : Discipline::fcfs;
    for (const auto& spec : s.resolved_sites()) {
      site_index_[spec.id] = static_cast<int>(sites_.size());
      sites_.emplace_back(spec, LocalScheduler(spec.id, spec.nodes, spec.power, local_discipline),
                          QueueState(s.queue, diana_discipline));
    }
    for (const auto& w : jobs) {
      JobRt j;
      j.spec = w.job;
      j.origin = site_index_.at(w.origin);
      j.m.job_id = w.job.job_id;
      j.m.user = w.job.user_id;
      j.m.submit = w.job.submit_time;
      job_index_[w.job.job_id] = static_cast<int>(jobs_.size());
      jobs_.push_back(std::move(j));
    }
    hash_ = workload_hash(jobs);
  }

  RunMetrics run() {
    remaining_ = jobs_.size();
    if (!jobs_.empty() || !scenario_.failures.empty()) start();
    while (!events_.empty()) {
      Event e = events_.top();
      if (e.time > scenario_.duration_cap) break;
      events_.pop();
      now_ = e.time;
      handle(e);
    }
    return finish();
  }

 private:
  bool diana() const { return kind_ == SchedulerKind::diana; }
  bool active() const { return remaining_ > 0 || pending_failures_ > 0; }

  void push(double time, Ev kind, int site = -1, int job = -1, int aux = -1) {
    events_.push(Event{time, seq_++, kind, site, job, aux});
  }

  void trace(std::string_view kind, const JobId& job = {}, const SiteId& site = {}, const SiteId& peer = {},
             double value = 0.0) {
    auto mix = [this](std::string_view s) {
      for (unsigned char c : s) {
        trace_hash_ ^= c;
        trace_hash_ *= 1099511628211ULL;
      }
      trace_hash_ ^= 0x1f;
      trace_hash_ *= 1099511628211ULL;
    };
    char buf[32];
    mix(std::string_view(buf, static_cast<std::size_t>(std::to_chars(buf, buf + 32, now_).ptr - buf)));
    mix(kind);
    mix(job);
    mix(site);
    mix(peer);
    mix(std::string_view(buf, static_cast<std::size_t>(std::to_chars(buf, buf + 32, value).ptr - buf)));
    if (options_.record_trace) trace_.push_back({now_, std::string(kind), job, site, peer, value});
  }

  void start() {
    if (diana()) {
      for (const auto& s : sites_) {
        registry_.register_peer(s.spec.id, 0.0);
        ++discovery_extra_;
        trace("register", {}, s.spec.id);
      }
    }
    for (std::size_t j = 0; j < jobs_.size(); ++j) push(jobs_[j].spec.submit_time, Ev::job_submit, -1, static_cast<int>(j));
    for (std::size_t i = 0; i < scenario_.failures.size(); ++i) {
      push(scenario_.failures[i].time, Ev::failure, site_index_.at(scenario_.failures[i].site), -1, static_cast<int>(i));
      ++pending_failures_;
    }
    if (diana()) {
      if (cfg_.placement == Placement::cost) push(cfg_.poll_interval, Ev::poll_tick);
      push(scenario_.discovery.echo_interval, Ev::echo_tick);
      push(scenario_.rates.window, Ev::congestion_check);
    }
  }

  void handle(const Event& e) {
    switch (e.kind) {
      case Ev::job_submit:
        submit(e.job);
        break;
      case Ev::diana_dispatch:
        dispatch_pass(e.site);
        break;
      case Ev::transfer_complete:
        arrive_local(e.site, e.job);
        break;
      case Ev::local_dispatch:
        local_dispatch(e.site);
        break;
      case Ev::job_complete:
        complete(e.site, e.job);
        break;
      case Ev::callback:
        callback(e.site, e.aux, e.job);
        break;
      case Ev::poll_tick:
        poll_tick();
        break;
      case Ev::echo_tick:
        echo_tick();
        break;
      case Ev::echo_deadline:
        echo_deadline(e.aux);
        break;
      case Ev::congestion_check:
        congestion_check();
        break;
      case Ev::migration:
        arrive_diana(e.site, e.job);
        request_dispatch(e.site);
        break;
      case Ev::failure:
        failure(e.site, e.aux);
        break;
    }
  }

  // -- views ---------------------------------------------------------------

  SiteState state_of(const SiteRt& s) const {
    SiteState st;
    st.site_id = s.spec.id;
    st.node_count = s.spec.nodes;
    st.node_power = s.spec.power;
    st.local_queue_length = s.local.allocated_count() + s.inbound_jobs;
    st.diana_queue_length = static_cast<int>(s.queue.size());
    st.free_nodes = s.local.idle_nodes() - s.local.waiting_demand() - s.inbound_nodes;
    st.arrival_rate = s.arrival_rate;
    st.service_rate = s.service_rate;
    return st;
  }

  PeerSnapshot snapshot_of(const SiteRt& s, std::optional<double> probe) const {
    PeerSnapshot snap;
    snap.site = state_of(s);
    snap.queue_length = static_cast<int>(s.queue.size()) + s.local.allocated_count() + s.inbound_jobs;
    snap.jobs_ahead = probe ? static_cast<int>(jobs_ahead(*probe, s.queue)) : 0;
    snap.snapshot_time = now_;
    return snap;
  }

  bool reachable(const SiteId& data_site, const SiteId& site) const {
    return data_site == site || links_.find(data_site, site).has_value();
  }

  // -- job lifecycle -------------------------------------------------------

  void terminate(int j, JobStatus status) {
    jobs_[j].m.status = status;
    --remaining_;
    trace(to_string(status), jobs_[j].spec.job_id);
  }

  void submit(int j) {
    JobRt& job = jobs_[j];
    SiteRt& origin = sites_[job.origin];
    const int t = job.spec.processors_required;
    trace("submit", job.spec.job_id, origin.spec.id);

    bool fits = false;
    bool can_reach = false;
    for (const auto& s : sites_) {
      if (s.spec.nodes < t) continue;
      fits = true;
      if (reachable(job.spec.data_site, s.spec.id)) can_reach = true;
    }
    if (diana() && cfg_.placement == Placement::local) {
      fits = origin.spec.nodes >= t;
      can_reach = reachable(job.spec.data_site, origin.spec.id);
    }
    if (!fits) return terminate(j, JobStatus::rejected_unschedulable);

    if (diana()) {
      if (!can_reach) return terminate(j, JobStatus::failed_unreachable);
      arrive_diana(job.origin, j);
      if (cfg_.placement == Placement::cost && now_ - origin.last_poll >= cfg_.poll_interval) poll(job.origin, {});
      request_dispatch(job.origin);
      return;
    }

    int target = -1;
    if (kind_ == SchedulerKind::round_robin) {
      std::vector<SiteId> ids;
      for (const auto& s : sites_) ids.push_back(s.spec.id);
      for (std::size_t tries = 0; tries < ids.size(); ++tries) {
        auto [site, next] = rr_schedule(job.spec, ids, origin.rr_cursor);
        origin.rr_cursor = next;
        if (sites_[site_index_.at(site)].spec.nodes >= t) {
          target = site_index_.at(site);
          break;
        }
      }
    } else {
      std::vector<SiteState> states;
      for (const auto& s : sites_) {
        SiteState st = state_of(s);
        st.free_nodes = s.local.idle_nodes();  // what a direct query sees right now
        states.push_back(st);
      }
      target = site_index_.at(flop_schedule(job.spec, states, messages_));
    }
    send(j, target, job.origin);
  }

  void arrive_diana(int s, int j) {
    SiteRt& site = sites_[s];
    const double pr = site.queue.enqueue(jobs_[j].spec, users_);
    ++site.window_arrivals;
    trace("enqueue", jobs_[j].spec.job_id, site.spec.id, {}, pr);
  }

  // Binds a job to `target`'s local resource manager, moving its data first.
  void send(int j, int target, int dispatcher) {
    JobRt& job = jobs_[j];
    SiteRt& site = sites_[target];
    if (job.allocated) throw Error("job '" + job.spec.job_id + "' moved after allocation");
    double tt = 0.0;
    if (job.spec.data_site != site.spec.id) {
      auto link = links_.find(job.spec.data_site, site.spec.id);
      if (!link) return terminate(j, JobStatus::failed_unreachable);
      tt = transfer_cost(job.spec, job.spec.data_site, site.spec.id, link);
    }
    job.dispatcher = dispatcher;
    job.m.scheduled = now_;
    job.m.transfer_time += tt;
    job.spec.data_site = site.spec.id;
    site.inbound_nodes += job.spec.processors_required;
    ++site.inbound_jobs;
    trace("dispatch", job.spec.job_id, sites_[dispatcher].spec.id, site.spec.id, tt);
    push(now_ + tt, Ev::transfer_complete, target, j);
  }

  void arrive_local(int s, int j) {
    SiteRt& site = sites_[s];
    JobRt& job = jobs_[j];
    site.inbound_nodes -= job.spec.processors_required;
    --site.inbound_jobs;
    site.local.allocate(job.spec);
    job.allocated = true;
    job.m.site = site.spec.id;
    trace("allocate", job.spec.job_id, site.spec.id);
    request_local(s);
  }

  void local_dispatch(int s) {
    SiteRt& site = sites_[s];
    site.local_pending = false;
    for (const auto& spec : site.local.dispatch()) {
      const int j = job_index_.at(spec.job_id);
      JobRt& job = jobs_[j];
      job.m.started = now_;
      job.runtime = site.local.runtime(spec);
      trace("start", spec.job_id, site.spec.id);
      push(now_ + job.runtime, Ev::job_complete, s, j);
    }
  }

  void complete(int s, int j) {
    SiteRt& site = sites_[s];
    JobRt& job = jobs_[j];
    site.local.release(job.spec);
    site.busy += job.runtime * job.spec.processors_required;
    ++site.jobs_run;
    ++site.window_completions;
    job.m.completed = now_;
    job.m.status = JobStatus::completed;
    --remaining_;
    trace("complete", job.spec.job_id, site.spec.id);
    request_local(s);
    if (!diana()) return;
    request_dispatch(s);
    if (job.dispatcher >= 0 && job.dispatcher != s) {
      ++messages_;
      push(now_, Ev::callback, job.dispatcher, j, s);
    }
  }

  void callback(int d, int from, int j) {
    SiteRt& site = sites_[d];
    auto it = site.cache.find(sites_[from].spec.id);
    if (it != site.cache.end()) {
      it->second.site.free_nodes += jobs_[j].spec.processors_required;
      it->second.site.local_queue_length = std::max(0, it->second.site.local_queue_length - 1);
    }
    request_dispatch(d);
  }

  void request_dispatch(int s) {
    if (sites_[s].dispatch_pending) return;
    sites_[s].dispatch_pending = true;
    push(now_, Ev::diana_dispatch, s);
  }

  void request_local(int s) {
    if (sites_[s].local_pending) return;
    sites_[s].local_pending = true;
    push(now_, Ev::local_dispatch, s);
  }

  // -- DIANA ---------------------------------------------------------------

  std::vector<PeerSnapshot> poll(int s, std::optional<double> probe) {
    SiteRt& site = sites_[s];
    const auto peers = registry_.list_peers(site.spec.id);
    discovery_extra_ += 2;
    auto respond = [&](const SiteId& id) -> std::optional<PeerSnapshot> {
      const SiteRt& peer = sites_[site_index_.at(id)];
      if (!peer.up) return std::nullopt;
      return snapshot_of(peer, probe);
    };
    auto snaps = poll_peers(site.spec.id, peers, respond, now_, messages_);
    site.cache.clear();
    for (const auto& snap : snaps) site.cache[snap.site.site_id] = snap;
    site.last_poll = now_;
    trace("poll", {}, site.spec.id, {}, static_cast<double>(snaps.size()));
    return snaps;
  }

  void dispatch_pass(int s) {
    SiteRt& site = sites_[s];
    site.dispatch_pending = false;
    while (!site.queue.empty()) {
      const QueuedJob head = site.queue.dispatch_order().front();
      const int j = job_index_.at(head.job_id);
      JobRt& job = jobs_[j];
      const int t = job.spec.processors_required;

      std::vector<SiteState> candidates;
      const SiteState local = state_of(site);
      if (local.free_nodes >= t) candidates.push_back(local);
      if (cfg_.placement == Placement::cost && job.migrations == 0) {
        for (const auto& [id, snap] : site.cache) {
          if (now_ - snap.snapshot_time > 2.0 * cfg_.poll_interval || !registry_.is_alive(id)) continue;
          if (snap.site.free_nodes >= t) candidates.push_back(snap.site);
        }
      }
      if (candidates.empty()) break;
      SchedulingDecision decision;
      try {
        decision = select_site(job.spec, candidates, links_, cfg_);
      } catch (const Unschedulable&) {
        break;
      }
      const int target = site_index_.at(decision.chosen_site);
      if (target != s && !sites_[target].up) {
        // the request goes unanswered; forget the peer and try again
        ++messages_;
        site.cache.erase(decision.chosen_site);
        trace("dead_target", job.spec.job_id, site.spec.id, decision.chosen_site);
        continue;
      }
      site.queue.remove(head.job_id, users_);
      if (target != s) {
        auto& cached = site.cache.at(decision.chosen_site).site;
        cached.free_nodes -= t;
        ++cached.local_queue_length;
      }
      send(j, target, s);
    }
  }

  void poll_tick() {
    for (std::size_t s = 0; s < sites_.size(); ++s) {
      SiteRt& site = sites_[s];
      if (site.queue.empty() || now_ - site.last_poll < cfg_.poll_interval) continue;
      poll(static_cast<int>(s), {});
      request_dispatch(static_cast<int>(s));
    }
    if (active()) push(now_ + cfg_.poll_interval, Ev::poll_tick);
  }

  void congestion_check() {
    const double alpha = scenario_.rates.alpha;
    const double window = scenario_.rates.window;
    for (std::size_t s = 0; s < sites_.size(); ++s) {
      SiteRt& site = sites_[s];
      site.arrival_rate = alpha * site.window_arrivals / window + (1.0 - alpha) * site.arrival_rate;
      site.service_rate = alpha * site.window_completions / window + (1.0 - alpha) * site.service_rate;
      site.window_arrivals = 0;
      site.window_completions = 0;
      if (!cfg_.migration || site.queue.empty()) continue;
      if (!is_congested(congestion_ratio(site.arrival_rate, site.service_rate), scenario_.queue)) continue;
      migrate(static_cast<int>(s));
    }
    if (active()) push(now_ + window, Ev::congestion_check);
  }

  void migrate(int s) {
    SiteRt& site = sites_[s];
    const auto ids = migration_candidates(
        site.queue, scenario_.queue.batch_size, scenario_.queue.migration_policy, scenario_.queue.migration_cutoff,
        [&](const QueuedJob& q) { return jobs_[job_index_.at(q.job_id)].migrations < cfg_.max_migrations; });
    if (ids.empty()) return;

    std::vector<JobSpec> batch;
    double probe = -std::numeric_limits<double>::infinity();
    for (const auto& id : ids) {
      batch.push_back(jobs_[job_index_.at(id)].spec);
      probe = std::max(probe, site.queue.find(id)->priority);
    }
    const auto snaps = poll(s, probe);

    PeerSnapshot local = snapshot_of(site, probe);
    local.total_cost = batch_cost(batch, local.site, links_, cfg_).value_or(std::numeric_limits<double>::infinity());
    std::vector<PeerSnapshot> peers;
    for (auto snap : snaps) {
      if (!registry_.is_alive(snap.site.site_id)) continue;
      auto cost = batch_cost(batch, snap.site, links_, cfg_);
      if (!cost) continue;
      snap.total_cost = *cost;
      peers.push_back(std::move(snap));
    }
    const MigrationDecision decision = migrate_batch(batch, local, peers, links_, cfg_);
    if (!decision.exported) {
      trace("stay", {}, site.spec.id, {}, static_cast<double>(batch.size()));
      return;
    }

    ++migration_episodes_;
    const int target = site_index_.at(decision.target);
    for (const auto& id : ids) {
      const int j = job_index_.at(id);
      JobRt& job = jobs_[j];
      if (job.allocated) throw Error("job '" + id + "' migrated after allocation");
      const double pr = site.queue.find(id)->priority;
      site.queue.remove(id, users_);
      ++job.migrations;
      double tt = 0.0;
      if (job.spec.data_site != decision.target)
        tt = transfer_cost(job.spec, job.spec.data_site, decision.target,
                           links_.find(job.spec.data_site, decision.target));
      job.m.transfer_time += tt;
      job.spec.data_site = decision.target;
      trace("migrate", id, site.spec.id, decision.target, pr);
      push(now_ + tt, Ev::migration, target, j);
    }
  }

  // -- discovery -----------------------------------------------------------

  void echo_tick() {
    EchoPending pending;
    pending.round = registry_.begin_sweep(now_);
    for (const auto& id : pending.round.targets)
      if (sites_[site_index_.at(id)].up) pending.responders.insert(id);
    trace("echo", {}, {}, {}, static_cast<double>(pending.responders.size()));
    echoes_.push_back(std::move(pending));
    push(now_ + scenario_.discovery.echo_timeout, Ev::echo_deadline, -1, -1, static_cast<int>(echoes_.size() - 1));
    if (active()) push(now_ + scenario_.discovery.echo_interval, Ev::echo_tick);
  }

  void echo_deadline(int round) {
    const auto& pending = echoes_[static_cast<std::size_t>(round)];
    for (const auto& id : registry_.complete_sweep(pending.round, now_, pending.responders))
      trace("peer_removed", {}, id);
  }

  void failure(int s, int index) {
    SiteRt& site = sites_[s];
    const auto action = scenario_.failures[static_cast<std::size_t>(index)].action;
    --pending_failures_;
    switch (action) {
      case FailureAction::crash:
        site.up = false;
        break;
      case FailureAction::shutdown:
        site.up = false;
        if (diana()) {
          registry_.deregister(site.spec.id, now_);
          ++discovery_extra_;
        }
        break;
      case FailureAction::recover:
        site.up = true;
        if (diana()) {
          registry_.register_peer(site.spec.id, now_);
          ++discovery_extra_;
        }
        break;
    }
    trace(to_string(action), {}, site.spec.id);
  }

  // -- results -------------------------------------------------------------

  RunMetrics finish() {
    RunMetrics out;
    for (auto& job : jobs_) {
      JobMetrics m = job.m;
      m.migrations = job.migrations;
      if (m.status == JobStatus::completed) {
        m.queue_time = std::max(0.0, *m.started - m.submit - m.transfer_time);
        m.exec_time = *m.completed - m.submit;
      }
      out.jobs.push_back(std::move(m));
    }
    double makespan = 0.0;
    for (const auto& m : out.jobs)
      if (m.completed) makespan = std::max(makespan, *m.completed);
    for (const auto& s : sites_) {
      SiteMetrics sm;
      sm.site = s.spec.id;
      sm.nodes = s.spec.nodes;
      sm.busy_node_seconds = s.busy;
      sm.utilization = makespan > 0.0 ? s.busy / (s.spec.nodes * makespan) : 0.0;
      sm.jobs_run = s.jobs_run;
      out.sites.push_back(sm);
    }
    auto& sum = out.summary;
    sum.label = options_.label.empty() ? scenario_.name : options_.label;
    sum.scheduler = std::string(to_string(kind_));
    sum.queue = std::string(to_string(scenario_.scheduler.queue));
    sum.discovery_messages = registry_.messages() + discovery_extra_;
    sum.message_count = messages_ + sum.discovery_messages;
    sum.migration_episodes = migration_episodes_;
    sum.workload_hash = hash_hex(hash_);
    summarize(out);
    out.trace = std::move(trace_);
    out.trace_hash = trace_hash_;
    return out;
  }

  const Scenario& scenario_;
  RunOptions options_;
  SchedulerKind kind_;
  DianaConfig cfg_;
  UserProfiles users_;
  LinkTable links_;
  PeerRegistry registry_;
  std::vector<SiteRt> sites_;
  std::map<SiteId, int> site_index_;
  std::vector<JobRt> jobs_;
  std::map<JobId, int> job_index_;
  std::priority_queue<Event, std::vector<Event>, Later> events_;
  std::vector<EchoPending> echoes_;
  std::vector<TraceEvent> trace_;
  std::uint64_t trace_hash_ = 1469598103934665603ULL;
  std::uint64_t hash_ = 0;
  std::uint64_t seq_ = 0;
  std::uint64_t messages_ = 0;
  std::uint64_t discovery_extra_ = 0;
  std::size_t remaining_ = 0;
  int pending_failures_ = 0;
  int migration_episodes_ = 0;
  double now_ = 0.0;
};

void check_jobs(const Scenario& s, const std::vector<WorkloadJob>& jobs) {
  std::set<SiteId> sites;
  for (const auto& site : s.resolved_sites()) sites.insert(site.id);
  std::set<SiteId> endpoints = sites;
  endpoints.insert(s.storage.begin(), s.storage.end());
  const auto users = s.user_profiles();
  std::set<JobId> ids;
  for (const auto& w : jobs) {
    validate(w.job);
    if (!ids.insert(w.job.job_id).second) throw DuplicateJob(w.job.job_id);
    if (!sites.count(w.origin)) throw ValidationError("job '" + w.job.job_id + "': unknown origin '" + w.origin + "'");
    if (!endpoints.count(w.job.data_site))
      throw ValidationError("job '" + w.job.job_id + "': unknown data site '" + w.job.data_site + "'");
    if (s.scheduler.kind == SchedulerKind::diana && !users.count(w.job.user_id))
      throw ValidationError("job '" + w.job.job_id + "': unknown user '" + w.job.user_id + "'");
  }
}

}  // namespace

void summarize(RunMetrics& metrics) {
  auto& sum = metrics.summary;
  sum.sites = static_cast<int>(metrics.sites.size());
  sum.jobs = static_cast<int>(metrics.jobs.size());
  sum.completed = sum.failed_unreachable = sum.rejected_unschedulable = sum.migrations = 0;
  sum.total_exec_time = sum.total_queue_time = sum.makespan = 0.0;
  double transfer = 0.0;
  for (const auto& m : metrics.jobs) {
    sum.migrations += m.migrations;
    switch (m.status) {
      case JobStatus::completed:
        ++sum.completed;
        sum.total_exec_time += *m.exec_time;
        sum.total_queue_time += *m.queue_time;
        transfer += m.transfer_time;
        sum.makespan = std::max(sum.makespan, *m.completed);
        break;
      case JobStatus::failed_unreachable:
        ++sum.failed_unreachable;
        break;
      case JobStatus::rejected_unschedulable:
        ++sum.rejected_unschedulable;
        break;
      case JobStatus::pending:
        break;
    }
  }
  const double n = sum.completed > 0 ? sum.completed : 1.0;
  sum.mean_exec_time = sum.total_exec_time / n;
  sum.mean_queue_time = sum.total_queue_time / n;
  sum.mean_transfer_time = transfer / n;
  sum.messages_per_job = sum.jobs > 0 ? static_cast<double>(sum.message_count) / sum.jobs : 0.0;
  double util = 0.0;
  for (const auto& s : metrics.sites) util += s.utilization;
  sum.mean_utilization = metrics.sites.empty() ? 0.0 : util / static_cast<double>(metrics.sites.size());
}

RunMetrics run_jobs(const Scenario& scenario, const std::vector<WorkloadJob>& jobs, const RunOptions& options) {
  validate(scenario);
  check_jobs(scenario, jobs);
  Simulation sim(scenario, jobs, options);
  return sim.run();
}

RunMetrics run(const Scenario& scenario, std::uint64_t seed, const RunOptions& options) {
  validate(scenario);
  return run_jobs(scenario, generate_workload(scenario, seed), options);
}

}  // namespace diana
