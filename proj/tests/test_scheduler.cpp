#include <doctest.h>

#include <algorithm>
#include <random>
#include <tuple>

#include "diana/scheduler.hpp"
#include "helpers.hpp"

using namespace diana;
using testing_helpers::job;
using testing_helpers::link;
using testing_helpers::site;

namespace {

PeerSnapshot snap(const std::string& id, int queue, double cost, int ahead = 0) {
  PeerSnapshot p;
  p.site = site(id, 4);
  p.queue_length = queue;
  p.jobs_ahead = ahead;
  p.total_cost = cost;
  return p;
}

}  // namespace

TEST_CASE("classify uses the declared kind") {
  JobSpec j = job("j");
  CHECK(classify(j) == CostWeights{1, 0.25, 0.25});
  j.kind = JobKind::mixed;
  CHECK(classify(j) == CostWeights{1, 1, 1});
  j.kind = JobKind::data_intensive;
  j.data_size = 0;
  CHECK(classify(j) == CostWeights{0.25, 1, 1});
}

TEST_CASE("schedule picks the cheapest site") {
  LinkTable links(link("", "", 1000));
  DianaConfig cfg;
  JobSpec j = job("j", "u", 1, 0, 10);
  j.data_site = "local";
  CHECK(schedule(j, site("local"), {}, links, cfg).chosen_site == "local");

  // totals set through the compute term: local 83, A 40, B 90 (weights 1,0,0)
  cfg.weights.compute_intensive = {1, 0, 0};
  JobSpec k = job("k", "u", 1, 0, 1);
  k.data_site = "local";
  std::vector<PeerSnapshot> peers{snap("A", 0, 0), snap("B", 0, 0)};
  peers[0].site.node_power = 1.0 / 40;
  peers[1].site.node_power = 1.0 / 90;
  SiteState local = site("local", 1, 1.0 / 83);
  const auto d = schedule(k, local, peers, links, cfg);
  CHECK(d.chosen_site == "A");
  CHECK(d.alternatives.size() == 3);
  CHECK(d.cost.total == doctest::Approx(40.0));
}

TEST_CASE("data-intensive jobs go where the data is") {
  LinkTable links(link("", "", 100));
  DianaConfig cfg;
  JobSpec j = job("j", "u", 1, 0, 5);
  j.kind = JobKind::data_intensive;
  j.data_size = units::gigabytes(1);
  j.data_site = "X";
  std::vector<SiteState> sites{site("W"), site("X"), site("Y"), site("Z")};
  CHECK(select_site(j, sites, links, cfg).chosen_site == "X");
}

TEST_CASE("ties break by queued jobs then site id") {
  LinkTable links(link("", "", 1000));
  DianaConfig cfg;
  JobSpec j = job("j", "u", 1, 0, 0);
  j.data_site = "elsewhere";
  std::vector<SiteState> sites{site("c"), site("b"), site("a")};
  CHECK(select_site(j, sites, links, cfg).chosen_site == "a");
}

TEST_CASE("unschedulable and unreachable sites") {
  LinkTable links;  // no links at all
  DianaConfig cfg;
  JobSpec j = job("j", "u", 3);
  j.data_site = "a";
  std::vector<SiteState> small{site("a", 2), site("b", 2)};
  CHECK_THROWS_AS(select_site(j, small, links, cfg), Unschedulable);
  std::vector<SiteState> remote{site("b", 4)};
  CHECK_THROWS_AS(select_site(j, remote, links, cfg), Unschedulable);
  std::vector<SiteState> mixed{site("a", 4), site("b", 8, 100)};
  CHECK(select_site(j, mixed, links, cfg).chosen_site == "a");
}

TEST_CASE("select_site matches a brute-force argmin") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 3000; ++trial) {
    LinkTable links(link("", "", 10 + 990 * u(rng), u(rng)));
    std::vector<SiteState> sites;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      SiteState s = site("s" + std::to_string(i), 1 + static_cast<int>(rng() % 8), 0.5 + 3 * u(rng));
      s.local_queue_length = static_cast<int>(rng() % 4);
      s.service_rate = u(rng);
      sites.push_back(s);
    }
    JobSpec j = job("j", "u", 1 + static_cast<int>(rng() % 4), 0, 100 * u(rng));
    j.data_size = 1e9 * u(rng);
    j.data_site = "s" + std::to_string(rng() % n);
    j.kind = static_cast<JobKind>(rng() % 3);
    DianaConfig cfg;

    const SiteState* best = nullptr;
    double best_total = 0;
    int best_queued = 0;
    for (const auto& s : sites) {
      if (s.node_count < j.processors_required) continue;
      const auto l = s.site_id == j.data_site ? std::nullopt : links.find(j.data_site, s.site_id);
      const double total = total_cost(j, s, l, classify(j)).total;
      const int queued = s.local_queue_length + s.diana_queue_length;
      if (!best || std::tie(total, queued, s.site_id) < std::tie(best_total, best_queued, best->site_id)) {
        best = &s;
        best_total = total;
        best_queued = queued;
      }
    }
    if (!best) {
      CHECK_THROWS_AS(select_site(j, sites, links, cfg), Unschedulable);
    } else {
      CHECK(select_site(j, sites, links, cfg).chosen_site == best->site_id);
    }
  }
}

TEST_CASE("jobs ahead") {
  const UserProfiles users{{"u1", 1.0}, {"u2", 1.0}, {"u3", 1.0}};
  QueueState empty;
  CHECK(jobs_ahead(0.5, empty) == 0);
  QueueState q;
  q.enqueue(job("x", "u1", 1, 0), users);
  q.enqueue(job("big", "u2", 8, 1), users);
  q.enqueue(job("y", "u3", 2, 2), users);
  std::vector<double> pr;
  for (const auto& j : q.priority_order()) pr.push_back(j.priority);
  const double probe = (pr[0] + pr[1]) / 2;
  CHECK(jobs_ahead(probe, q) == 1);
  CHECK(jobs_ahead(-1.0, q) == 3);
  CHECK(jobs_ahead(pr[1], q) == 2);  // equal priorities arrived first
}

TEST_CASE("migrate_batch") {
  LinkTable links(link("", "", 1000));
  DianaConfig cfg;
  std::vector<JobSpec> batch{job("b1"), job("b2")};

  PeerSnapshot local = snap("L", 10, 100);
  std::vector<PeerSnapshot> peers{snap("A", 2, 50), snap("B", 2, 70)};
  auto d = migrate_batch(batch, local, peers, links, cfg);
  CHECK(d.exported);
  CHECK(d.target == "A");
  REQUIRE(d.decisions.size() == 2);
  for (const auto& x : d.decisions) {
    CHECK(x.chosen_site == "A");
    CHECK(x.was_migration);
  }

  // worse on both keys: stay
  d = migrate_batch(batch, local, std::vector<PeerSnapshot>{snap("A", 12, 150)}, links, cfg);
  CHECK_FALSE(d.exported);
  CHECK(d.target == "L");
  // better on one key only, worse on the other: stay
  d = migrate_batch(batch, local, std::vector<PeerSnapshot>{snap("A", 2, 150)}, links, cfg);
  CHECK_FALSE(d.exported);
  // equal on both: stay
  d = migrate_batch(batch, local, std::vector<PeerSnapshot>{snap("A", 10, 100)}, links, cfg);
  CHECK_FALSE(d.exported);
  // exact tie between peers
  d = migrate_batch(batch, local, std::vector<PeerSnapshot>{snap("Z", 1, 10), snap("M", 1, 10)}, links, cfg);
  CHECK(d.target == "M");
  // no peers
  d = migrate_batch(batch, local, {}, links, cfg);
  CHECK_FALSE(d.exported);
}

TEST_CASE("migrate_batch comparators") {
  LinkTable links(link("", "", 1000));
  DianaConfig cfg;
  std::vector<JobSpec> batch{job("b1")};
  PeerSnapshot local = snap("L", 20, 500);
  std::vector<PeerSnapshot> peers{snap("A", 1, 400), snap("B", 5, 10)};
  CHECK(migrate_batch(batch, local, peers, links, cfg).target == "A");
  cfg.comparator = MigrationComparator::weighted_sum;
  CHECK(migrate_batch(batch, local, peers, links, cfg).target == "B");
}

TEST_CASE("batch cost") {
  LinkTable links(link("", "", 1000));
  DianaConfig cfg;
  std::vector<JobSpec> batch{job("a", "u", 1, 0, 3), job("b", "u", 1, 0, 5)};
  CHECK(*batch_cost(batch, site("s1"), links, cfg) == 8.0);
  batch.push_back(job("c", "u", 4));
  CHECK_FALSE(batch_cost(batch, site("s1"), links, cfg));
}

TEST_CASE("poll_peers") {
  std::uint64_t messages = 0;
  auto all = [](const SiteId& id) -> std::optional<PeerSnapshot> { return snap(id, 0, 0); };
  CHECK(poll_peers("me", {}, all, 0, messages).empty());
  CHECK(messages == 0);

  const std::vector<SiteId> four{"a", "b", "c", "d"};
  auto got = poll_peers("me", four, all, 12.5, messages);
  CHECK(got.size() == 4);
  CHECK(messages == 8);
  for (const auto& s : got) CHECK(s.snapshot_time == 12.5);

  messages = 0;
  auto one_down = [](const SiteId& id) -> std::optional<PeerSnapshot> {
    if (id == "c") return std::nullopt;
    return snap(id, 0, 0);
  };
  got = poll_peers("me", four, one_down, 0, messages);
  CHECK(got.size() == 3);
  CHECK(messages == 7);
}

TEST_CASE("stale snapshots are dropped") {
  std::vector<PeerSnapshot> snaps{snap("a", 0, 0), snap("b", 0, 0)};
  snaps[0].snapshot_time = 0;
  snaps[1].snapshot_time = 50;
  CHECK(fresh_snapshots(snaps, 70, 60).size() == 1);
  CHECK(fresh_snapshots(snaps, 60, 60).size() == 2);
}

TEST_CASE("allocation moves a job from the DIANA queue to the local scheduler") {
  const UserProfiles users{{"u", 1.0}};
  QueueState q;
  LocalScheduler local("s1", 2, 1.0);
  q.enqueue(job("a", "u"), users);
  q.enqueue(job("b", "u"), users);
  on_allocation(job("a", "u"), q, local, users);
  CHECK(q.size() == 1);
  CHECK(local.allocated_count() == 1);
  CHECK(local.was_allocated("a"));
  CHECK_FALSE(q.contains("a"));
  for (const auto& id : migration_candidates(q, 10, MigrationPolicy::lowest_priority)) CHECK(id != "a");
}
