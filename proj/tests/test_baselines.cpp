#include <doctest.h>

#include <map>
#include <random>

#include "diana/baselines.hpp"
#include "helpers.hpp"
#include "sjf_oracle.hpp"

using namespace diana;
using testing_helpers::job;
using testing_helpers::site;

TEST_CASE("round robin") {
  const std::vector<SiteId> five{"s1", "s2", "s3", "s4", "s5"};
  std::map<SiteId, int> count;
  std::size_t cursor = 0;
  for (int i = 0; i < 5; ++i) {
    auto [s, next] = rr_schedule(job("j"), five, cursor);
    ++count[s];
    cursor = next;
  }
  for (const auto& s : five) CHECK(count[s] == 1);

  // derive.py: 7 jobs over 5 sites
  count.clear();
  cursor = 0;
  for (int i = 0; i < 7; ++i) {
    auto [s, next] = rr_schedule(job("j"), five, cursor);
    ++count[s];
    cursor = next;
  }
  CHECK(count == std::map<SiteId, int>{{"s1", 2}, {"s2", 2}, {"s3", 1}, {"s4", 1}, {"s5", 1}});

  const std::vector<SiteId> one{"only"};
  for (int i = 0; i < 3; ++i) CHECK(rr_schedule(job("j"), one, static_cast<std::size_t>(i)).first == "only");
  CHECK_THROWS_AS(rr_schedule(job("j"), std::vector<SiteId>{}, 0), ValidationError);
}

TEST_CASE("round robin fairness") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const int k = 1 + static_cast<int>(rng() % 10);
    std::vector<SiteId> sites;
    for (int i = 0; i < n; ++i) sites.push_back("s" + std::to_string(i));
    std::map<SiteId, int> count;
    std::size_t cursor = 0;
    for (int i = 0; i < k * n; ++i) {
      auto [s, next] = rr_schedule(job("j"), sites, cursor);
      ++count[s];
      cursor = next;
    }
    for (const auto& s : sites) CHECK(count[s] == k);
  }
}

TEST_CASE("flop greedy") {
  std::uint64_t messages = 0;
  // idle capacity 10, 50, 20 MFLOPS
  std::vector<SiteState> sites{site("a", 10, 1), site("b", 5, 10), site("c", 2, 10)};
  CHECK(flop_schedule(job("j"), sites, messages) == "b");
  CHECK(messages == 6);

  std::vector<SiteState> equal{site("z", 2, 1), site("m", 2, 1), site("q", 2, 1)};
  CHECK(flop_schedule(job("j"), equal, messages) == "m");

  messages = 0;
  std::vector<SiteState> five{site("1"), site("2"), site("3"), site("4"), site("5")};
  for (int i = 0; i < 4; ++i) flop_schedule(job("j"), five, messages);
  CHECK(messages == 4 * 10);

  std::vector<SiteState> busy{site("a", 4), site("b", 4)};
  busy[0].free_nodes = 0;
  busy[1].free_nodes = -3;
  CHECK(flop_schedule(job("j"), busy, messages) == "a");
  CHECK_THROWS_AS(flop_schedule(job("j", "u", 9), busy, messages), Unschedulable);
}

TEST_CASE("sjf order") {
  std::vector<JobSpec> jobs{job("a", "u", 35, 0), job("b", "u", 8, 1), job("c", "u", 26, 2), job("d", "u", 17, 3)};
  std::vector<int> t;
  for (const auto& j : sjf_order(jobs)) t.push_back(j.processors_required);
  CHECK(t == std::vector<int>{8, 17, 26, 35});

  std::vector<JobSpec> same{job("x", "u", 4, 2), job("y", "u", 4, 1), job("w", "u", 4, 1)};
  std::vector<JobId> ids;
  for (const auto& j : sjf_order(same)) ids.push_back(j.job_id);
  CHECK(ids == std::vector<JobId>{"w", "y", "x"});
  CHECK(sjf_order({job("solo")}).size() == 1);
}

TEST_CASE("sjf reaches the brute-force minimum wait") {
  // derive.py: [20, 100, 444, 555, 20] has minimum mean wait 784/5
  std::vector<JobSpec> example;
  for (int t : {8, 17, 26, 35, 8}) example.push_back(job("j" + std::to_string(example.size()), "u", t));
  CHECK(sjf_oracle::total_wait(sjf_order(example)) == sjf_oracle::brute_force_min_wait(example));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<JobSpec> jobs;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i)
      jobs.push_back(job("j" + std::to_string(i), "u", presets::p2_processors[rng() % 4], 0));
    CHECK(sjf_oracle::total_wait(sjf_order(jobs)) == sjf_oracle::brute_force_min_wait(jobs));
  }
}

TEST_CASE("priority_multiqueue is diana only") {
  CHECK_NOTHROW(validate(SchedulerKind::diana, Discipline::priority_multiqueue));
  CHECK_THROWS_AS(validate(SchedulerKind::round_robin, Discipline::priority_multiqueue), ValidationError);
  CHECK_THROWS_AS(validate(SchedulerKind::flop_greedy, Discipline::priority_multiqueue), ValidationError);
  CHECK(parse_scheduler_kind("rr") == SchedulerKind::round_robin);
  CHECK_THROWS_AS(parse_scheduler_kind("random"), ValidationError);
}
