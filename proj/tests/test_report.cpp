#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "diana/report.hpp"

#ifndef DIANA_SCENARIO_DIR
#define DIANA_SCENARIO_DIR "scenarios"
#endif

using namespace diana;
namespace fs = std::filesystem;

namespace {

Scenario scenario(const char* name) { return load_scenario(std::string(DIANA_SCENARIO_DIR) + "/" + name + ".yaml"); }

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("diana-test-" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(3.0) == "3");
  CHECK(format_number(1.0 / 3.0) == "0.333333");
  CHECK(format_number(123456789.0) == "1.23457e+08");
  CHECK(format_number(-2.5) == "-2.5");
}

TEST_CASE("jobs csv round trip") {
  const auto m = run(scenario("congested_pair"), 2);
  std::ostringstream first;
  write_jobs_csv(first, m.jobs);
  std::istringstream in(first.str());
  const auto parsed = parse_jobs_csv(in);
  REQUIRE(parsed.size() == m.jobs.size());
  std::ostringstream second;
  write_jobs_csv(second, parsed);
  CHECK(second.str() == first.str());

  // awkward fields survive quoting
  JobMetrics odd;
  odd.job_id = "a,\"b\"";
  odd.user = "line\nbreak";
  odd.status = JobStatus::failed_unreachable;
  std::ostringstream a;
  write_jobs_csv(a, {odd});
  std::istringstream ia(a.str());
  const auto back = parse_jobs_csv(ia);
  REQUIRE(back.size() == 1);
  CHECK(back[0].job_id == odd.job_id);
  CHECK(back[0].user == odd.user);
  CHECK_FALSE(back[0].started.has_value());
  CHECK(back[0].status == JobStatus::failed_unreachable);
}

TEST_CASE("summary csv round trip") {
  SummaryRow row{"thrs", "0.5", run(scenario("p4_scaling"), 1).summary};
  std::ostringstream first;
  write_summary_csv(first, {row});
  std::istringstream in(first.str());
  const auto parsed = parse_summary_csv(in);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].axis == "thrs");
  CHECK(parsed[0].summary.workload_hash == row.summary.workload_hash);
  std::ostringstream second;
  write_summary_csv(second, parsed);
  CHECK(second.str() == first.str());
}

TEST_CASE("empty workload writes headers only") {
  Scenario s;
  s.sites = {SiteSpec{"a", 1, 1.0}};
  const auto dir = scratch("empty");
  run_experiment(s, 1, dir);
  const auto jobs = slurp(dir / "jobs.csv");
  CHECK(jobs ==
        "job_id,user,site,submit,scheduled,started,completed,queue_time,exec_time,migrations,status,transfer_time\n");
  const auto summary = slurp(dir / "summary.csv");
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 2);
  fs::remove_all(dir);
}

TEST_CASE("bandwidth sweep") {
  const auto dir = scratch("sweep");
  const auto rows = run_sweep(scenario("p3_bandwidth"), "bandwidth", {"10", "100", "1000"}, 1, dir);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].summary.mean_exec_time > rows[1].summary.mean_exec_time);
  CHECK(rows[1].summary.mean_exec_time > rows[2].summary.mean_exec_time);
  CHECK(fs::exists(dir / "bandwidth-100" / "jobs.csv"));
  const auto loaded = load_summaries({dir / "summary.csv"});
  CHECK(loaded.size() == 3);
  fs::remove_all(dir);
}

TEST_CASE("axis values are checked") {
  const auto s = scenario("p4_scaling");
  CHECK(apply_axis(s, "sites", "7").resolved_sites().size() == 7);
  CHECK(apply_axis(s, "thrs", "0.5").queue.thrs == 0.5);
  const auto rr = apply_axis(s, "scheduler", "round_robin");
  CHECK(rr.scheduler.kind == SchedulerKind::round_robin);
  CHECK(rr.scheduler.queue == Discipline::fcfs);
  CHECK_THROWS_AS(apply_axis(s, "colour", "1"), ValidationError);
  CHECK_THROWS_AS(apply_axis(s, "thrs", "lots"), ValidationError);
  CHECK_THROWS_AS(apply_axis(s, "thrs", "2"), ValidationError);
  CHECK_THROWS_AS(apply_axis(scenario("p1_paper5"), "sites", "3"), ValidationError);
}

TEST_CASE("compare") {
  auto s = scenario("p4_scaling");
  SummaryRow a{"", "", run(s, 1, {"diana"}).summary};
  s.scheduler.kind = SchedulerKind::round_robin;
  s.scheduler.queue = Discipline::fcfs;
  SummaryRow b{"", "", run(s, 1, {"rr"}).summary};
  s.scheduler.kind = SchedulerKind::flop_greedy;
  SummaryRow c{"", "", run(s, 1, {"flop"}).summary};

  const auto table = compare({a, b, c});
  CHECK(table.rfind("workload " + a.summary.workload_hash, 0) == 0);
  CHECK(table.find("ratio rr/diana") != std::string::npos);
  CHECK(table.find("ratio flop/diana") != std::string::npos);
  CHECK(table.find("messages_per_job") != std::string::npos);

  CHECK_THROWS_AS(compare({a}), ValidationError);
  s.workload.preset.jobs_per_site = 3;
  SummaryRow other{"", "", run(s, 1, {"other"}).summary};
  CHECK_THROWS_AS(compare({a, other}), ValidationError);
}
