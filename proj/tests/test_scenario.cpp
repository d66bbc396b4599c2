#include <doctest.h>

#include <string>

#include "diana/scenario.hpp"

#ifndef DIANA_SCENARIO_DIR
#define DIANA_SCENARIO_DIR "scenarios"
#endif

using namespace diana;

namespace {

const char* minimal = R"(name: tiny
sites:
  - {id: a, nodes: 2, power: 5}
  - {id: b, nodes: 1}
links:
  - {from: a, to: b, bandwidth: 10, latency: 0.5}
users:
  - {id: u, quota: 2}
)";

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("minimal scenario") {
  const auto s = parse_scenario(minimal);
  CHECK(s.name == "tiny");
  REQUIRE(s.sites.size() == 2);
  CHECK(s.sites[0].nodes == 2);
  CHECK(s.sites[0].power == 5.0);
  CHECK(s.sites[1].power == 1.0);
  const auto link = s.link_table().find("a", "b");
  REQUIRE(link);
  CHECK(link->bandwidth == 10.0);
  CHECK(link->latency == 0.5);
  CHECK(s.user_profiles().at("u") == 2.0);
  CHECK(s.queue.thrs == 0.3);
  CHECK(s.scheduler.kind == SchedulerKind::diana);
}

TEST_CASE("invalid values name the field") {
  const auto thrs = error_of(std::string(minimal) + "queue: {thrs: 1.5}\n");
  CHECK(thrs.find("thrs") != std::string::npos);
  CHECK(thrs.find("[0, 1]") != std::string::npos);
  CHECK(thrs.find("line 9") != std::string::npos);

  const auto link = error_of(R"(sites: [{id: a}]
links:
  - {from: a, to: nowhere, bandwidth: 1}
)");
  CHECK(link.find("nowhere") != std::string::npos);
  CHECK(link.find("links[0].to") != std::string::npos);

  const auto unknown = error_of(R"(sites: [{id: a}]
shceduler: {kind: diana}
)");
  CHECK(unknown.find("line 2") != std::string::npos);
  CHECK(unknown.find("shceduler") != std::string::npos);

  CHECK(error_of("sites: [{id: a, nodes: 0}]\n").find("sites[0].nodes") != std::string::npos);
  CHECK(error_of("sites: [{id: a}]\nscheduler: {kind: rr, queue: priority_multiqueue}\n").find("scheduler.queue") !=
        std::string::npos);
  CHECK(!error_of("sites: [{id: a}\n").empty());
  CHECK(!error_of("").empty());
}

TEST_CASE("FieldError carries the path") {
  Scenario s;
  s.sites = {SiteSpec{"a", 1, 1.0}};
  s.rates.alpha = 0.0;
  try {
    validate(s);
    FAIL("expected a FieldError");
  } catch (const FieldError& e) {
    CHECK(e.field() == "rates.alpha");
  }
}

TEST_CASE("topology presets") {
  Scenario s;
  s.topology.preset = "paper5";
  auto sites = s.resolved_sites();
  REQUIRE(sites.size() == 5);
  CHECK(sites[0].id == "site1");
  CHECK(sites[0].nodes == 4);
  CHECK(sites[4].nodes == 5);
  s.topology.node_scale = 10;
  CHECK(s.resolved_sites()[1].nodes == 50);

  s.topology = {};
  s.topology.preset = "uniform";
  s.topology.count = 12;
  s.topology.nodes = 3;
  sites = s.resolved_sites();
  REQUIRE(sites.size() == 12);
  CHECK(sites[0].id == "site01");
  CHECK(sites[11].id == "site12");
  CHECK(sites[5].nodes == 3);
  s.topology.count = 100;
  CHECK(s.resolved_sites()[0].id == "site001");
}

TEST_CASE("sizes") {
  CHECK(parse_size("512") == 512.0);
  CHECK(parse_size("10GB") == 10e9);
  CHECK(parse_size("1 MB") == 1e6);
  CHECK(parse_size("2.5KB") == 2500.0);
  CHECK_THROWS_AS(parse_size("ten"), ValidationError);
  CHECK_THROWS_AS(parse_size("4 XB"), ValidationError);
}

TEST_CASE("serialize round trip") {
  for (const char* name : {"p1_paper5", "p2_classes", "p3_bandwidth", "p4_scaling", "congested_pair", "peer_crash"}) {
    CAPTURE(name);
    const auto s = load_scenario(std::string(DIANA_SCENARIO_DIR) + "/" + name + ".yaml");
    const auto text = serialize_scenario(s);
    const auto again = parse_scenario(text);
    CHECK(again == s);
    CHECK(serialize_scenario(again) == text);
  }

  Scenario odd;
  odd.name = "odd";
  odd.sites = {SiteSpec{"x", 3, 0.1}, SiteSpec{"y", 1, 1.0 / 3.0}};
  odd.users = {UserProfile{"u", 0.7}};
  odd.default_link = NetworkLink{"", "", 33.3, 0.01, 0.25};
  odd.queue.thrs = 0.123456789;
  odd.failures = {FailureSpec{"y", 12.5, FailureAction::shutdown}};
  BurstSpec b;
  b.user = "u";
  b.site = "x";
  b.count = 3;
  b.job.compute = 7.25;
  b.job.data_size = 1e6;
  b.job.kind = JobKind::mixed;
  odd.workload.bursts = {b};
  CHECK(parse_scenario(serialize_scenario(odd)) == odd);
}

TEST_CASE("missing file") { CHECK_THROWS_AS(load_scenario("/nonexistent/x.yaml"), Error); }
