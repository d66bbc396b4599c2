#include <doctest.h>

#include <random>
#include <set>

#include "diana/discovery.hpp"

using namespace diana;

TEST_CASE("register and list") {
  PeerRegistry r;
  r.register_peer("a", 0);
  CHECK(r.list_peers("x") == std::vector<SiteId>{"a"});
  r.register_peer("a", 5);
  CHECK(r.entries().size() == 1);
  CHECK(r.entries().at("a").registered_time == 5);
  CHECK(r.list_peers("a").empty());
}

TEST_CASE("deregister") {
  PeerRegistry r;
  r.register_peer("a", 0);
  r.register_peer("b", 0);
  r.deregister("a", 1);
  CHECK(r.list_peers("x") == std::vector<SiteId>{"b"});
  r.deregister("nobody", 2);
  CHECK(r.list_peers("x") == std::vector<SiteId>{"b"});

  // a deregistered peer is not echoed: one request and one reply for b only
  const auto before = r.messages();
  r.echo_sweep(10, [](const SiteId&) { return true; });
  CHECK(r.messages() - before == 2);
}

TEST_CASE("echo sweeps") {
  PeerRegistry r;
  for (auto id : {"a", "b", "c", "d", "e"}) r.register_peer(id, 0);
  CHECK(r.echo_sweep(60, [](const SiteId&) { return true; }).empty());
  CHECK(r.messages() == 10);

  const auto removed = r.echo_sweep(120, [](const SiteId& id) { return id != "c"; });
  CHECK(removed == std::vector<SiteId>{"c"});
  CHECK_FALSE(r.is_alive("c"));
  // five registered, one crashed and swept: a registered requester sees three
  CHECK(r.list_peers("a") == std::vector<SiteId>{"b", "d", "e"});
  // consecutive sweeps with nothing new remove nothing
  CHECK(r.echo_sweep(180, [](const SiteId& id) { return id != "c"; }).empty());

  r.register_peer("c", 200);
  CHECK(r.is_alive("c"));
  CHECK(r.list_peers("a").size() == 4);
}

TEST_CASE("a peer that re-registers during a sweep is not removed by it") {
  PeerRegistry r;
  r.register_peer("a", 0);
  const auto round = r.begin_sweep(60);
  r.register_peer("a", 62);
  CHECK(r.complete_sweep(round, 65, {}).empty());
  CHECK(r.is_alive("a"));
}

TEST_CASE("retries") {
  PeerRegistry r({60, 5, 2});
  r.register_peer("a", 0);
  auto silent = [](const SiteId&) { return false; };
  CHECK(r.echo_sweep(60, silent).empty());
  CHECK(r.echo_sweep(120, silent) == std::vector<SiteId>{"a"});
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(PeerRegistry(DiscoveryConfig{0, 5, 1}), ValidationError);
  CHECK_THROWS_AS(PeerRegistry(DiscoveryConfig{60, -1, 1}), ValidationError);
  CHECK_THROWS_AS(PeerRegistry(DiscoveryConfig{60, 5, 0}), ValidationError);
}

TEST_CASE("registry state machine against a model") {
  // Model: alive set; register adds, deregister removes, a sweep removes the
  // silent alive peers.
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    PeerRegistry r;
    std::set<SiteId> alive;
    std::set<SiteId> crashed;
    double now = 0;
    for (int step = 0; step < 60; ++step) {
      now += 1;
      const SiteId id = "p" + std::to_string(rng() % 6);
      switch (rng() % 4) {
        case 0:
          r.register_peer(id, now);
          alive.insert(id);
          crashed.erase(id);
          break;
        case 1:
          r.deregister(id, now);
          alive.erase(id);
          break;
        case 2:
          crashed.insert(id);
          break;
        case 3: {
          const auto removed = r.echo_sweep(now, [&](const SiteId& s) { return !crashed.count(s); });
          std::vector<SiteId> expect;
          for (const auto& s : alive)
            if (crashed.count(s)) expect.push_back(s);
          CHECK(removed == expect);
          for (const auto& s : expect) alive.erase(s);
          break;
        }
      }
      CHECK(r.list_peers("zz") == std::vector<SiteId>(alive.begin(), alive.end()));
    }
  }
}
