#include "diana/discovery.hpp"

#include <algorithm>

namespace diana {

void validate(const DiscoveryConfig& c) {
  if (!(c.echo_interval > 0.0)) throw ValidationError("discovery.echo_interval must be > 0");
  if (!(c.echo_timeout >= 0.0)) throw ValidationError("discovery.echo_timeout must be >= 0");
  if (c.retries < 1) throw ValidationError("discovery.retries must be >= 1");
}

PeerRegistry::PeerRegistry(DiscoveryConfig config) : config_(config) { validate(config_); }

PeerEntry& PeerRegistry::touch(const SiteId& site, units::Seconds now) {
  auto [it, inserted] = entries_.try_emplace(site);
  PeerEntry& e = it->second;
  if (!inserted && (now < e.registered_time || now < e.last_echo_ok_time))
    throw DomainError("peer '" + site + "': time moved backwards");
  return e;
}

void PeerRegistry::register_peer(const SiteId& site, units::Seconds now) {
  PeerEntry& e = touch(site, now);
  e.registered_time = now;
  e.last_echo_ok_time = now;
  e.status = PeerStatus::alive;
  e.missed_echoes = 0;
}

void PeerRegistry::deregister(const SiteId& site, units::Seconds now) {
  auto it = entries_.find(site);
  if (it == entries_.end() || it->second.status == PeerStatus::removed) return;
  touch(site, now).status = PeerStatus::removed;
}

EchoRound PeerRegistry::begin_sweep(units::Seconds now) {
  EchoRound round{now, {}};
  for (const auto& [site, e] : entries_)
    if (e.status == PeerStatus::alive) round.targets.push_back(site);
  messages_ += round.targets.size();
  return round;
}

std::vector<SiteId> PeerRegistry::complete_sweep(const EchoRound& round, units::Seconds /*now*/,
                                                 const std::set<SiteId>& responders) {
  std::vector<SiteId> removed;
  for (const auto& site : round.targets) {
    auto it = entries_.find(site);
    // Peers that re-registered or left while the round was open are settled.
    if (it == entries_.end() || it->second.status != PeerStatus::alive) continue;
    PeerEntry& e = it->second;
    if (e.registered_time > round.started) continue;
    if (responders.count(site)) {
      ++messages_;
      e.last_echo_ok_time = std::max(e.last_echo_ok_time, round.started);
      e.missed_echoes = 0;
    } else if (++e.missed_echoes >= config_.retries) {
      e.status = PeerStatus::removed;
      removed.push_back(site);
    }
  }
  return removed;
}

std::vector<SiteId> PeerRegistry::echo_sweep(units::Seconds now, const std::function<bool(const SiteId&)>& responds) {
  EchoRound round = begin_sweep(now);
  std::set<SiteId> responders;
  for (const auto& site : round.targets)
    if (responds(site)) responders.insert(site);
  return complete_sweep(round, now + config_.echo_timeout, responders);
}

std::vector<SiteId> PeerRegistry::list_peers(const SiteId& requester) const {
  std::vector<SiteId> out;
  for (const auto& [site, e] : entries_)
    if (e.status == PeerStatus::alive && site != requester) out.push_back(site);
  return out;
}

bool PeerRegistry::is_alive(const SiteId& site) const {
  auto it = entries_.find(site);
  return it != entries_.end() && it->second.status == PeerStatus::alive;
}

}  // namespace diana
