#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "diana/types.hpp"

namespace diana {

struct DiscoveryConfig {
  units::Seconds echo_interval = 60.0;
  units::Seconds echo_timeout = 5.0;
  int retries = 1;  // consecutive missed echoes before removal

  friend bool operator==(const DiscoveryConfig&, const DiscoveryConfig&) = default;
};

void validate(const DiscoveryConfig& config);

enum class PeerStatus { alive, removed };

struct PeerEntry {
  units::Seconds registered_time = 0.0;
  units::Seconds last_echo_ok_time = 0.0;
  PeerStatus status = PeerStatus::alive;
  int missed_echoes = 0;
};

/// Echoes sent at `started`; replies are due by started + echo_timeout.
struct EchoRound {
  units::Seconds started = 0.0;
  std::vector<SiteId> targets;
};

/// Liveness registry of meta-scheduler peers.
///
/// Peers join and leave explicitly; silent failures are caught by echo
/// rounds. A peer that misses `retries` consecutive echoes is removed and
/// only comes back by registering again.
class PeerRegistry {
 public:
  explicit PeerRegistry(DiscoveryConfig config = {});

  void register_peer(const SiteId& site, units::Seconds now);
  void deregister(const SiteId& site, units::Seconds now);

  EchoRound begin_sweep(units::Seconds now);
  /// Closes a round. Targets missing from `responders` count a miss; returns
  /// the peers removed by this round, sorted.
  std::vector<SiteId> complete_sweep(const EchoRound& round, units::Seconds now, const std::set<SiteId>& responders);

  /// begin_sweep + complete_sweep in one step, polling `responds` per target.
  std::vector<SiteId> echo_sweep(units::Seconds now, const std::function<bool(const SiteId&)>& responds);

  /// Alive peers other than `requester`, sorted by site id.
  std::vector<SiteId> list_peers(const SiteId& requester) const;

  bool is_alive(const SiteId& site) const;
  const std::map<SiteId, PeerEntry>& entries() const { return entries_; }
  const DiscoveryConfig& config() const { return config_; }

  /// Echo requests plus replies exchanged so far.
  std::uint64_t messages() const { return messages_; }

 private:
  PeerEntry& touch(const SiteId& site, units::Seconds now);

  DiscoveryConfig config_;
  std::map<SiteId, PeerEntry> entries_;
  std::uint64_t messages_ = 0;
};

}  // namespace diana
