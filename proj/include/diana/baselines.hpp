#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "diana/queue_engine.hpp"
#include "diana/types.hpp"

namespace diana {

enum class SchedulerKind { diana, round_robin, flop_greedy };
std::string_view to_string(SchedulerKind k);
SchedulerKind parse_scheduler_kind(std::string_view text);

/// priority_multiqueue is only meaningful for the DIANA scheduler.
void validate(SchedulerKind kind, Discipline discipline);

// Round robin: sites[cursor], cursor advances cyclically. Ignores cost,
// queues and network.
std::pair<SiteId, std::size_t> rr_schedule(const JobSpec& job, std::span<const SiteId> sites, std::size_t cursor);

// Most idle capacity (node_power x idle nodes) wins, ties by lexical site id.
// Every site is queried for every job: the counter grows by 2 x sites.
SiteId flop_schedule(const JobSpec& job, std::span<const SiteState> sites, std::uint64_t& message_counter);

// Ascending processors_required, then submit time, then job id.
std::vector<JobSpec> sjf_order(std::vector<JobSpec> jobs);

}  // namespace diana
