#pragma once

#include <optional>

#include "diana/types.hpp"

namespace diana {

struct CostWeights {
  double compute = 1.0;
  double transfer = 1.0;
  double network = 1.0;

  friend bool operator==(const CostWeights&, const CostWeights&) = default;
};

void validate(const CostWeights& weights);

/// Weight preset per job category. Overridable through the scenario file.
struct WeightPresets {
  CostWeights compute_intensive{1.0, 0.25, 0.25};
  CostWeights data_intensive{0.25, 1.0, 1.0};
  CostWeights mixed{1.0, 1.0, 1.0};

  const CostWeights& for_kind(JobKind kind) const;

  friend bool operator==(const WeightPresets&, const WeightPresets&) = default;
};

struct CostBreakdown {
  units::Seconds compute_cost = 0.0;
  units::Seconds transfer_cost = 0.0;
  double network_cost = 0.0;
  units::Seconds total = 0.0;
};

struct CostModelConfig {
  units::Mbps reference_bandwidth = 1000.0;
  double rate_floor = 1e-9;  // guards the queue-delay division before any job completes

  friend bool operator==(const CostModelConfig&, const CostModelConfig&) = default;
};

// Execution time on the site plus the Little's-law style queue delay
// (local + DIANA queue length) / max(service_rate, floor).
units::Seconds compute_cost(const JobSpec& job, const SiteState& site, const CostModelConfig& config = {});

// Zero when source == dest. Throws UnreachableSite for distinct sites without
// a link.
units::Seconds transfer_cost(const JobSpec& job, const SiteId& source, const SiteId& dest,
                             const std::optional<NetworkLink>& link);

// reference_bandwidth / available bandwidth; zero for intra-site placement
// (empty link).
double network_cost(const std::optional<NetworkLink>& link, const CostModelConfig& config = {});

/// Full breakdown for running `job` on `site`. `link` joins the job's data
/// site and `site`; it is ignored when the data is already there.
CostBreakdown total_cost(const JobSpec& job, const SiteState& site,
                         const std::optional<NetworkLink>& link, const CostWeights& weights,
                         const CostModelConfig& config = {});

}  // namespace diana
