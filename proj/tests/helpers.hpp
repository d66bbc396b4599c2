#pragma once

#include <string>

#include "diana/types.hpp"

namespace testing_helpers {

inline diana::JobSpec job(const std::string& id, const std::string& user = "u", int t = 1, double submit = 0.0,
                          double compute = 1.0) {
  diana::JobSpec j;
  j.job_id = id;
  j.user_id = user;
  j.processors_required = t;
  j.submit_time = submit;
  j.compute_demand = compute;
  j.data_site = "s1";
  return j;
}

inline diana::SiteState site(const std::string& id, int nodes = 1, double power = 1.0) {
  diana::SiteState s;
  s.site_id = id;
  s.node_count = nodes;
  s.node_power = power;
  s.free_nodes = nodes;
  return s;
}

inline diana::NetworkLink link(const std::string& a, const std::string& b, double bw, double latency = 0.0,
                               double load = 0.0) {
  return diana::NetworkLink{a, b, bw, latency, load};
}

}  // namespace testing_helpers
