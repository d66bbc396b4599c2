#include "diana/workload.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace diana {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::exponential(double mean) { return -mean * std::log1p(-uniform()); }

std::uint64_t Rng::below(std::uint64_t bound) {
  // rejection sampling keeps the draw unbiased
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

namespace {

SiteId default_data_site(const Scenario& s, const SiteId& origin) {
  return std::find(s.storage.begin(), s.storage.end(), "se") != s.storage.end() ? SiteId("se") : origin;
}

void p1(const Scenario& s, const std::vector<SiteSpec>& sites, Rng& rng, const SiteId& origin, const UserId& user,
        std::vector<WorkloadJob>& out) {
  const auto& p = s.workload.preset;
  const int jobs = p.jobs.value_or(presets::p1_jobs);
  const double mean = p.mean_compute.value_or(presets::p1_mean_compute);
  const int burst = p.burst_size.value_or(presets::p1_burst_size);
  const double load = p.load.value_or(presets::p1_load);
  double capacity = 0.0;
  for (const auto& site : sites) capacity += site.nodes * site.power;
  const double mean_gap = burst * mean / (load * capacity);

  double t = 0.0;
  for (int i = 0; i < jobs; ++i) {
    if (i > 0 && i % burst == 0) t += rng.exponential(mean_gap);
    JobSpec job;
    job.user_id = user;
    job.compute_demand = rng.exponential(mean);
    job.data_size = p.data_size.value_or(presets::p1_data_size);
    job.data_site = p.data_site.value_or(origin);
    job.submit_time = t;
    job.kind = JobKind::compute_intensive;
    out.push_back({job, origin});
  }
}

void p2(const Scenario& s, const SiteSpec& origin_site, Rng& rng, const UserId& user, std::vector<WorkloadJob>& out) {
  const int per_class = s.workload.preset.per_class.value_or(presets::p2_per_class);
  std::vector<WorkloadJob> jobs;
  for (int c = 0; c < 4; ++c) {
    for (int i = 0; i < per_class; ++i) {
      JobSpec job;
      job.user_id = user;
      job.processors_required = presets::p2_processors[c];
      job.compute_demand = presets::p2_runtimes[c] * origin_site.power * job.processors_required;
      job.data_size = s.workload.preset.data_size.value_or(0.0);
      job.data_site = s.workload.preset.data_site.value_or(origin_site.id);
      job.kind = JobKind::compute_intensive;
      jobs.push_back({job, origin_site.id});
    }
  }
  rng.shuffle(jobs);
  out.insert(out.end(), jobs.begin(), jobs.end());
}

void p3(const Scenario& s, const SiteId& origin, const UserId& user, std::vector<WorkloadJob>& out) {
  const auto& p = s.workload.preset;
  const int jobs = p.jobs.value_or(presets::p3_jobs);
  for (int i = 0; i < jobs; ++i) {
    JobSpec job;
    job.user_id = user;
    job.compute_demand = p.mean_compute.value_or(presets::p3_compute);
    job.data_size = p.data_size.value_or(presets::p3_data_size);
    job.data_site = p.data_site.value_or(default_data_site(s, origin));
    job.kind = JobKind::data_intensive;
    out.push_back({job, origin});
  }
}

void p4(const Scenario& s, std::size_t site_count, const SiteId& origin, const UserId& user,
        std::vector<WorkloadJob>& out) {
  const auto& p = s.workload.preset;
  const int jobs = p.jobs.value_or(p.jobs_per_site.value_or(presets::p4_jobs_per_site) * static_cast<int>(site_count));
  for (int i = 0; i < jobs; ++i) {
    JobSpec job;
    job.user_id = user;
    job.compute_demand = p.mean_compute.value_or(presets::p4_compute);
    job.data_size = p.data_size.value_or(presets::p4_data_size);
    job.data_site = p.data_site.value_or(origin);
    job.kind = JobKind::compute_intensive;
    out.push_back({job, origin});
  }
}

}  // namespace

std::vector<WorkloadJob> generate_workload(const Scenario& s, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<WorkloadJob> out;
  const auto sites = s.resolved_sites();
  const auto& p = s.workload.preset;
  if (!p.name.empty() && !sites.empty() && !s.users.empty()) {
    const SiteId origin = p.origin.value_or(sites.front().id);
    const UserId user = p.user.value_or(s.users.front().user_id);
    const auto origin_site = *std::find_if(sites.begin(), sites.end(), [&](const SiteSpec& x) { return x.id == origin; });
    if (p.name == "P1") p1(s, sites, rng, origin, user, out);
    if (p.name == "P2") p2(s, origin_site, rng, user, out);
    if (p.name == "P3") p3(s, origin, user, out);
    if (p.name == "P4") p4(s, sites.size(), origin, user, out);
  }

  for (const auto& b : s.workload.bursts) {
    for (int r = 0; r < b.repeat; ++r) {
      for (int i = 0; i < b.count; ++i) {
        JobSpec job;
        job.user_id = b.user;
        job.compute_demand = b.job.compute;
        job.processors_required = b.job.processors;
        job.data_size = b.job.data_size;
        job.data_site = b.job.data_site.empty() ? b.site : b.job.data_site;
        job.submit_time = b.time + r * b.interval;
        job.kind = b.job.kind;
        out.push_back({job, b.site});
      }
    }
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const WorkloadJob& a, const WorkloadJob& b) { return a.job.submit_time < b.job.submit_time; });
  char id[16];
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::snprintf(id, sizeof id, "j%06zu", i + 1);
    out[i].job.job_id = id;
  }
  return out;
}

namespace {

struct Fnv {
  std::uint64_t h = 1469598103934665603ULL;
  void bytes(std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0x1f;  // field separator
    h *= 1099511628211ULL;
  }
  void number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    bytes(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
  }
};

}  // namespace

std::uint64_t workload_hash(const std::vector<WorkloadJob>& jobs) {
  Fnv f;
  for (const auto& w : jobs) {
    const auto& j = w.job;
    f.bytes(j.job_id);
    f.bytes(j.user_id);
    f.number(j.compute_demand);
    f.number(j.processors_required);
    f.number(j.data_size);
    f.bytes(j.data_site);
    f.number(j.submit_time);
    f.bytes(to_string(j.kind));
    f.bytes(w.origin);
  }
  return f.h;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace diana
