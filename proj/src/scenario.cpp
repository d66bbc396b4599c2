#include "diana/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace diana {

std::string_view to_string(FailureAction a) {
  switch (a) {
    case FailureAction::crash:
      return "crash";
    case FailureAction::shutdown:
      return "shutdown";
    case FailureAction::recover:
      return "recover";
  }
  return "crash";
}

FailureAction parse_failure_action(std::string_view text) {
  if (text == "crash") return FailureAction::crash;
  if (text == "shutdown") return FailureAction::shutdown;
  if (text == "recover") return FailureAction::recover;
  throw ValidationError("unknown failure action '" + std::string(text) + "' (expected crash, shutdown or recover)");
}

bool operator==(const NetworkLink& a, const NetworkLink& b) {
  return std::tie(a.from_site, a.to_site, a.bandwidth, a.latency, a.background_load) ==
         std::tie(b.from_site, b.to_site, b.bandwidth, b.latency, b.background_load);
}

bool operator==(const UserProfile& a, const UserProfile& b) {
  return a.user_id == b.user_id && a.quota == b.quota;
}

bool operator==(const Scenario& a, const Scenario& b) {
  return a.name == b.name && a.topology == b.topology && a.sites == b.sites && a.storage == b.storage &&
         a.default_link == b.default_link && a.links == b.links && a.users == b.users && a.workload == b.workload &&
         a.scheduler == b.scheduler && a.queue == b.queue && a.discovery == b.discovery && a.rates == b.rates &&
         a.failures == b.failures && a.duration_cap == b.duration_cap;
}

std::vector<SiteSpec> Scenario::resolved_sites() const {
  if (topology.preset.empty()) return sites;
  std::vector<SiteSpec> out;
  if (topology.preset == "paper5") {
    for (int i = 1; i <= 5; ++i)
      out.push_back({"site" + std::to_string(i), (i == 1 ? 4 : 5) * topology.node_scale, topology.power});
  } else if (topology.preset == "uniform") {
    const int width = std::max<int>(2, static_cast<int>(std::to_string(topology.count).size()));
    for (int i = 1; i <= topology.count; ++i) {
      std::string digits = std::to_string(i);
      digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
      out.push_back({"site" + digits, topology.nodes * topology.node_scale, topology.power});
    }
  }
  return out;
}

LinkTable Scenario::link_table() const {
  LinkTable table(default_link);
  for (const auto& link : links) table.add(link);
  return table;
}

UserProfiles Scenario::user_profiles() const {
  UserProfiles out;
  for (const auto& u : users) out[u.user_id] = u.quota;
  return out;
}

double parse_size(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t end = i;
  while (end < text.size() && (std::isdigit(static_cast<unsigned char>(text[end])) || text[end] == '.' ||
                               text[end] == 'e' || text[end] == 'E' || text[end] == '+' || text[end] == '-')) {
    // stop before a unit that starts with 'E' (exabytes are not supported anyway)
    ++end;
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + end, value);
  if (ec != std::errc() || ptr == text.data() + i) throw ValidationError("invalid size '" + std::string(text) + "'");
  std::string unit(ptr, text.data() + text.size());
  unit.erase(std::remove_if(unit.begin(), unit.end(), [](unsigned char c) { return std::isspace(c); }), unit.end());
  std::transform(unit.begin(), unit.end(), unit.begin(), [](unsigned char c) { return std::toupper(c); });
  static const std::map<std::string, double> scale{{"", 1.0},     {"B", 1.0},     {"KB", 1e3},
                                                   {"MB", 1e6},   {"GB", 1e9},    {"TB", 1e12}};
  auto it = scale.find(unit);
  if (it == scale.end()) throw ValidationError("invalid size unit in '" + std::string(text) + "'");
  return value * it->second;
}

// ---------------------------------------------------------------------------
// validation

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) { throw FieldError(field, message); }

std::string indexed(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

void check_link(const NetworkLink& link, const std::string& field) {
  if (!(link.bandwidth > 0.0) || !std::isfinite(link.bandwidth)) fail(field + ".bandwidth", "must be > 0");
  if (!(link.latency >= 0.0) || !std::isfinite(link.latency)) fail(field + ".latency", "must be >= 0");
  if (!(link.background_load >= 0.0 && link.background_load < 1.0)) fail(field + ".load", "must lie in [0, 1)");
}

void check_weights(const CostWeights& w, const std::string& field) {
  if (w.compute < 0.0) fail(field + ".compute", "must be >= 0");
  if (w.transfer < 0.0) fail(field + ".transfer", "must be >= 0");
  if (w.network < 0.0) fail(field + ".network", "must be >= 0");
  if (!(w.compute + w.transfer + w.network > 0.0)) fail(field, "weights must not all be zero");
}

}  // namespace

void validate(const Scenario& s) {
  if (!s.topology.preset.empty()) {
    if (s.topology.preset != "paper5" && s.topology.preset != "uniform")
      fail("topology.preset", "unknown preset '" + s.topology.preset + "' (expected paper5 or uniform)");
    if (!s.sites.empty()) fail("sites", "cannot be combined with a topology preset");
    if (s.topology.count < 1) fail("topology.count", "must be >= 1");
    if (s.topology.nodes < 1) fail("topology.nodes", "must be >= 1");
    if (s.topology.node_scale < 1) fail("topology.node_scale", "must be >= 1");
    if (!(s.topology.power > 0.0)) fail("topology.power", "must be > 0");
  }
  const auto sites = s.resolved_sites();
  if (sites.empty()) fail("sites", "at least one site is required");

  std::set<SiteId> site_ids;
  for (std::size_t i = 0; i < s.sites.size(); ++i) {
    const auto& site = s.sites[i];
    const auto field = indexed("sites", i);
    if (site.id.empty()) fail(field + ".id", "must not be empty");
    if (!site_ids.insert(site.id).second) fail(field + ".id", "duplicate site '" + site.id + "'");
    if (site.nodes < 1) fail(field + ".nodes", "must be >= 1");
    if (!(site.power > 0.0)) fail(field + ".power", "must be > 0");
  }
  for (const auto& site : sites) site_ids.insert(site.id);

  std::set<SiteId> endpoints = site_ids;
  for (std::size_t i = 0; i < s.storage.size(); ++i) {
    if (s.storage[i].empty()) fail(indexed("storage", i), "must not be empty");
    if (!endpoints.insert(s.storage[i]).second) fail(indexed("storage", i), "duplicate endpoint '" + s.storage[i] + "'");
  }

  if (s.default_link) check_link(*s.default_link, "default_link");
  for (std::size_t i = 0; i < s.links.size(); ++i) {
    const auto& link = s.links[i];
    const auto field = indexed("links", i);
    if (!endpoints.count(link.from_site)) fail(field + ".from", "undefined site '" + link.from_site + "'");
    if (!endpoints.count(link.to_site)) fail(field + ".to", "undefined site '" + link.to_site + "'");
    if (link.from_site == link.to_site) fail(field, "a link must join two distinct sites");
    check_link(link, field);
  }

  std::set<UserId> user_ids;
  for (std::size_t i = 0; i < s.users.size(); ++i) {
    const auto field = indexed("users", i);
    if (s.users[i].user_id.empty()) fail(field + ".id", "must not be empty");
    if (!user_ids.insert(s.users[i].user_id).second) fail(field + ".id", "duplicate user '" + s.users[i].user_id + "'");
    if (!(s.users[i].quota > 0.0)) fail(field + ".quota", "must be > 0");
  }

  const auto& p = s.workload.preset;
  if (!p.name.empty()) {
    if (p.name != "P1" && p.name != "P2" && p.name != "P3" && p.name != "P4")
      fail("workload.preset.name", "unknown preset '" + p.name + "' (expected P1, P2, P3 or P4)");
    if (p.jobs && *p.jobs < 1) fail("workload.preset.jobs", "must be >= 1");
    if (p.load && !(*p.load > 0.0)) fail("workload.preset.load", "must be > 0");
    if (p.burst_size && *p.burst_size < 1) fail("workload.preset.burst_size", "must be >= 1");
    if (p.mean_compute && !(*p.mean_compute > 0.0)) fail("workload.preset.mean_compute", "must be > 0");
    if (p.per_class && *p.per_class < 1) fail("workload.preset.per_class", "must be >= 1");
    if (p.jobs_per_site && *p.jobs_per_site < 1) fail("workload.preset.jobs_per_site", "must be >= 1");
    if (p.data_size && !(*p.data_size >= 0.0)) fail("workload.preset.data_size", "must be >= 0");
    if (p.data_site && !endpoints.count(*p.data_site))
      fail("workload.preset.data_site", "undefined site '" + *p.data_site + "'");
    if (p.origin && !site_ids.count(*p.origin)) fail("workload.preset.origin", "undefined site '" + *p.origin + "'");
    if (p.user && !user_ids.count(*p.user)) fail("workload.preset.user", "undefined user '" + *p.user + "'");
    if (s.users.empty()) fail("users", "a workload preset needs at least one user");
  }
  for (std::size_t i = 0; i < s.workload.bursts.size(); ++i) {
    const auto& b = s.workload.bursts[i];
    const auto field = indexed("workload.bursts", i);
    if (!(b.time >= 0.0)) fail(field + ".time", "must be >= 0");
    if (!user_ids.count(b.user)) fail(field + ".user", "undefined user '" + b.user + "'");
    if (!site_ids.count(b.site)) fail(field + ".site", "undefined site '" + b.site + "'");
    if (b.count < 1) fail(field + ".count", "must be >= 1");
    if (b.repeat < 1) fail(field + ".repeat", "must be >= 1");
    if (!(b.interval >= 0.0)) fail(field + ".interval", "must be >= 0");
    if (!(b.job.compute >= 0.0)) fail(field + ".compute", "must be >= 0");
    if (b.job.processors < 1) fail(field + ".processors", "must be >= 1");
    if (!(b.job.data_size >= 0.0)) fail(field + ".data_size", "must be >= 0");
    if (!b.job.data_site.empty() && !endpoints.count(b.job.data_site))
      fail(field + ".data_site", "undefined site '" + b.job.data_site + "'");
  }

  try {
    validate(s.scheduler.kind, s.scheduler.queue);
  } catch (const ValidationError& e) {
    fail("scheduler.queue", e.what());
  }
  const auto& d = s.scheduler.diana;
  if (!(d.poll_interval > 0.0)) fail("scheduler.poll_interval", "must be > 0");
  if (d.queue_weight < 0.0) fail("scheduler.queue_weight", "must be >= 0");
  if (d.cost_weight < 0.0) fail("scheduler.cost_weight", "must be >= 0");
  if (d.max_migrations < 0) fail("scheduler.max_migrations", "must be >= 0");
  check_weights(d.weights.compute_intensive, "weights.compute_intensive");
  check_weights(d.weights.data_intensive, "weights.data_intensive");
  check_weights(d.weights.mixed, "weights.mixed");
  if (!(d.cost.reference_bandwidth > 0.0)) fail("cost.reference_bandwidth", "must be > 0");

  if (!(s.queue.thrs >= 0.0 && s.queue.thrs <= 1.0)) fail("queue.thrs", "must lie in [0, 1]");
  try {
    validate(s.queue);
  } catch (const ValidationError& e) {
    fail("queue", e.what());
  }

  if (!(s.discovery.echo_interval > 0.0)) fail("discovery.echo_interval", "must be > 0");
  if (!(s.discovery.echo_timeout >= 0.0)) fail("discovery.echo_timeout", "must be >= 0");
  if (s.discovery.retries < 1) fail("discovery.retries", "must be >= 1");
  if (!(s.rates.alpha > 0.0 && s.rates.alpha <= 1.0)) fail("rates.alpha", "must lie in (0, 1]");
  if (!(s.rates.window > 0.0)) fail("rates.window", "must be > 0");

  for (std::size_t i = 0; i < s.failures.size(); ++i) {
    const auto field = indexed("failures", i);
    if (!site_ids.count(s.failures[i].site)) fail(field + ".site", "undefined site '" + s.failures[i].site + "'");
    if (!(s.failures[i].time >= 0.0)) fail(field + ".time", "must be >= 0");
  }
  if (!(s.duration_cap > 0.0)) fail("duration_cap", "must be > 0");
}

// ---------------------------------------------------------------------------
// parsing

namespace {

using Marks = std::map<std::string, YAML::Mark>;

class Reader {
 public:
  explicit Reader(Marks& marks) : marks_(marks) {}

  void mark(const std::string& field, const YAML::Node& node) { marks_[field] = node.Mark(); }

  [[noreturn]] void error(const std::string& field, const YAML::Node& node, const std::string& message) const {
    throw ValidationError(location(node) + field + ": " + message);
  }

  void expect_map(const YAML::Node& node, const std::string& field) const {
    if (!node.IsMap()) error(field, node, "expected a mapping");
  }

  void expect_seq(const YAML::Node& node, const std::string& field) const {
    if (!node.IsSequence()) error(field, node, "expected a list");
  }

  void allow_keys(const YAML::Node& node, const std::string& field, std::initializer_list<std::string_view> allowed) {
    expect_map(node, field);
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        std::string list;
        for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
        error(join(field, key), kv.first, "unknown key (allowed: " + list + ")");
      }
    }
  }

  template <class T>
  bool read(const YAML::Node& map, const char* key, const std::string& field, T& out) {
    const YAML::Node node = map[key];
    if (!node) return false;
    const auto path = join(field, key);
    mark(path, node);
    if (!node.IsScalar()) error(path, node, "expected a scalar value");
    try {
      if constexpr (std::is_same_v<T, bool>) {
        out = node.as<bool>();
      } else if constexpr (std::is_same_v<T, int>) {
        const double v = node.as<double>();
        if (v != std::floor(v) || std::abs(v) > 2e9) error(path, node, "expected an integer");
        out = static_cast<int>(v);
      } else {
        out = node.as<T>();
      }
    } catch (const YAML::BadConversion&) {
      error(path, node, "cannot read value '" + node.Scalar() + "'");
    }
    return true;
  }

  template <class T>
  bool read(const YAML::Node& map, const char* key, const std::string& field, std::optional<T>& out) {
    T value{};
    if (!read(map, key, field, value)) return false;
    out = value;
    return true;
  }

  bool read_size(const YAML::Node& map, const char* key, const std::string& field, double& out) {
    std::string text;
    if (!read(map, key, field, text)) return false;
    try {
      out = parse_size(text);
    } catch (const ValidationError& e) {
      error(join(field, key), map[key], e.what());
    }
    return true;
  }

  template <class Enum, class Parse>
  bool read_enum(const YAML::Node& map, const char* key, const std::string& field, Enum& out, Parse parse) {
    std::string text;
    if (!read(map, key, field, text)) return false;
    try {
      out = parse(text);
    } catch (const ValidationError& e) {
      error(join(field, key), map[key], e.what());
    }
    return true;
  }

  static std::string join(const std::string& field, std::string_view key) {
    return field.empty() ? std::string(key) : field + "." + std::string(key);
  }

  static std::string location(const YAML::Node& node) {
    const auto m = node.Mark();
    if (m.is_null() || m.line < 0) return "";
    return "line " + std::to_string(m.line + 1) + ": ";
  }

  static std::string location(const YAML::Mark& m) {
    if (m.is_null() || m.line < 0) return "";
    return "line " + std::to_string(m.line + 1) + ": ";
  }

 private:
  Marks& marks_;
};

NetworkLink read_link(Reader& r, const YAML::Node& node, const std::string& field, bool endpoints) {
  if (endpoints)
    r.allow_keys(node, field, {"from", "to", "bandwidth", "latency", "load"});
  else
    r.allow_keys(node, field, {"bandwidth", "latency", "load"});
  r.mark(field, node);
  NetworkLink link;
  if (endpoints) {
    if (!r.read(node, "from", field, link.from_site)) r.error(field + ".from", node, "is required");
    if (!r.read(node, "to", field, link.to_site)) r.error(field + ".to", node, "is required");
  }
  if (!r.read(node, "bandwidth", field, link.bandwidth)) r.error(field + ".bandwidth", node, "is required");
  r.read(node, "latency", field, link.latency);
  r.read(node, "load", field, link.background_load);
  return link;
}

CostWeights read_weights(Reader& r, const YAML::Node& node, const std::string& field, CostWeights w) {
  r.allow_keys(node, field, {"compute", "transfer", "network"});
  r.mark(field, node);
  r.read(node, "compute", field, w.compute);
  r.read(node, "transfer", field, w.transfer);
  r.read(node, "network", field, w.network);
  return w;
}

Scenario read_scenario(Reader& r, const YAML::Node& root) {
  Scenario s;
  r.allow_keys(root, "", {"name", "topology", "sites", "storage", "default_link", "links", "users", "workload",
                          "scheduler", "queue", "weights", "cost", "discovery", "rates", "failures",
                          "duration_cap"});
  r.read(root, "name", "", s.name);

  if (const auto node = root["topology"]) {
    r.allow_keys(node, "topology", {"preset", "count", "nodes", "node_scale", "power"});
    r.mark("topology", node);
    if (!r.read(node, "preset", "topology", s.topology.preset)) r.error("topology.preset", node, "is required");
    r.read(node, "count", "topology", s.topology.count);
    r.read(node, "nodes", "topology", s.topology.nodes);
    r.read(node, "node_scale", "topology", s.topology.node_scale);
    r.read(node, "power", "topology", s.topology.power);
  }

  if (const auto node = root["sites"]) {
    r.expect_seq(node, "sites");
    r.mark("sites", node);
    for (std::size_t i = 0; i < node.size(); ++i) {
      const auto field = indexed("sites", i);
      const auto item = node[i];
      r.allow_keys(item, field, {"id", "nodes", "power"});
      r.mark(field, item);
      SiteSpec site;
      if (!r.read(item, "id", field, site.id)) r.error(field + ".id", item, "is required");
      r.read(item, "nodes", field, site.nodes);
      r.read(item, "power", field, site.power);
      s.sites.push_back(site);
    }
  }

  if (const auto node = root["storage"]) {
    r.expect_seq(node, "storage");
    for (std::size_t i = 0; i < node.size(); ++i) {
      r.mark(indexed("storage", i), node[i]);
      s.storage.push_back(node[i].as<std::string>());
    }
  }

  if (const auto node = root["default_link"]) s.default_link = read_link(r, node, "default_link", false);
  if (const auto node = root["links"]) {
    r.expect_seq(node, "links");
    for (std::size_t i = 0; i < node.size(); ++i) s.links.push_back(read_link(r, node[i], indexed("links", i), true));
  }

  if (const auto node = root["users"]) {
    r.expect_seq(node, "users");
    for (std::size_t i = 0; i < node.size(); ++i) {
      const auto field = indexed("users", i);
      const auto item = node[i];
      r.allow_keys(item, field, {"id", "quota"});
      r.mark(field, item);
      UserProfile user;
      if (!r.read(item, "id", field, user.user_id)) r.error(field + ".id", item, "is required");
      r.read(item, "quota", field, user.quota);
      s.users.push_back(user);
    }
  }

  if (const auto node = root["workload"]) {
    r.allow_keys(node, "workload", {"preset", "bursts"});
    if (const auto preset = node["preset"]) {
      auto& p = s.workload.preset;
      const std::string field = "workload.preset";
      if (preset.IsScalar()) {
        r.read(node, "preset", "workload", p.name);
        r.mark(field + ".name", preset);
      } else {
        r.allow_keys(preset, field,
                     {"name", "jobs", "load", "burst_size", "mean_compute", "per_class", "jobs_per_site", "data_size",
                      "data_site", "origin", "user"});
        if (!r.read(preset, "name", field, p.name)) r.error(field + ".name", preset, "is required");
        r.read(preset, "jobs", field, p.jobs);
        r.read(preset, "load", field, p.load);
        r.read(preset, "burst_size", field, p.burst_size);
        r.read(preset, "mean_compute", field, p.mean_compute);
        r.read(preset, "per_class", field, p.per_class);
        r.read(preset, "jobs_per_site", field, p.jobs_per_site);
        double size = 0.0;
        if (r.read_size(preset, "data_size", field, size)) p.data_size = size;
        r.read(preset, "data_site", field, p.data_site);
        r.read(preset, "origin", field, p.origin);
        r.read(preset, "user", field, p.user);
      }
    }
    if (const auto bursts = node["bursts"]) {
      r.expect_seq(bursts, "workload.bursts");
      for (std::size_t i = 0; i < bursts.size(); ++i) {
        const auto field = indexed("workload.bursts", i);
        const auto item = bursts[i];
        r.allow_keys(item, field,
                     {"time", "user", "site", "count", "compute", "processors", "data_size", "data_site", "kind",
                      "repeat", "interval"});
        r.mark(field, item);
        BurstSpec b;
        r.read(item, "time", field, b.time);
        if (!r.read(item, "user", field, b.user)) r.error(field + ".user", item, "is required");
        if (!r.read(item, "site", field, b.site)) r.error(field + ".site", item, "is required");
        r.read(item, "count", field, b.count);
        r.read(item, "compute", field, b.job.compute);
        r.read(item, "processors", field, b.job.processors);
        r.read_size(item, "data_size", field, b.job.data_size);
        r.read(item, "data_site", field, b.job.data_site);
        r.read_enum(item, "kind", field, b.job.kind, parse_job_kind);
        r.read(item, "repeat", field, b.repeat);
        r.read(item, "interval", field, b.interval);
        s.workload.bursts.push_back(b);
      }
    }
  }

  if (const auto node = root["scheduler"]) {
    const std::string field = "scheduler";
    r.allow_keys(node, field,
                 {"kind", "queue", "placement", "migration", "poll_interval", "comparator", "queue_weight",
                  "cost_weight", "max_migrations"});
    auto& d = s.scheduler.diana;
    r.read_enum(node, "kind", field, s.scheduler.kind, parse_scheduler_kind);
    r.read_enum(node, "queue", field, s.scheduler.queue, parse_discipline);
    r.read_enum(node, "placement", field, d.placement, parse_placement);
    r.read(node, "migration", field, d.migration);
    r.read(node, "poll_interval", field, d.poll_interval);
    r.read_enum(node, "comparator", field, d.comparator, parse_migration_comparator);
    r.read(node, "queue_weight", field, d.queue_weight);
    r.read(node, "cost_weight", field, d.cost_weight);
    r.read(node, "max_migrations", field, d.max_migrations);
  }

  if (const auto node = root["queue"]) {
    const std::string field = "queue";
    r.allow_keys(node, field, {"thrs", "bands", "batch_size", "migration_policy", "migration_cutoff"});
    r.read(node, "thrs", field, s.queue.thrs);
    if (const auto bands = node["bands"]) {
      r.mark("queue.bands", bands);
      r.expect_seq(bands, "queue.bands");
      s.queue.band_boundaries.clear();
      for (const auto& b : bands) {
        try {
          s.queue.band_boundaries.push_back(b.as<double>());
        } catch (const YAML::BadConversion&) {
          r.error("queue.bands", b, "expected numbers");
        }
      }
    }
    int batch = static_cast<int>(s.queue.batch_size);
    if (r.read(node, "batch_size", field, batch)) {
      if (batch < 1) r.error("queue.batch_size", node["batch_size"], "must be >= 1");
      s.queue.batch_size = static_cast<std::size_t>(batch);
    }
    r.read_enum(node, "migration_policy", field, s.queue.migration_policy, parse_migration_policy);
    r.read(node, "migration_cutoff", field, s.queue.migration_cutoff);
  }

  if (const auto node = root["weights"]) {
    r.allow_keys(node, "weights", {"compute_intensive", "data_intensive", "mixed"});
    auto& w = s.scheduler.diana.weights;
    if (node["compute_intensive"])
      w.compute_intensive = read_weights(r, node["compute_intensive"], "weights.compute_intensive", w.compute_intensive);
    if (node["data_intensive"])
      w.data_intensive = read_weights(r, node["data_intensive"], "weights.data_intensive", w.data_intensive);
    if (node["mixed"]) w.mixed = read_weights(r, node["mixed"], "weights.mixed", w.mixed);
  }

  if (const auto node = root["cost"]) {
    r.allow_keys(node, "cost", {"reference_bandwidth"});
    r.read(node, "reference_bandwidth", "cost", s.scheduler.diana.cost.reference_bandwidth);
  }

  if (const auto node = root["discovery"]) {
    r.allow_keys(node, "discovery", {"echo_interval", "echo_timeout", "retries"});
    r.read(node, "echo_interval", "discovery", s.discovery.echo_interval);
    r.read(node, "echo_timeout", "discovery", s.discovery.echo_timeout);
    r.read(node, "retries", "discovery", s.discovery.retries);
  }

  if (const auto node = root["rates"]) {
    r.allow_keys(node, "rates", {"alpha", "window"});
    r.read(node, "alpha", "rates", s.rates.alpha);
    r.read(node, "window", "rates", s.rates.window);
  }

  if (const auto node = root["failures"]) {
    r.expect_seq(node, "failures");
    for (std::size_t i = 0; i < node.size(); ++i) {
      const auto field = indexed("failures", i);
      const auto item = node[i];
      r.allow_keys(item, field, {"site", "time", "action"});
      r.mark(field, item);
      FailureSpec f;
      if (!r.read(item, "site", field, f.site)) r.error(field + ".site", item, "is required");
      r.read(item, "time", field, f.time);
      r.read_enum(item, "action", field, f.action, parse_failure_action);
      s.failures.push_back(f);
    }
  }

  r.read(root, "duration_cap", "", s.duration_cap);
  return s;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ValidationError(Reader::location(e.mark) + "malformed scenario: " + e.msg);
  }
  if (!root || root.IsNull()) throw ValidationError("empty scenario");
  if (!root.IsMap()) throw ValidationError("scenario must be a mapping at the top level");

  Marks marks;
  Reader reader(marks);
  Scenario scenario = read_scenario(reader, root);
  try {
    validate(scenario);
  } catch (const FieldError& e) {
    // Point at the most specific field we saw while reading.
    std::string field = e.field();
    while (!field.empty()) {
      if (auto it = marks.find(field); it != marks.end()) throw ValidationError(Reader::location(it->second) + e.what());
      const auto cut = field.find_last_of(".[");
      field = cut == std::string::npos ? std::string() : field.substr(0, cut);
    }
    throw ValidationError(e.what());
  }
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_scenario(buffer.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// serialization

namespace {

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void emit_link(YAML::Emitter& out, const NetworkLink& link, bool endpoints) {
  out << YAML::Flow << YAML::BeginMap;
  if (endpoints) out << YAML::Key << "from" << YAML::Value << link.from_site << YAML::Key << "to" << YAML::Value << link.to_site;
  out << YAML::Key << "bandwidth" << YAML::Value << num(link.bandwidth);
  out << YAML::Key << "latency" << YAML::Value << num(link.latency);
  out << YAML::Key << "load" << YAML::Value << num(link.background_load);
  out << YAML::EndMap;
}

void emit_weights(YAML::Emitter& out, const char* key, const CostWeights& w) {
  out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "compute" << YAML::Value << num(w.compute);
  out << YAML::Key << "transfer" << YAML::Value << num(w.transfer);
  out << YAML::Key << "network" << YAML::Value << num(w.network);
  out << YAML::EndMap;
}

}  // namespace

std::string serialize_scenario(const Scenario& s) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << s.name;

  if (!s.topology.preset.empty()) {
    out << YAML::Key << "topology" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "preset" << YAML::Value << s.topology.preset;
    out << YAML::Key << "count" << YAML::Value << s.topology.count;
    out << YAML::Key << "nodes" << YAML::Value << s.topology.nodes;
    out << YAML::Key << "node_scale" << YAML::Value << s.topology.node_scale;
    out << YAML::Key << "power" << YAML::Value << num(s.topology.power);
    out << YAML::EndMap;
  }
  if (!s.sites.empty()) {
    out << YAML::Key << "sites" << YAML::Value << YAML::BeginSeq;
    for (const auto& site : s.sites) {
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "id" << YAML::Value << site.id;
      out << YAML::Key << "nodes" << YAML::Value << site.nodes;
      out << YAML::Key << "power" << YAML::Value << num(site.power) << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  if (!s.storage.empty()) {
    out << YAML::Key << "storage" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto& id : s.storage) out << id;
    out << YAML::EndSeq;
  }
  if (s.default_link) {
    out << YAML::Key << "default_link" << YAML::Value;
    emit_link(out, *s.default_link, false);
  }
  if (!s.links.empty()) {
    out << YAML::Key << "links" << YAML::Value << YAML::BeginSeq;
    for (const auto& link : s.links) emit_link(out, link, true);
    out << YAML::EndSeq;
  }
  if (!s.users.empty()) {
    out << YAML::Key << "users" << YAML::Value << YAML::BeginSeq;
    for (const auto& u : s.users)
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "id" << YAML::Value << u.user_id << YAML::Key << "quota"
          << YAML::Value << num(u.quota) << YAML::EndMap;
    out << YAML::EndSeq;
  }

  out << YAML::Key << "workload" << YAML::Value << YAML::BeginMap;
  const auto& p = s.workload.preset;
  if (!p.name.empty()) {
    out << YAML::Key << "preset" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << p.name;
    if (p.jobs) out << YAML::Key << "jobs" << YAML::Value << *p.jobs;
    if (p.load) out << YAML::Key << "load" << YAML::Value << num(*p.load);
    if (p.burst_size) out << YAML::Key << "burst_size" << YAML::Value << *p.burst_size;
    if (p.mean_compute) out << YAML::Key << "mean_compute" << YAML::Value << num(*p.mean_compute);
    if (p.per_class) out << YAML::Key << "per_class" << YAML::Value << *p.per_class;
    if (p.jobs_per_site) out << YAML::Key << "jobs_per_site" << YAML::Value << *p.jobs_per_site;
    if (p.data_size) out << YAML::Key << "data_size" << YAML::Value << num(*p.data_size);
    if (p.data_site) out << YAML::Key << "data_site" << YAML::Value << *p.data_site;
    if (p.origin) out << YAML::Key << "origin" << YAML::Value << *p.origin;
    if (p.user) out << YAML::Key << "user" << YAML::Value << *p.user;
    out << YAML::EndMap;
  }
  out << YAML::Key << "bursts" << YAML::Value << YAML::BeginSeq;
  for (const auto& b : s.workload.bursts) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "time" << YAML::Value << num(b.time);
    out << YAML::Key << "user" << YAML::Value << b.user;
    out << YAML::Key << "site" << YAML::Value << b.site;
    out << YAML::Key << "count" << YAML::Value << b.count;
    out << YAML::Key << "compute" << YAML::Value << num(b.job.compute);
    out << YAML::Key << "processors" << YAML::Value << b.job.processors;
    out << YAML::Key << "data_size" << YAML::Value << num(b.job.data_size);
    if (!b.job.data_site.empty()) out << YAML::Key << "data_site" << YAML::Value << b.job.data_site;
    out << YAML::Key << "kind" << YAML::Value << std::string(to_string(b.job.kind));
    out << YAML::Key << "repeat" << YAML::Value << b.repeat;
    out << YAML::Key << "interval" << YAML::Value << num(b.interval);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;

  const auto& d = s.scheduler.diana;
  out << YAML::Key << "scheduler" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << std::string(to_string(s.scheduler.kind));
  out << YAML::Key << "queue" << YAML::Value << std::string(to_string(s.scheduler.queue));
  out << YAML::Key << "placement" << YAML::Value << std::string(to_string(d.placement));
  out << YAML::Key << "migration" << YAML::Value << d.migration;
  out << YAML::Key << "poll_interval" << YAML::Value << num(d.poll_interval);
  out << YAML::Key << "comparator" << YAML::Value << std::string(to_string(d.comparator));
  out << YAML::Key << "queue_weight" << YAML::Value << num(d.queue_weight);
  out << YAML::Key << "cost_weight" << YAML::Value << num(d.cost_weight);
  out << YAML::Key << "max_migrations" << YAML::Value << d.max_migrations;
  out << YAML::EndMap;

  out << YAML::Key << "queue" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "thrs" << YAML::Value << num(s.queue.thrs);
  out << YAML::Key << "bands" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (double b : s.queue.band_boundaries) out << num(b);
  out << YAML::EndSeq;
  out << YAML::Key << "batch_size" << YAML::Value << s.queue.batch_size;
  out << YAML::Key << "migration_policy" << YAML::Value << std::string(to_string(s.queue.migration_policy));
  out << YAML::Key << "migration_cutoff" << YAML::Value << num(s.queue.migration_cutoff);
  out << YAML::EndMap;

  out << YAML::Key << "weights" << YAML::Value << YAML::BeginMap;
  emit_weights(out, "compute_intensive", d.weights.compute_intensive);
  emit_weights(out, "data_intensive", d.weights.data_intensive);
  emit_weights(out, "mixed", d.weights.mixed);
  out << YAML::EndMap;

  out << YAML::Key << "cost" << YAML::Value << YAML::Flow << YAML::BeginMap << YAML::Key << "reference_bandwidth"
      << YAML::Value << num(d.cost.reference_bandwidth) << YAML::EndMap;

  out << YAML::Key << "discovery" << YAML::Value << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "echo_interval" << YAML::Value << num(s.discovery.echo_interval);
  out << YAML::Key << "echo_timeout" << YAML::Value << num(s.discovery.echo_timeout);
  out << YAML::Key << "retries" << YAML::Value << s.discovery.retries;
  out << YAML::EndMap;

  out << YAML::Key << "rates" << YAML::Value << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "alpha" << YAML::Value << num(s.rates.alpha);
  out << YAML::Key << "window" << YAML::Value << num(s.rates.window);
  out << YAML::EndMap;

  if (!s.failures.empty()) {
    out << YAML::Key << "failures" << YAML::Value << YAML::BeginSeq;
    for (const auto& f : s.failures) {
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "site" << YAML::Value << f.site;
      out << YAML::Key << "time" << YAML::Value << num(f.time);
      out << YAML::Key << "action" << YAML::Value << std::string(to_string(f.action)) << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  out << YAML::Key << "duration_cap" << YAML::Value << num(s.duration_cap);
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace diana
