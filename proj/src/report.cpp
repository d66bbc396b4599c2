#include "diana/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace diana {

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 6);
  return std::string(buf, ptr);
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << quote(fields[i]);
  out << '\n';
}

// RFC 4180 records; returns false at end of input.
bool read_row(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool quoted = false;
  char c;
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw ValidationError("csv: unterminated quoted field");
  fields.push_back(std::move(field));
  return true;
}

double to_double(const std::string& text, const std::string& column) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ValidationError("csv column " + column + ": not a number '" + text + "'");
  return v;
}

std::optional<double> to_optional(const std::string& text, const std::string& column) {
  if (text.empty()) return std::nullopt;
  return to_double(text, column);
}

template <class Int>
Int to_int(const std::string& text, const std::string& column) {
  Int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ValidationError("csv column " + column + ": not an integer '" + text + "'");
  return v;
}

const std::vector<std::string> job_columns{"job_id",     "user",      "site",       "submit",
                                           "scheduled",  "started",   "completed",  "queue_time",
                                           "exec_time",  "migrations", "status",    "transfer_time"};

const std::vector<std::string> summary_columns{
    "label",          "scheduler",       "queue",           "sites",
    "jobs",           "completed",       "failed_unreachable", "rejected_unschedulable",
    "mean_exec_time", "total_exec_time", "mean_queue_time", "total_queue_time",
    "mean_transfer_time", "makespan",    "message_count",   "discovery_messages",
    "messages_per_job", "migrations",    "migration_episodes", "mean_utilization",
    "workload_hash"};

void expect_header(const std::vector<std::string>& got, const std::vector<std::string>& want, const char* what) {
  if (got != want) throw ValidationError(std::string(what) + ": unexpected header");
}

std::filesystem::path ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create directory '" + dir.string() + "': " + ec.message());
  return dir;
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  body(out);
  out.flush();
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace

void write_jobs_csv(std::ostream& out, const std::vector<JobMetrics>& jobs) {
  write_row(out, job_columns);
  for (const auto& j : jobs) {
    write_row(out, {j.job_id, j.user, j.site, format_number(j.submit), opt(j.scheduled), opt(j.started),
                    opt(j.completed), opt(j.queue_time), opt(j.exec_time), std::to_string(j.migrations),
                    std::string(to_string(j.status)), format_number(j.transfer_time)});
  }
}

std::vector<JobMetrics> parse_jobs_csv(std::istream& in) {
  std::vector<std::string> f;
  if (!read_row(in, f)) throw ValidationError("jobs.csv: missing header");
  expect_header(f, job_columns, "jobs.csv");
  std::vector<JobMetrics> out;
  while (read_row(in, f)) {
    if (f.size() != job_columns.size())
      throw ValidationError("jobs.csv line " + std::to_string(out.size() + 2) + ": expected " +
                            std::to_string(job_columns.size()) + " fields");
    JobMetrics j;
    j.job_id = f[0];
    j.user = f[1];
    j.site = f[2];
    j.submit = to_double(f[3], "submit");
    j.scheduled = to_optional(f[4], "scheduled");
    j.started = to_optional(f[5], "started");
    j.completed = to_optional(f[6], "completed");
    j.queue_time = to_optional(f[7], "queue_time");
    j.exec_time = to_optional(f[8], "exec_time");
    j.migrations = to_int<int>(f[9], "migrations");
    j.status = parse_job_status(f[10]);
    j.transfer_time = to_double(f[11], "transfer_time");
    out.push_back(std::move(j));
  }
  return out;
}

std::string SummaryRow::name() const {
  if (!axis.empty()) return axis + "=" + value;
  return summary.label.empty() ? summary.scheduler : summary.label;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  const bool swept = std::any_of(rows.begin(), rows.end(), [](const SummaryRow& r) { return !r.axis.empty(); });
  std::vector<std::string> header;
  if (swept) header = {"axis", "value"};
  header.insert(header.end(), summary_columns.begin(), summary_columns.end());
  write_row(out, header);
  for (const auto& r : rows) {
    const auto& s = r.summary;
    std::vector<std::string> f;
    if (swept) f = {r.axis, r.value};
    std::vector<std::string> rest{s.label,
                                  s.scheduler,
                                  s.queue,
                                  std::to_string(s.sites),
                                  std::to_string(s.jobs),
                                  std::to_string(s.completed),
                                  std::to_string(s.failed_unreachable),
                                  std::to_string(s.rejected_unschedulable),
                                  format_number(s.mean_exec_time),
                                  format_number(s.total_exec_time),
                                  format_number(s.mean_queue_time),
                                  format_number(s.total_queue_time),
                                  format_number(s.mean_transfer_time),
                                  format_number(s.makespan),
                                  std::to_string(s.message_count),
                                  std::to_string(s.discovery_messages),
                                  format_number(s.messages_per_job),
                                  std::to_string(s.migrations),
                                  std::to_string(s.migration_episodes),
                                  format_number(s.mean_utilization),
                                  s.workload_hash};
    f.insert(f.end(), rest.begin(), rest.end());
    write_row(out, f);
  }
}

std::vector<SummaryRow> parse_summary_csv(std::istream& in) {
  std::vector<std::string> f;
  if (!read_row(in, f)) throw ValidationError("summary.csv: missing header");
  const bool swept = !f.empty() && f[0] == "axis";
  std::vector<std::string> want;
  if (swept) want = {"axis", "value"};
  want.insert(want.end(), summary_columns.begin(), summary_columns.end());
  expect_header(f, want, "summary.csv");
  std::vector<SummaryRow> out;
  while (read_row(in, f)) {
    if (f.size() != want.size())
      throw ValidationError("summary.csv line " + std::to_string(out.size() + 2) + ": expected " +
                            std::to_string(want.size()) + " fields");
    SummaryRow r;
    std::size_t i = 0;
    if (swept) {
      r.axis = f[i++];
      r.value = f[i++];
    }
    auto& s = r.summary;
    s.label = f[i++];
    s.scheduler = f[i++];
    s.queue = f[i++];
    s.sites = to_int<int>(f[i++], "sites");
    s.jobs = to_int<int>(f[i++], "jobs");
    s.completed = to_int<int>(f[i++], "completed");
    s.failed_unreachable = to_int<int>(f[i++], "failed_unreachable");
    s.rejected_unschedulable = to_int<int>(f[i++], "rejected_unschedulable");
    s.mean_exec_time = to_double(f[i++], "mean_exec_time");
    s.total_exec_time = to_double(f[i++], "total_exec_time");
    s.mean_queue_time = to_double(f[i++], "mean_queue_time");
    s.total_queue_time = to_double(f[i++], "total_queue_time");
    s.mean_transfer_time = to_double(f[i++], "mean_transfer_time");
    s.makespan = to_double(f[i++], "makespan");
    s.message_count = to_int<std::uint64_t>(f[i++], "message_count");
    s.discovery_messages = to_int<std::uint64_t>(f[i++], "discovery_messages");
    s.messages_per_job = to_double(f[i++], "messages_per_job");
    s.migrations = to_int<int>(f[i++], "migrations");
    s.migration_episodes = to_int<int>(f[i++], "migration_episodes");
    s.mean_utilization = to_double(f[i++], "mean_utilization");
    s.workload_hash = f[i++];
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SummaryRow> load_summaries(const std::vector<std::filesystem::path>& paths) {
  std::vector<SummaryRow> out;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open summary '" + path.string() + "'");
    try {
      auto rows = parse_summary_csv(in);
      out.insert(out.end(), rows.begin(), rows.end());
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ": " + e.what());
    }
  }
  return out;
}

RunMetrics run_experiment(const Scenario& scenario, std::uint64_t seed, const std::filesystem::path& out_dir,
                          const std::string& label) {
  RunOptions options;
  options.label = label;
  options.record_trace = false;
  RunMetrics metrics = run(scenario, seed, options);
  ensure_dir(out_dir);
  write_file(out_dir / "jobs.csv", [&](std::ostream& o) { write_jobs_csv(o, metrics.jobs); });
  write_file(out_dir / "summary.csv", [&](std::ostream& o) { write_summary_csv(o, {{{}, {}, metrics.summary}}); });
  return metrics;
}

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes{"bandwidth", "sites", "scheduler", "queue", "thrs", "load"};
  return axes;
}

Scenario apply_axis(Scenario s, const std::string& axis, const std::string& value) {
  auto number = [&] {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
      throw ValidationError("axis " + axis + ": '" + value + "' is not a number");
    return v;
  };
  if (axis == "bandwidth") {
    const double bw = number();
    if (!s.default_link) s.default_link = NetworkLink{};
    s.default_link->bandwidth = bw;
    for (auto& link : s.links) link.bandwidth = bw;
  } else if (axis == "sites") {
    if (s.topology.preset != "uniform") throw ValidationError("axis sites needs topology preset uniform");
    const double n = number();
    if (n != static_cast<int>(n) || n < 1) throw ValidationError("axis sites: '" + value + "' is not a site count");
    s.topology.count = static_cast<int>(n);
  } else if (axis == "scheduler") {
    s.scheduler.kind = parse_scheduler_kind(value);
    if (s.scheduler.kind != SchedulerKind::diana && s.scheduler.queue == Discipline::priority_multiqueue)
      s.scheduler.queue = Discipline::fcfs;
  } else if (axis == "queue") {
    s.scheduler.queue = parse_discipline(value);
  } else if (axis == "thrs") {
    s.queue.thrs = number();
  } else if (axis == "load") {
    s.workload.preset.load = number();
  } else {
    throw ValidationError("unknown sweep axis '" + axis + "' (expected bandwidth, sites, scheduler, queue, thrs or load)");
  }
  validate(s);
  return s;
}

std::vector<SummaryRow> run_sweep(const Scenario& scenario, const std::string& axis,
                                  const std::vector<std::string>& values, std::uint64_t seed,
                                  const std::filesystem::path& out_dir) {
  if (values.empty()) throw ValidationError("sweep needs at least one value");
  std::vector<Scenario> points;
  for (const auto& v : values) points.push_back(apply_axis(scenario, axis, v));
  ensure_dir(out_dir);

  std::vector<std::future<RunSummary>> futures;
  for (std::size_t i = 0; i < points.size(); ++i) {
    futures.push_back(std::async(std::launch::async, [&, i] {
      const auto dir = out_dir / (axis + "-" + values[i]);
      return run_experiment(points[i], seed, dir, scenario.name).summary;
    }));
  }
  std::vector<SummaryRow> rows;
  for (std::size_t i = 0; i < futures.size(); ++i) rows.push_back({axis, values[i], futures[i].get()});
  write_file(out_dir / "summary.csv", [&](std::ostream& o) { write_summary_csv(o, rows); });
  return rows;
}

std::string compare(const std::vector<SummaryRow>& columns) {
  if (columns.size() < 2) throw ValidationError("compare needs at least two summaries");
  for (const auto& c : columns)
    if (c.summary.workload_hash != columns.front().summary.workload_hash)
      throw ValidationError("workload hash mismatch: '" + columns.front().name() + "' has " +
                            columns.front().summary.workload_hash + ", '" + c.name() + "' has " +
                            c.summary.workload_hash);

  using Getter = double (*)(const RunSummary&);
  const std::vector<std::pair<std::string, Getter>> metrics{
      {"jobs", [](const RunSummary& s) { return double(s.jobs); }},
      {"completed", [](const RunSummary& s) { return double(s.completed); }},
      {"failed_unreachable", [](const RunSummary& s) { return double(s.failed_unreachable); }},
      {"rejected_unschedulable", [](const RunSummary& s) { return double(s.rejected_unschedulable); }},
      {"mean_exec_time", [](const RunSummary& s) { return s.mean_exec_time; }},
      {"total_exec_time", [](const RunSummary& s) { return s.total_exec_time; }},
      {"mean_queue_time", [](const RunSummary& s) { return s.mean_queue_time; }},
      {"total_queue_time", [](const RunSummary& s) { return s.total_queue_time; }},
      {"mean_transfer_time", [](const RunSummary& s) { return s.mean_transfer_time; }},
      {"makespan", [](const RunSummary& s) { return s.makespan; }},
      {"message_count", [](const RunSummary& s) { return double(s.message_count); }},
      {"discovery_messages", [](const RunSummary& s) { return double(s.discovery_messages); }},
      {"messages_per_job", [](const RunSummary& s) { return s.messages_per_job; }},
      {"migrations", [](const RunSummary& s) { return double(s.migrations); }},
      {"migration_episodes", [](const RunSummary& s) { return double(s.migration_episodes); }},
      {"mean_utilization", [](const RunSummary& s) { return s.mean_utilization; }},
  };

  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header{"metric"};
  for (const auto& c : columns) header.push_back(c.name());
  for (std::size_t i = 1; i < columns.size(); ++i) header.push_back("ratio " + columns[i].name() + "/" + columns[0].name());
  table.push_back(header);
  for (const auto& [name, get] : metrics) {
    std::vector<std::string> row{name};
    for (const auto& c : columns) row.push_back(format_number(get(c.summary)));
    const double base = get(columns.front().summary);
    for (std::size_t i = 1; i < columns.size(); ++i)
      row.push_back(base != 0.0 ? format_number(get(columns[i].summary) / base) : "n/a");
    table.push_back(row);
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : table)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  std::ostringstream out;
  out << "workload " << columns.front().summary.workload_hash << "\n";
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << "  ";
      if (i == 0)
        out << std::left << std::setw(static_cast<int>(width[i])) << row[i];
      else
        out << std::right << std::setw(static_cast<int>(width[i])) << row[i];
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace diana
