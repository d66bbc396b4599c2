#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "diana/scenario.hpp"
#include "diana/simulator.hpp"

namespace diana {

/// Six significant digits, shortest form, independent of the C locale.
std::string format_number(double value);

/// jobs.csv: job_id,user,site,submit,scheduled,started,completed,queue_time,
/// exec_time,migrations,status,transfer_time. Unset times are empty.
void write_jobs_csv(std::ostream& out, const std::vector<JobMetrics>& jobs);
std::vector<JobMetrics> parse_jobs_csv(std::istream& in);

/// One summary line; sweeps fill `axis` and `value`.
struct SummaryRow {
  std::string axis;
  std::string value;
  RunSummary summary;

  /// Column name used by compare.
  std::string name() const;
};

/// Writes the axis,value columns only when some row carries an axis.
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> parse_summary_csv(std::istream& in);
std::vector<SummaryRow> load_summaries(const std::vector<std::filesystem::path>& paths);

/// Runs once and writes jobs.csv and summary.csv into `out_dir`.
RunMetrics run_experiment(const Scenario& scenario, std::uint64_t seed, const std::filesystem::path& out_dir,
                          const std::string& label = {});

/// Sweep axes: bandwidth, sites, scheduler, queue, thrs, load.
const std::vector<std::string>& sweep_axes();

/// The scenario with one axis set to `value`. Throws ValidationError for an
/// unknown axis or a value the axis cannot take.
Scenario apply_axis(Scenario scenario, const std::string& axis, const std::string& value);

/// One run per value (in parallel); each point writes <out_dir>/<axis>-<value>/
/// and the combined rows go to <out_dir>/summary.csv.
std::vector<SummaryRow> run_sweep(const Scenario& scenario, const std::string& axis,
                                  const std::vector<std::string>& values, std::uint64_t seed,
                                  const std::filesystem::path& out_dir);

/// Side-by-side metrics with ratios against the first column. Needs at least
/// two columns; refuses columns whose workload hashes differ.
std::string compare(const std::vector<SummaryRow>& columns);

}  // namespace diana
