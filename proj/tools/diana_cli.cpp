// diana: run, sweep and compare meta-scheduling simulations.
#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "diana/report.hpp"
#include "diana/scenario.hpp"

namespace {

std::vector<std::string> split_values(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw diana::ValidationError("--values: empty entry in '" + text + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  if (out.empty()) throw diana::ValidationError("--values: no values given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peer-to-peer meta-scheduling simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::uint64_t seed = 1;
  std::string out_dir;
  std::string label;

  auto* run = app.add_subcommand("run", "Simulate one scenario");
  run->add_option("--scenario", scenario_path, "Scenario file (YAML)")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Workload seed")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--label", label, "Row label in summary.csv (default: scenario name)");

  std::string axis;
  std::string values;
  auto* sweep = app.add_subcommand("sweep", "Vary one axis and write one summary row per value");
  sweep->add_option("--scenario", scenario_path, "Scenario file (YAML)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--axis", axis, "bandwidth | sites | scheduler | queue | thrs | load")
      ->required()
      ->check(CLI::IsMember(diana::sweep_axes()));
  sweep->add_option("--values", values, "Comma-separated values")->required();
  sweep->add_option("--seed", seed, "Workload seed")->required();
  sweep->add_option("--out", out_dir, "Output directory")->required();

  std::vector<std::string> summaries;
  auto* cmp = app.add_subcommand("compare", "Compare summary.csv files side by side");
  cmp->add_option("summary", summaries, "summary.csv files")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.get_exit_code() ? e.get_exit_code() : 2;
  }

  try {
    if (*run) {
      const auto scenario = diana::load_scenario(scenario_path);
      const auto m = diana::run_experiment(scenario, seed, out_dir, label);
      const auto& s = m.summary;
      std::cout << s.label << ": " << s.completed << "/" << s.jobs << " completed, mean exec "
                << diana::format_number(s.mean_exec_time) << " s, mean queue " << diana::format_number(s.mean_queue_time)
                << " s, " << s.message_count << " messages -> " << out_dir << "\n";
    } else if (*sweep) {
      const auto scenario = diana::load_scenario(scenario_path);
      const auto rows = diana::run_sweep(scenario, axis, split_values(values), seed, out_dir);
      for (const auto& r : rows)
        std::cout << r.name() << ": mean exec " << diana::format_number(r.summary.mean_exec_time)
                  << " s, messages/job " << diana::format_number(r.summary.messages_per_job) << "\n";
      std::cout << "wrote " << out_dir << "/summary.csv\n";
    } else if (*cmp) {
      std::vector<std::filesystem::path> paths(summaries.begin(), summaries.end());
      std::cout << diana::compare(diana::load_summaries(paths));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
