#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "diana/queue_engine.hpp"
#include "diana/report.hpp"
#include "diana/scenario.hpp"
#include "diana/simulator.hpp"

namespace py = pybind11;
using namespace diana;

namespace {

py::dict summary_dict(const RunSummary& s) {
  py::dict d;
  d["label"] = s.label;
  d["scheduler"] = s.scheduler;
  d["queue"] = s.queue;
  d["sites"] = s.sites;
  d["jobs"] = s.jobs;
  d["completed"] = s.completed;
  d["failed_unreachable"] = s.failed_unreachable;
  d["rejected_unschedulable"] = s.rejected_unschedulable;
  d["mean_exec_time"] = s.mean_exec_time;
  d["total_exec_time"] = s.total_exec_time;
  d["mean_queue_time"] = s.mean_queue_time;
  d["total_queue_time"] = s.total_queue_time;
  d["mean_transfer_time"] = s.mean_transfer_time;
  d["makespan"] = s.makespan;
  d["message_count"] = s.message_count;
  d["discovery_messages"] = s.discovery_messages;
  d["messages_per_job"] = s.messages_per_job;
  d["migrations"] = s.migrations;
  d["migration_episodes"] = s.migration_episodes;
  d["mean_utilization"] = s.mean_utilization;
  d["workload_hash"] = s.workload_hash;
  return d;
}

py::dict job_dict(const JobMetrics& j) {
  py::dict d;
  d["job_id"] = j.job_id;
  d["user"] = j.user;
  d["site"] = j.site;
  d["submit"] = j.submit;
  d["scheduled"] = j.scheduled;
  d["started"] = j.started;
  d["completed"] = j.completed;
  d["queue_time"] = j.queue_time;
  d["exec_time"] = j.exec_time;
  d["migrations"] = j.migrations;
  d["status"] = std::string(to_string(j.status));
  d["transfer_time"] = j.transfer_time;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Peer-to-peer meta-scheduling simulator";

  // later registrations are tried first, so the subclass goes last
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<Scenario>(m, "Scenario")
      .def_readwrite("name", &Scenario::name)
      .def_property_readonly("sites", [](const Scenario& s) {
        std::vector<std::pair<std::string, int>> out;
        for (const auto& site : s.resolved_sites()) out.emplace_back(site.id, site.nodes);
        return out;
      })
      .def("with_axis", [](const Scenario& s, const std::string& axis, const std::string& value) {
        return apply_axis(s, axis, value);
      })
      .def("to_yaml", [](const Scenario& s) { return serialize_scenario(s); })
      .def("__eq__", [](const Scenario& a, const Scenario& b) { return a == b; });

  m.def("load_scenario", [](const std::filesystem::path& p) { return load_scenario(p); }, py::arg("path"));
  m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); }, py::arg("text"));

  m.def("threshold", py::overload_cast<double, double, double, double>(&threshold_n), py::arg("q"), py::arg("Q"),
        py::arg("t"), py::arg("T"));
  m.def("priority", &priority, py::arg("n"), py::arg("threshold"));
  m.def("congestion_ratio", &congestion_ratio, py::arg("arrival_rate"), py::arg("service_rate"));

  m.def(
      "run",
      [](const Scenario& s, std::uint64_t seed, const std::string& label) {
        RunMetrics metrics;
        {
          py::gil_scoped_release release;
          metrics = run(s, seed, RunOptions{label, false});
        }
        py::list jobs;
        for (const auto& j : metrics.jobs) jobs.append(job_dict(j));
        py::dict out;
        out["summary"] = summary_dict(metrics.summary);
        out["jobs"] = jobs;
        return out;
      },
      py::arg("scenario"), py::arg("seed"), py::arg("label") = "");

  m.def(
      "run_experiment",
      [](const Scenario& s, std::uint64_t seed, const std::filesystem::path& out, const std::string& label) {
        RunMetrics metrics;
        {
          py::gil_scoped_release release;
          metrics = run_experiment(s, seed, out, label);
        }
        return summary_dict(metrics.summary);
      },
      py::arg("scenario"), py::arg("seed"), py::arg("out"), py::arg("label") = "");

  m.def(
      "sweep",
      [](const Scenario& s, const std::string& axis, const std::vector<std::string>& values, std::uint64_t seed,
         const std::filesystem::path& out) {
        std::vector<SummaryRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_sweep(s, axis, values, seed, out);
        }
        py::list result;
        for (const auto& r : rows) {
          auto d = summary_dict(r.summary);
          d["axis"] = r.axis;
          d["value"] = r.value;
          result.append(d);
        }
        return result;
      },
      py::arg("scenario"), py::arg("axis"), py::arg("values"), py::arg("seed"), py::arg("out"));

  m.def(
      "compare",
      [](const std::vector<std::filesystem::path>& paths) { return compare(load_summaries(paths)); },
      py::arg("summaries"));

  m.attr("sweep_axes") = sweep_axes();
}
