#pragma once

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "evaluator.hpp"
#include "fixtures.hpp"
#include "heuristic.hpp"
#include "model.hpp"

// Scenario documents are JSON:
//
//   {
//     "name": "table1",
//     "applications": [{"name": "A1"}, ...],
//     "instance_types": [{"name": "it1", "cost_per_hour": 5, "perf": [20, 24, 22]}, ...],
//     "workload": [
//       {"application": "A1", "count": 250, "sizes": "uniform-levels(1,5)"},
//       {"application": "A2", "sizes": [3, 1, 4]}
//     ],
//     "defaults": {"startup_overhead_s": 0, "billing_quantum_s": 3600, "budget": 40}
//   }
//
// Tasks are numbered in workload order. "uniform-levels(lo,hi)" cycles through
// the sizes lo..hi, so a count divisible by the number of levels yields equal
// counts per size.
namespace botsched {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NamedScenario {
  std::string name;
  Scenario scenario;
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void fail_at(const std::string& origin, const std::string& pointer, const std::string& what) {
  throw ScenarioError(origin + ": " + (pointer.empty() ? "/" : pointer) + ": " + what);
}

inline const json& member(const json& obj, const char* key, const std::string& origin, const std::string& at) {
  if (!obj.is_object()) fail_at(origin, at, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail_at(origin, at, std::string("missing \"") + key + "\"");
  return *it;
}

inline std::int64_t integer(const json& v, const std::string& origin, const std::string& at) {
  if (!v.is_number_integer()) fail_at(origin, at, "expected an integer");
  return v.get<std::int64_t>();
}

inline std::string text(const json& v, const std::string& origin, const std::string& at) {
  if (!v.is_string()) fail_at(origin, at, "expected a string");
  return v.get<std::string>();
}

inline std::vector<std::int64_t> expand_sizes(const json& sizes, const json& entry, const std::string& origin,
                                              const std::string& at) {
  std::vector<std::int64_t> out;
  if (sizes.is_array()) {
    for (std::size_t k = 0; k < sizes.size(); ++k) out.push_back(integer(sizes[k], origin, at + "/sizes/" + std::to_string(k)));
    if (entry.contains("count") && integer(entry["count"], origin, at + "/count") != static_cast<std::int64_t>(out.size()))
      fail_at(origin, at + "/count", "does not match the length of the sizes list");
    return out;
  }
  const std::string spec = text(sizes, origin, at + "/sizes");
  static const std::regex pattern(R"(\s*uniform-levels\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*)");
  std::smatch m;
  if (!std::regex_match(spec, m, pattern))
    fail_at(origin, at + "/sizes", "unknown size distribution \"" + spec + "\"");
  const std::int64_t lo = std::stoll(m[1].str()), hi = std::stoll(m[2].str());
  if (lo > hi) fail_at(origin, at + "/sizes", "empty size range");
  const std::int64_t count = integer(member(entry, "count", origin, at), origin, at + "/count");
  if (count < 0) fail_at(origin, at + "/count", "negative task count");
  const std::int64_t levels = hi - lo + 1;
  for (std::int64_t k = 0; k < count; ++k) out.push_back(lo + k % levels);
  return out;
}

}  // namespace detail

/// Parses a scenario document. `origin` prefixes every diagnostic.
inline NamedScenario parse_scenario(const std::string& document, const std::string& origin = "<scenario>") {
  using detail::fail_at;
  using detail::integer;
  using detail::member;
  using detail::text;
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError(origin + ": " + e.what());
  }
  if (!root.is_object()) fail_at(origin, "", "expected an object");

  NamedScenario out;
  out.name = root.contains("name") ? text(root["name"], origin, "/name") : origin;
  Scenario& s = out.scenario;

  const auto& apps = member(root, "applications", origin, "");
  if (!apps.is_array()) fail_at(origin, "/applications", "expected an array");
  for (std::size_t i = 0; i < apps.size(); ++i) {
    const std::string at = "/applications/" + std::to_string(i);
    const auto& a = apps[i];
    std::string name = a.is_string() ? a.get<std::string>() : text(member(a, "name", origin, at), origin, at + "/name");
    for (const auto& prev : s.applications)
      if (prev.name == name) fail_at(origin, at, "duplicate application name \"" + name + "\"");
    s.applications.push_back({i, std::move(name)});
  }

  const auto& types = member(root, "instance_types", origin, "");
  if (!types.is_array()) fail_at(origin, "/instance_types", "expected an array");
  for (std::size_t i = 0; i < types.size(); ++i) {
    const std::string at = "/instance_types/" + std::to_string(i);
    const auto& t = types[i];
    InstanceType it;
    it.id = i;
    it.name = text(member(t, "name", origin, at), origin, at + "/name");
    it.cost_per_hour = integer(member(t, "cost_per_hour", origin, at), origin, at + "/cost_per_hour");
    const auto& perf = member(t, "perf", origin, at);
    if (!perf.is_array()) fail_at(origin, at + "/perf", "expected an array");
    for (std::size_t j = 0; j < perf.size(); ++j)
      it.perf.push_back(integer(perf[j], origin, at + "/perf/" + std::to_string(j)));
    for (const auto& prev : s.instance_types)
      if (prev.name == it.name) fail_at(origin, at, "duplicate instance type name \"" + it.name + "\"");
    s.instance_types.push_back(std::move(it));
  }

  if (root.contains("workload")) {
    const auto& work = root["workload"];
    if (!work.is_array()) fail_at(origin, "/workload", "expected an array");
    for (std::size_t i = 0; i < work.size(); ++i) {
      const std::string at = "/workload/" + std::to_string(i);
      const auto& entry = work[i];
      const std::string app = text(member(entry, "application", origin, at), origin, at + "/application");
      auto found = std::find_if(s.applications.begin(), s.applications.end(),
                                [&](const Application& a) { return a.name == app; });
      if (found == s.applications.end()) fail_at(origin, at + "/application", "unknown application \"" + app + "\"");
      for (std::int64_t size : detail::expand_sizes(member(entry, "sizes", origin, at), entry, origin, at))
        s.tasks.push_back(Task{s.tasks.size(), found->id, size});
    }
  }

  if (root.contains("defaults")) {
    const auto& d = root["defaults"];
    if (!d.is_object()) fail_at(origin, "/defaults", "expected an object");
    if (d.contains("startup_overhead_s"))
      s.startup_overhead_s = integer(d["startup_overhead_s"], origin, "/defaults/startup_overhead_s");
    if (d.contains("billing_quantum_s"))
      s.billing_quantum_s = integer(d["billing_quantum_s"], origin, "/defaults/billing_quantum_s");
    if (d.contains("budget")) s.budget = integer(d["budget"], origin, "/defaults/budget");
  }

  if (auto verdict = validate_scenario(s); !verdict.ok()) {
    std::string msg = origin + ": invalid scenario:";
    for (const auto& v : verdict.violations) {
      msg += "\n  ";
      msg += to_string(v.kind);
      msg += ": ";
      msg += v.message;
    }
    throw ScenarioError(msg);
  }
  return out;
}

/// Loads a scenario file, or a bundled fixture when `path` names one and no
/// such file exists.
inline NamedScenario load_scenario(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    if (auto doc = fixture_document(path)) return parse_scenario(*doc, path);
    throw ScenarioError(path + ": no such file or bundled fixture");
  }
  std::ifstream in(path);
  if (!in) throw ScenarioError(path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

// ---------------------------------------------------------------------------

inline nlohmann::json plan_to_json(const ExecutionPlan& p, const Scenario& s) {
  nlohmann::json slots = nlohmann::json::array();
  for (const auto& vm : p.slots) {
    slots.push_back({{"id", vm.id}, {"type", s.type(vm.type_id).name}, {"tasks", vm.task_ids}});
  }
  return {{"slots", slots}};
}

inline nlohmann::json report_to_json(const PlanReport& r, const Scenario& s) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [type, n] : r.vm_count_by_type) counts[s.type(type).name] = n;
  nlohmann::json vms = nlohmann::json::array();
  for (const auto& u : r.per_vm) {
    vms.push_back({{"id", u.vm_id},
                   {"type", s.type(u.type_id).name},
                   {"exec_s", u.exec_s},
                   {"billed_hours", u.billed_quanta},
                   {"cost", u.cost}});
  }
  return {{"makespan_s", r.makespan_s},
          {"total_cost", r.total_cost},
          {"feasible", r.feasible},
          {"vm_count_by_type", counts},
          {"per_vm", vms}};
}

inline nlohmann::json result_to_json(const SchedulerResult& r, const Scenario& s, const std::string& scheduler) {
  nlohmann::json out{{"scheduler", scheduler}, {"budget", s.budget}, {"feasible", r.feasible()},
                     {"iterations", r.iterations}};
  if (r.feasible()) {
    out["plan"] = plan_to_json(*r.plan, s);
    out["report"] = report_to_json(evaluate(*r.plan, s), s);
  } else {
    out["reason"] = r.reason;
  }
  if (!r.trace.empty()) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& e : r.trace) trace.push_back({{"phase", e.phase}, {"cost", e.cost}, {"makespan_s", e.makespan_s}});
    out["trace"] = trace;
  }
  return out;
}

}  // namespace botsched
