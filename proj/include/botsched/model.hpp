#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace botsched {

// Money is integer currency units, time is integer seconds. No floating point
// enters the cost or makespan model.
using Seconds = std::int64_t;
using Money = std::int64_t;
using AppId = std::size_t;
using TypeId = std::size_t;
using TaskId = std::size_t;
using SlotId = std::size_t;

inline constexpr Seconds kDefaultBillingQuantum = 3600;

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Application {
  AppId id = 0;
  std::string name;
};

struct Task {
  TaskId id = 0;
  AppId app_id = 0;
  std::int64_t size = 1;
};

struct InstanceType {
  TypeId id = 0;
  std::string name;
  Money cost_per_hour = 1;
  // perf[j]: seconds to process one size unit of a task of application j.
  std::vector<Seconds> perf;
};

struct Scenario {
  std::vector<Application> applications;
  std::vector<Task> tasks;
  std::vector<InstanceType> instance_types;
  Money budget = 0;
  Seconds startup_overhead_s = 0;
  Seconds billing_quantum_s = kDefaultBillingQuantum;

  const Task& task(TaskId id) const {
    if (id >= tasks.size()) throw ModelError("unknown task id " + std::to_string(id));
    return tasks[id];
  }
  const InstanceType& type(TypeId id) const {
    if (id >= instance_types.size()) throw ModelError("unknown instance type id " + std::to_string(id));
    return instance_types[id];
  }
};

struct VmSlot {
  SlotId id = 0;
  TypeId type_id = 0;
  std::vector<TaskId> task_ids;

  bool empty() const { return task_ids.empty(); }
};

struct ExecutionPlan {
  std::vector<VmSlot> slots;

  bool empty() const { return slots.empty(); }
};

struct VmUsage {
  SlotId vm_id = 0;
  TypeId type_id = 0;
  Seconds exec_s = 0;
  std::int64_t billed_quanta = 0;
  Money cost = 0;
};

struct PlanReport {
  Seconds makespan_s = 0;
  Money total_cost = 0;
  bool feasible = false;
  std::map<TypeId, std::size_t> vm_count_by_type;
  std::vector<VmUsage> per_vm;
};

// ---------------------------------------------------------------------------
// Validation verdicts. Violations are data; nothing here throws.

enum class ViolationKind {
  // plan
  missing_task,
  duplicate_task,
  unknown_task,
  unknown_type,
  over_budget,
  // scenario
  duplicate_instance_type,
  bad_size,
  bad_cost,
  bad_perf,
  perf_length,
  unknown_application,
  non_dense_id,
  bad_quantum,
  bad_budget,
  bad_overhead,
};

inline const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::missing_task: return "missing_task";
    case ViolationKind::duplicate_task: return "duplicate_task";
    case ViolationKind::unknown_task: return "unknown_task";
    case ViolationKind::unknown_type: return "unknown_type";
    case ViolationKind::over_budget: return "over_budget";
    case ViolationKind::duplicate_instance_type: return "duplicate_instance_type";
    case ViolationKind::bad_size: return "bad_size";
    case ViolationKind::bad_cost: return "bad_cost";
    case ViolationKind::bad_perf: return "bad_perf";
    case ViolationKind::perf_length: return "perf_length";
    case ViolationKind::unknown_application: return "unknown_application";
    case ViolationKind::non_dense_id: return "non_dense_id";
    case ViolationKind::bad_quantum: return "bad_quantum";
    case ViolationKind::bad_budget: return "bad_budget";
    case ViolationKind::bad_overhead: return "bad_overhead";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::vector<std::size_t> ids;  // offending task / type / slot ids, depending on kind
  std::string message;
};

struct Verdict {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [kind](const Violation& v) { return v.kind == kind; });
  }
  std::string describe() const {
    std::string out;
    for (const auto& v : violations) {
      if (!out.empty()) out += "; ";
      out += to_string(v.kind);
      out += ": ";
      out += v.message;
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Cost and time model.

inline Seconds task_exec_time(const InstanceType& it, const Task& t) {
  if (t.app_id >= it.perf.size()) {
    throw ModelError("task " + std::to_string(t.id) + " references application " +
                     std::to_string(t.app_id) + " outside the perf vector of " + it.name);
  }
  return it.perf[t.app_id] * t.size;
}

inline Seconds vm_exec_time(const VmSlot& vm, const Scenario& s) {
  const auto& it = s.type(vm.type_id);
  Seconds total = s.startup_overhead_s;
  for (TaskId id : vm.task_ids) total += task_exec_time(it, s.task(id));
  return total;
}

// Number of started billing quanta for a run of `exec` seconds.
inline std::int64_t billed_quanta(Seconds exec, Seconds quantum) {
  if (exec <= 0) return 0;
  return (exec + quantum - 1) / quantum;
}

inline Money vm_cost(const VmSlot& vm, const Scenario& s) {
  return billed_quanta(vm_exec_time(vm, s), s.billing_quantum_s) * s.type(vm.type_id).cost_per_hour;
}

inline Seconds plan_makespan(const ExecutionPlan& p, const Scenario& s) {
  Seconds makespan = 0;
  for (const auto& vm : p.slots) makespan = std::max(makespan, vm_exec_time(vm, s));
  return makespan;
}

inline Money plan_cost(const ExecutionPlan& p, const Scenario& s) {
  Money cost = 0;
  for (const auto& vm : p.slots) cost += vm_cost(vm, s);
  return cost;
}

// ---------------------------------------------------------------------------

inline Verdict validate_plan(const ExecutionPlan& p, const Scenario& s) {
  Verdict verdict;
  std::vector<std::size_t> seen(s.tasks.size(), 0);
  bool references_ok = true;
  for (const auto& vm : p.slots) {
    if (vm.type_id >= s.instance_types.size()) {
      verdict.violations.push_back({ViolationKind::unknown_type, {vm.id, vm.type_id},
                                    "slot " + std::to_string(vm.id) + " uses unknown type " +
                                        std::to_string(vm.type_id)});
      references_ok = false;
    }
    for (TaskId id : vm.task_ids) {
      if (id >= s.tasks.size()) {
        verdict.violations.push_back({ViolationKind::unknown_task, {id},
                                      "slot " + std::to_string(vm.id) + " holds unknown task " +
                                          std::to_string(id)});
        references_ok = false;
        continue;
      }
      ++seen[id];
    }
  }
  for (TaskId id = 0; id < seen.size(); ++id) {
    if (seen[id] == 0) {
      verdict.violations.push_back(
          {ViolationKind::missing_task, {id}, "task " + std::to_string(id) + " is not assigned"});
    } else if (seen[id] > 1) {
      verdict.violations.push_back({ViolationKind::duplicate_task, {id},
                                    "task " + std::to_string(id) + " is assigned " +
                                        std::to_string(seen[id]) + " times"});
    }
  }
  if (references_ok) {
    const Money cost = plan_cost(p, s);
    if (cost > s.budget) {
      verdict.violations.push_back({ViolationKind::over_budget, {},
                                    "plan cost " + std::to_string(cost) + " exceeds budget " +
                                        std::to_string(s.budget)});
    }
  }
  return verdict;
}

inline Verdict validate_scenario(const Scenario& s) {
  Verdict verdict;
  auto add = [&verdict](ViolationKind kind, std::vector<std::size_t> ids, std::string message) {
    verdict.violations.push_back({kind, std::move(ids), std::move(message)});
  };
  const std::size_t app_count = s.applications.size();

  for (std::size_t i = 0; i < s.applications.size(); ++i) {
    if (s.applications[i].id != i) {
      add(ViolationKind::non_dense_id, {i}, "application at position " + std::to_string(i) +
                                                " has id " + std::to_string(s.applications[i].id));
    }
  }
  for (std::size_t i = 0; i < s.tasks.size(); ++i) {
    const auto& t = s.tasks[i];
    if (t.id != i) {
      add(ViolationKind::non_dense_id, {i},
          "task at position " + std::to_string(i) + " has id " + std::to_string(t.id));
    }
    if (t.size < 1) {
      add(ViolationKind::bad_size, {t.id},
          "task " + std::to_string(t.id) + " has size " + std::to_string(t.size));
    }
    if (t.app_id >= app_count) {
      add(ViolationKind::unknown_application, {t.id},
          "task " + std::to_string(t.id) + " references application " + std::to_string(t.app_id));
    }
  }
  for (std::size_t i = 0; i < s.instance_types.size(); ++i) {
    const auto& it = s.instance_types[i];
    if (it.id != i) {
      add(ViolationKind::non_dense_id, {i},
          "instance type at position " + std::to_string(i) + " has id " + std::to_string(it.id));
    }
    if (it.cost_per_hour < 1) {
      add(ViolationKind::bad_cost, {i}, it.name + " costs " + std::to_string(it.cost_per_hour));
    }
    if (it.perf.size() != app_count) {
      add(ViolationKind::perf_length, {i},
          it.name + " has " + std::to_string(it.perf.size()) + " perf entries for " +
              std::to_string(app_count) + " applications");
    }
    for (std::size_t j = 0; j < it.perf.size(); ++j) {
      if (it.perf[j] < 1) {
        add(ViolationKind::bad_perf, {i, j},
            it.name + " perf for application " + std::to_string(j) + " is " +
                std::to_string(it.perf[j]));
      }
    }
  }
  for (std::size_t i = 0; i < s.instance_types.size(); ++i) {
    for (std::size_t j = i + 1; j < s.instance_types.size(); ++j) {
      const auto& a = s.instance_types[i];
      const auto& b = s.instance_types[j];
      if (a.cost_per_hour == b.cost_per_hour && a.perf == b.perf) {
        add(ViolationKind::duplicate_instance_type, {i, j},
            a.name + " and " + b.name + " have identical cost and performance");
      }
    }
  }
  if (s.billing_quantum_s < 1) {
    add(ViolationKind::bad_quantum, {}, "billing quantum is " + std::to_string(s.billing_quantum_s));
  }
  if (s.budget < 0) add(ViolationKind::bad_budget, {}, "budget is " + std::to_string(s.budget));
  if (s.startup_overhead_s < 0) {
    add(ViolationKind::bad_overhead, {},
        "startup overhead is " + std::to_string(s.startup_overhead_s));
  }
  return verdict;
}

// Drops slots without tasks. Slot ids are renumbered densely in order.
inline ExecutionPlan prune_empty_slots(ExecutionPlan p) {
  std::erase_if(p.slots, [](const VmSlot& vm) { return vm.empty(); });
  for (std::size_t i = 0; i < p.slots.size(); ++i) p.slots[i].id = i;
  return p;
}

}  // namespace botsched
