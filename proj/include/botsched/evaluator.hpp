#pragma once

#include <algorithm>
#include <vector>

#include "model.hpp"

namespace botsched {

struct TaskRun {
  TaskId task_id = 0;
  Seconds start_s = 0;
  Seconds end_s = 0;
};

struct VmTimeline {
  SlotId vm_id = 0;
  Seconds boot_end_s = 0;  // boot occupies [0, boot_end_s)
  std::vector<TaskRun> events;

  Seconds end_s() const { return events.empty() ? boot_end_s : events.back().end_s; }
};

namespace detail {

inline void require_well_formed(const ExecutionPlan& p, const Scenario& s) {
  Verdict v = validate_plan(p, s);
  std::erase_if(v.violations, [](const Violation& x) { return x.kind == ViolationKind::over_budget; });
  if (!v.ok()) throw ModelError("cannot replay plan: " + v.describe());
}

}  // namespace detail

/// Back-to-back execution on each VM after boot, in assignment order.
inline std::vector<VmTimeline> build_timelines(const ExecutionPlan& p, const Scenario& s) {
  detail::require_well_formed(p, s);
  std::vector<VmTimeline> out;
  out.reserve(p.slots.size());
  for (const auto& vm : p.slots) {
    VmTimeline tl{vm.id, s.startup_overhead_s, {}};
    const auto& it = s.type(vm.type_id);
    Seconds clock = s.startup_overhead_s;
    for (TaskId id : vm.task_ids) {
      const Seconds end = clock + task_exec_time(it, s.task(id));
      tl.events.push_back({id, clock, end});
      clock = end;
    }
    out.push_back(std::move(tl));
  }
  return out;
}

/// Replays the plan and bills each VM from its timeline. Over-budget plans are
/// reported with feasible = false; malformed plans throw.
inline PlanReport evaluate(const ExecutionPlan& p, const Scenario& s) {
  const auto timelines = build_timelines(p, s);
  PlanReport report;
  for (std::size_t i = 0; i < timelines.size(); ++i) {
    const auto& vm = p.slots[i];
    const Seconds exec = timelines[i].end_s();
    const auto quanta = billed_quanta(exec, s.billing_quantum_s);
    const Money cost = quanta * s.type(vm.type_id).cost_per_hour;
    report.per_vm.push_back({vm.id, vm.type_id, exec, quanta, cost});
    report.makespan_s = std::max(report.makespan_s, exec);
    report.total_cost += cost;
    ++report.vm_count_by_type[vm.type_id];
  }
  report.feasible = report.total_cost <= s.budget;
  return report;
}

}  // namespace botsched
