#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "heuristic.hpp"
#include "model.hpp"

// Comparison strategies. Both provision a fixed fleet up front, then place
// tasks with the same assign/balance phases the heuristic uses. Slots are
// priced as one hour when provisioned; if the placed work overruns that and
// breaks the budget, the fleet is shrunk one slot at a time until it fits.
namespace botsched {

namespace detail {

inline SchedulerResult place_on_shrinking_fleet(const Scenario& s, std::vector<TypeId> fleet) {
  std::vector<TaskId> all_tasks(s.tasks.size());
  std::iota(all_tasks.begin(), all_tasks.end(), TaskId{0});
  std::size_t attempts = 0;
  while (!fleet.empty()) {
    ++attempts;
    ExecutionPlan p;
    for (TypeId type : fleet) p.slots.push_back(VmSlot{p.slots.size(), type, {}});
    Workspace ws(s, p);
    assign_into(ws, all_tasks, all_indices(ws));
    balance_in(ws, all_indices(ws));
    ExecutionPlan placed = prune_empty_slots(ws.to_plan());
    if (plan_cost(placed, s) <= s.budget) return SchedulerResult::feasible_plan(std::move(placed), attempts);
    fleet.pop_back();
  }
  return SchedulerResult::infeasible("no fleet size fits the budget", attempts);
}

}  // namespace detail

/// MI: spend the whole budget on the types that run the workload fastest.
inline SchedulerResult mi_plan(const Scenario& s) {
  if (auto v = validate_scenario(s); !v.ok()) throw ModelError("invalid scenario: " + v.describe());
  if (s.tasks.empty()) return SchedulerResult::feasible_plan({});
  const ExecutionPlan fleet_plan = add_vms({}, s, s.budget);
  if (fleet_plan.empty()) return SchedulerResult::infeasible("budget is below every hourly cost");
  std::vector<TypeId> fleet;
  for (const auto& vm : fleet_plan.slots) fleet.push_back(vm.type_id);
  return detail::place_on_shrinking_fleet(s, std::move(fleet));
}

/// Cheapest instance type (lowest id among equally cheap ones).
inline const InstanceType& cheapest_type(const std::vector<InstanceType>& catalog) {
  if (catalog.empty()) throw ModelError("empty instance catalog");
  return *std::min_element(catalog.begin(), catalog.end(), [](const InstanceType& a, const InstanceType& b) {
    return a.cost_per_hour != b.cost_per_hour ? a.cost_per_hour < b.cost_per_hour : a.id < b.id;
  });
}

/// MP: as many VMs of the cheapest type as the budget buys.
inline SchedulerResult mp_plan(const Scenario& s) {
  if (auto v = validate_scenario(s); !v.ok()) throw ModelError("invalid scenario: " + v.describe());
  if (s.tasks.empty()) return SchedulerResult::feasible_plan({});
  const auto& it = cheapest_type(s.instance_types);
  const auto count = std::min(static_cast<std::size_t>(s.budget / it.cost_per_hour), s.tasks.size());
  if (count == 0) return SchedulerResult::infeasible("budget is below the cheapest hourly cost");
  return detail::place_on_shrinking_fleet(s, std::vector<TypeId>(count, it.id));
}

}  // namespace botsched
