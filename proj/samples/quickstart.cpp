// Builds a plan for the bundled two-type example and prints its timeline.

#include <iostream>

#include "botsched/botsched.hpp"

int main() {
  using namespace botsched;
  const Scenario s = parse_scenario(*fixture_document("paper-4g"), "paper-4g").scenario;

  const SchedulerResult result = find_plan(s);
  if (!result.feasible()) {
    std::cout << "infeasible: " << result.reason << '\n';
    return 1;
  }
  const PlanReport report = evaluate(*result.plan, s);
  std::cout << "cost " << report.total_cost << ", makespan " << report.makespan_s << " s\n";
  for (const auto& tl : build_timelines(*result.plan, s)) {
    const auto& vm = result.plan->slots[tl.vm_id];
    std::cout << "vm " << tl.vm_id << " (" << s.type(vm.type_id).name << "):";
    for (const auto& e : tl.events) std::cout << " t" << e.task_id << "[" << e.start_s << "," << e.end_s << ")";
    std::cout << '\n';
  }
  return 0;
}
