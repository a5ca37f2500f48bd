#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "botsched/model.hpp"

namespace botsched::testing {

// Catalog with the costs and per-unit times of the four instance types used
// throughout the experiments (it1 cheap and slow, it2..it4 equally priced).
inline std::vector<InstanceType> table1_catalog() {
  return {
      {0, "it1", 5, {20, 24, 22}},
      {1, "it2", 10, {11, 13, 12}},
      {2, "it3", 10, {10, 15, 9}},
      {3, "it4", 10, {10, 9, 12}},
  };
}

inline std::vector<Application> apps(std::size_t n) {
  std::vector<Application> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({i, "A" + std::to_string(i + 1)});
  return out;
}

// (app, size) pairs become tasks 0..n-1.
inline std::vector<Task> tasks(std::initializer_list<std::pair<AppId, std::int64_t>> spec) {
  std::vector<Task> out;
  for (auto [app, size] : spec) out.push_back({out.size(), app, size});
  return out;
}

inline std::vector<Task> uniform_tasks(std::size_t n, AppId app, std::int64_t size) {
  std::vector<Task> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({i, app, size});
  return out;
}

inline Scenario table1_scenario(std::vector<Task> ts, Money budget) {
  Scenario s;
  s.applications = apps(3);
  s.instance_types = table1_catalog();
  s.tasks = std::move(ts);
  s.budget = budget;
  return s;
}

// Three applications, `per_app` tasks each, sizes cycling 1..5.
inline Scenario table1_workload(std::size_t per_app, Money budget) {
  std::vector<Task> ts;
  for (AppId a = 0; a < 3; ++a)
    for (std::size_t k = 0; k < per_app; ++k) ts.push_back({ts.size(), a, static_cast<std::int64_t>(1 + k % 5)});
  return table1_scenario(std::move(ts), budget);
}

// One application, ten size-1 tasks; it1 costs 2 and takes 8 s per task,
// it2 costs 1 and takes 10 s.
inline Scenario two_type_example(Money budget = 2) {
  Scenario s;
  s.applications = apps(1);
  s.instance_types = {{0, "it1", 2, {8}}, {1, "it2", 1, {10}}};
  s.tasks = uniform_tasks(10, 0, 1);
  s.budget = budget;
  return s;
}

inline ExecutionPlan plan_of(std::initializer_list<std::pair<TypeId, std::vector<TaskId>>> slots) {
  ExecutionPlan p;
  for (const auto& [type, ids] : slots) p.slots.push_back({p.slots.size(), type, ids});
  return p;
}

struct RandomShape {
  std::size_t max_apps = 3;
  std::size_t max_types = 4;
  std::size_t max_tasks = 20;
  std::int64_t max_size = 5;
  Money max_cost = 10;
  Seconds max_perf = 30;
};

// Random valid scenario. Billing quanta are short relative to the workload so
// multi-quantum slots and rounding occur; budgets range from unaffordable to
// ample.
inline Scenario random_scenario(std::mt19937_64& rng, const RandomShape& shape = {}) {
  auto pick = [&rng](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  Scenario s;
  s.applications = apps(static_cast<std::size_t>(pick(1, static_cast<std::int64_t>(shape.max_apps))));
  const auto n_types = static_cast<std::size_t>(pick(1, static_cast<std::int64_t>(shape.max_types)));
  while (s.instance_types.size() < n_types) {
    InstanceType it{s.instance_types.size(), "t" + std::to_string(s.instance_types.size()), pick(1, shape.max_cost), {}};
    for (std::size_t j = 0; j < s.applications.size(); ++j) it.perf.push_back(pick(1, shape.max_perf));
    const bool duplicate = std::any_of(s.instance_types.begin(), s.instance_types.end(), [&](const InstanceType& o) {
      return o.cost_per_hour == it.cost_per_hour && o.perf == it.perf;
    });
    if (!duplicate) s.instance_types.push_back(std::move(it));
  }
  const auto n_tasks = static_cast<std::size_t>(pick(1, static_cast<std::int64_t>(shape.max_tasks)));
  for (std::size_t i = 0; i < n_tasks; ++i) {
    s.tasks.push_back({i, static_cast<AppId>(pick(0, static_cast<std::int64_t>(s.applications.size()) - 1)),
                       pick(1, shape.max_size)});
  }
  const Seconds quanta[] = {60, 120, 300, 600, 3600};
  s.billing_quantum_s = quanta[pick(0, 4)];
  s.startup_overhead_s = pick(0, 3) == 0 ? pick(1, 30) : 0;

  // Reference cost: everything on one VM of the cheapest type.
  const auto& cheap = *std::min_element(s.instance_types.begin(), s.instance_types.end(),
                                        [](const auto& a, const auto& b) { return a.cost_per_hour < b.cost_per_hour; });
  Seconds work = s.startup_overhead_s;
  for (const auto& t : s.tasks) work += cheap.perf[t.app_id] * t.size;
  const Money reference = billed_quanta(work, s.billing_quantum_s) * cheap.cost_per_hour;
  s.budget = pick(0, 3 * reference + shape.max_cost);
  return s;
}

// Random plan over a scenario: `slots` slots of random types, every task on a
// random slot. With `nonempty`, each slot receives at least one task (requires
// slots <= tasks).
inline ExecutionPlan random_plan(std::mt19937_64& rng, const Scenario& s, std::size_t slots, bool nonempty) {
  ExecutionPlan p;
  std::uniform_int_distribution<std::size_t> type_dist(0, s.instance_types.size() - 1);
  for (std::size_t i = 0; i < slots; ++i) p.slots.push_back({i, type_dist(rng), {}});
  std::vector<TaskId> order(s.tasks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_int_distribution<std::size_t> slot_dist(0, slots - 1);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t target = nonempty && k < slots ? k : slot_dist(rng);
    p.slots[target].task_ids.push_back(order[k]);
  }
  return p;
}

inline std::vector<TaskId> task_multiset(const ExecutionPlan& p) {
  std::vector<TaskId> all;
  for (const auto& vm : p.slots) all.insert(all.end(), vm.task_ids.begin(), vm.task_ids.end());
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace botsched::testing
