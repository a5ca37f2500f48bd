#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "heuristic.hpp"
#include "model.hpp"

namespace botsched {

struct OracleLimits {
  std::size_t max_tasks = 8;
  std::size_t max_types = 3;
  std::size_t max_vms_per_type = 8;
  std::size_t max_total_vms = 8;
};

class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Depth-first enumeration of every plan up to slot relabeling: each task goes
// to an open slot or opens one new slot of some type. Empty slots never help,
// so they are not enumerated. Partial cost and partial makespan only grow as
// tasks are added, which makes both safe pruning bounds.
class ExactSearch {
 public:
  ExactSearch(const Scenario& s, const OracleLimits& lim) : s_(s), lim_(lim) {
    order_.resize(s.tasks.size());
    std::iota(order_.begin(), order_.end(), TaskId{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](TaskId a, TaskId b) { return s.tasks[a].size > s.tasks[b].size; });
    per_type_.assign(s.instance_types.size(), 0);
  }

  bool run() {
    dfs(0, 0);
    return found_;
  }

  ExecutionPlan best_plan() const {
    ExecutionPlan p;
    for (std::size_t i = 0; i < best_.size(); ++i) {
      VmSlot vm{i, best_[i].type, best_[i].tasks};
      std::sort(vm.task_ids.begin(), vm.task_ids.end());
      p.slots.push_back(std::move(vm));
    }
    return p;
  }

 private:
  struct Open {
    TypeId type;
    Seconds load;
    std::vector<TaskId> tasks;
  };

  Money cost_at(TypeId type, Seconds load) const {
    return billed_quanta(load, s_.billing_quantum_s) * s_.instance_types[type].cost_per_hour;
  }

  bool dominated(Seconds makespan, Money cost) const {
    if (cost > s_.budget) return true;
    if (!found_) return false;
    return makespan != best_makespan_ ? makespan > best_makespan_ : cost >= best_cost_;
  }

  void dfs(std::size_t depth, Money cost) {
    const Seconds makespan = current_makespan();
    if (dominated(makespan, cost)) return;
    if (depth == order_.size()) {
      found_ = true;
      best_makespan_ = makespan;
      best_cost_ = cost;
      best_ = open_;
      return;
    }
    const TaskId t = order_[depth];
    for (std::size_t i = 0; i < open_.size(); ++i) {
      auto& slot = open_[i];
      const Seconds run = task_exec_time(s_.instance_types[slot.type], s_.tasks[t]);
      const Money delta = cost_at(slot.type, slot.load + run) - cost_at(slot.type, slot.load);
      slot.load += run;
      slot.tasks.push_back(t);
      dfs(depth + 1, cost + delta);
      open_[i].tasks.pop_back();
      open_[i].load -= run;
    }
    if (open_.size() >= lim_.max_total_vms) return;
    for (const auto& it : s_.instance_types) {
      if (per_type_[it.id] >= lim_.max_vms_per_type) continue;
      const Seconds load = s_.startup_overhead_s + task_exec_time(it, s_.tasks[t]);
      open_.push_back(Open{it.id, load, {t}});
      ++per_type_[it.id];
      dfs(depth + 1, cost + cost_at(it.id, load));
      --per_type_[it.id];
      open_.pop_back();
    }
  }

  Seconds current_makespan() const {
    Seconds m = 0;
    for (const auto& o : open_) m = std::max(m, o.load);
    return m;
  }

  const Scenario& s_;
  OracleLimits lim_;
  std::vector<TaskId> order_;
  std::vector<std::size_t> per_type_;
  std::vector<Open> open_;
  std::vector<Open> best_;
  bool found_ = false;
  Seconds best_makespan_ = std::numeric_limits<Seconds>::max();
  Money best_cost_ = std::numeric_limits<Money>::max();
};

}  // namespace detail

inline void check_limits(const Scenario& s, const OracleLimits& lim) {
  if (lim.max_tasks < 1 || lim.max_types < 1 || lim.max_vms_per_type < 1 || lim.max_total_vms < 1)
    throw LimitError("oracle limits must all be at least 1");
  if (s.tasks.size() > lim.max_tasks)
    throw LimitError("scenario has " + std::to_string(s.tasks.size()) + " tasks, oracle limit is " +
                     std::to_string(lim.max_tasks));
  if (s.instance_types.size() > lim.max_types)
    throw LimitError("scenario has " + std::to_string(s.instance_types.size()) +
                     " instance types, oracle limit is " + std::to_string(lim.max_types));
}

/// Exact minimum-makespan plan within budget (ties: cheaper plan). Refuses
/// scenarios beyond the limits instead of truncating the search.
inline SchedulerResult brute_force_optimal(const Scenario& s, const OracleLimits& lim = {}) {
  if (auto v = validate_scenario(s); !v.ok()) throw ModelError("invalid scenario: " + v.describe());
  check_limits(s, lim);
  if (s.tasks.empty()) return SchedulerResult::feasible_plan({});
  detail::ExactSearch search(s, lim);
  if (!search.run()) return SchedulerResult::infeasible("no plan within the limits fits the budget");
  return SchedulerResult::feasible_plan(search.best_plan());
}

}  // namespace botsched
