#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"

namespace botsched {

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TraceEntry {
  std::string phase;
  Money cost = 0;
  Seconds makespan_s = 0;
};

struct SchedulerResult {
  std::optional<ExecutionPlan> plan;  // set iff feasible
  std::string reason;                 // why no plan, when infeasible
  std::size_t iterations = 0;
  std::vector<TraceEntry> trace;

  bool feasible() const { return plan.has_value(); }

  static SchedulerResult feasible_plan(ExecutionPlan p, std::size_t iterations = 0) {
    SchedulerResult r;
    r.plan = std::move(p);
    r.iterations = iterations;
    return r;
  }
  static SchedulerResult infeasible(std::string why, std::size_t iterations = 0) {
    SchedulerResult r;
    r.reason = std::move(why);
    r.iterations = iterations;
    return r;
  }
};

struct FindOptions {
  std::size_t max_iterations = 1000;
  bool trace = false;
};

namespace detail {

// Makespan together with the number of slots that reach it. Phases that move
// work accept a change only if this pair decreases lexicographically, which
// also lets them make progress when several slots tie for the makespan.
struct Span {
  Seconds makespan = 0;
  std::size_t at_max = 0;

  friend bool operator==(const Span&, const Span&) = default;
  friend bool operator<(const Span& a, const Span& b) {
    if (a.makespan != b.makespan) return a.makespan < b.makespan;
    return a.at_max < b.at_max;
  }
};

struct SlotState {
  SlotId id = 0;
  TypeId type_id = 0;
  std::vector<TaskId> tasks;
  Seconds load = 0;  // includes startup overhead
};

// Mutable plan with cached per-slot execution times. While a plan is being
// built every slot in it counts as hired: it is billed at least one quantum
// even when it holds no task yet. Finished plans have their empty slots pruned,
// after which this agrees with plan_cost.
class Workspace {
 public:
  Workspace(const Scenario& s, const ExecutionPlan& p) : s_(&s) {
    for (const auto& vm : p.slots) {
      SlotState st{vm.id, vm.type_id, vm.task_ids, vm_exec_time(vm, s)};
      slots_.push_back(std::move(st));
      next_id_ = std::max(next_id_, vm.id + 1);
    }
  }

  const Scenario& scenario() const { return *s_; }
  std::size_t size() const { return slots_.size(); }
  const SlotState& operator[](std::size_t i) const { return slots_[i]; }

  Seconds time_on(std::size_t i, TaskId t) const {
    return task_exec_time(s_->type(slots_[i].type_id), s_->task(t));
  }

  Money hired_cost_at(std::size_t i, Seconds load) const {
    const auto quanta = std::max<std::int64_t>(1, billed_quanta(load, s_->billing_quantum_s));
    return quanta * s_->type(slots_[i].type_id).cost_per_hour;
  }
  Money hired_cost(std::size_t i) const { return hired_cost_at(i, slots_[i].load); }
  Money total_cost() const {
    Money total = 0;
    for (std::size_t i = 0; i < slots_.size(); ++i) total += hired_cost(i);
    return total;
  }

  Span span() const {
    Span sp;
    for (const auto& st : slots_) tally(sp, st.load);
    return sp;
  }
  Span span_over(const std::vector<std::size_t>& members) const {
    Span sp;
    for (std::size_t i : members) tally(sp, slots_[i].load);
    return sp;
  }

  std::size_t add_slot(TypeId type) {
    slots_.push_back(SlotState{next_id_++, type, {}, s_->startup_overhead_s});
    return slots_.size() - 1;
  }

  void place(std::size_t i, TaskId t) {
    slots_[i].load += time_on(i, t);
    slots_[i].tasks.push_back(t);
  }

  void take(std::size_t i, TaskId t) {
    auto& tasks = slots_[i].tasks;
    auto pos = std::find(tasks.begin(), tasks.end(), t);
    if (pos == tasks.end()) throw ModelError("task " + std::to_string(t) + " not on slot");
    tasks.erase(pos);
    slots_[i].load -= time_on(i, t);
  }

  std::vector<TaskId> take_all(std::size_t i) {
    std::vector<TaskId> out = std::move(slots_[i].tasks);
    slots_[i].tasks.clear();
    slots_[i].load = s_->startup_overhead_s;
    return out;
  }

  void erase(std::size_t i) { slots_.erase(slots_.begin() + static_cast<std::ptrdiff_t>(i)); }

  void drop_empty() {
    std::erase_if(slots_, [](const SlotState& st) { return st.tasks.empty(); });
  }

  std::optional<std::size_t> index_of(SlotId id) const {
    for (std::size_t i = 0; i < slots_.size(); ++i)
      if (slots_[i].id == id) return i;
    return std::nullopt;
  }

  // Tasks of slot i ordered by descending execution time there, then id.
  std::vector<TaskId> tasks_longest_first(std::size_t i) const {
    std::vector<TaskId> tasks = slots_[i].tasks;
    std::sort(tasks.begin(), tasks.end(), [&](TaskId a, TaskId b) {
      const Seconds ta = time_on(i, a), tb = time_on(i, b);
      return ta != tb ? ta > tb : a < b;
    });
    return tasks;
  }

  ExecutionPlan to_plan() const {
    ExecutionPlan p;
    for (const auto& st : slots_) p.slots.push_back(VmSlot{st.id, st.type_id, st.tasks});
    return p;
  }

 private:
  static void tally(Span& sp, Seconds load) {
    if (load > sp.makespan) {
      sp.makespan = load;
      sp.at_max = 1;
    } else if (load == sp.makespan) {
      ++sp.at_max;
    }
  }

  const Scenario* s_;
  std::vector<SlotState> slots_;
  SlotId next_id_ = 0;
};

inline std::vector<std::size_t> all_indices(const Workspace& ws) {
  std::vector<std::size_t> idx(ws.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

// Receiving-slot choice shared by assign and reduce: slots whose hired cost
// would not grow come first (falling back to every candidate when none
// qualifies); among them the one executing the task fastest, then the least
// loaded, then the lowest slot id.
inline std::optional<std::size_t> pick_slot(const Workspace& ws, TaskId t,
                                            const std::vector<std::size_t>& candidates) {
  if (candidates.empty()) return std::nullopt;
  auto better = [&](std::size_t a, std::size_t b) {
    const Seconds ta = ws.time_on(a, t), tb = ws.time_on(b, t);
    if (ta != tb) return ta < tb;
    if (ws[a].load != ws[b].load) return ws[a].load < ws[b].load;
    return ws[a].id < ws[b].id;
  };
  std::optional<std::size_t> best_free, best_any;
  for (std::size_t i : candidates) {
    if (!best_any || better(i, *best_any)) best_any = i;
    const bool free = ws.hired_cost_at(i, ws[i].load + ws.time_on(i, t)) == ws.hired_cost(i);
    if (free && (!best_free || better(i, *best_free))) best_free = i;
  }
  return best_free ? best_free : best_any;
}

inline void assign_into(Workspace& ws, const std::vector<TaskId>& tasks,
                        const std::vector<std::size_t>& candidates) {
  for (TaskId t : tasks) {
    auto target = pick_slot(ws, t, candidates);
    if (!target) throw ModelError("cannot assign tasks to a plan without slots");
    ws.place(*target, t);
  }
}

// Span of `members` with the loads of slots a and b replaced.
inline Span span_with(const Workspace& ws, const std::vector<std::size_t>& members, std::size_t a,
                      Seconds load_a, std::size_t b, Seconds load_b) {
  Span sp;
  for (std::size_t i : members) {
    const Seconds load = i == a ? load_a : i == b ? load_b : ws[i].load;
    if (load > sp.makespan) {
      sp = {load, 1};
    } else if (load == sp.makespan) {
      ++sp.at_max;
    }
  }
  return sp;
}

inline bool try_single_move(Workspace& ws, const std::vector<std::size_t>& members, std::size_t src,
                            const Span& before) {
  for (TaskId t : ws.tasks_longest_first(src)) {
    std::vector<std::size_t> targets;
    for (std::size_t i : members)
      if (i != src) targets.push_back(i);
    std::sort(targets.begin(), targets.end(), [&](std::size_t a, std::size_t b) {
      const Seconds ta = ws.time_on(a, t), tb = ws.time_on(b, t);
      if (ta != tb) return ta < tb;
      if (ws[a].load != ws[b].load) return ws[a].load < ws[b].load;
      return ws[a].id < ws[b].id;
    });
    const Seconds src_after = ws[src].load - ws.time_on(src, t);
    for (std::size_t dst : targets) {
      const Seconds dst_after = ws[dst].load + ws.time_on(dst, t);
      if (dst_after >= before.makespan && before.at_max == 1) continue;
      const Money delta = ws.hired_cost_at(src, src_after) + ws.hired_cost_at(dst, dst_after) -
                          ws.hired_cost(src) - ws.hired_cost(dst);
      if (delta > 0) continue;
      if (span_with(ws, members, src, src_after, dst, dst_after) < before) {
        ws.take(src, t);
        ws.place(dst, t);
        return true;
      }
    }
  }
  return false;
}

// Exchanges a task on `src` for a task elsewhere that runs shorter on `src`.
inline bool try_swap(Workspace& ws, const std::vector<std::size_t>& members, std::size_t src,
                     const Span& before) {
  std::vector<std::size_t> others;
  for (std::size_t i : members)
    if (i != src) others.push_back(i);
  std::sort(others.begin(), others.end(), [&](std::size_t a, std::size_t b) {
    return ws[a].load != ws[b].load ? ws[a].load < ws[b].load : ws[a].id < ws[b].id;
  });
  for (TaskId out : ws.tasks_longest_first(src)) {
    const Seconds out_here = ws.time_on(src, out);
    for (std::size_t dst : others) {
      for (TaskId in : ws[dst].tasks) {
        const Seconds in_here = ws.time_on(src, in);
        if (in_here >= out_here) continue;
        const Seconds src_after = ws[src].load - out_here + in_here;
        const Seconds dst_after = ws[dst].load - ws.time_on(dst, in) + ws.time_on(dst, out);
        const Money delta = ws.hired_cost_at(src, src_after) + ws.hired_cost_at(dst, dst_after) -
                            ws.hired_cost(src) - ws.hired_cost(dst);
        if (delta > 0) continue;
        if (span_with(ws, members, src, src_after, dst, dst_after) < before) {
          ws.take(src, out);
          ws.take(dst, in);
          ws.place(src, in);
          ws.place(dst, out);
          return true;
        }
      }
    }
  }
  return false;
}

// Moves tasks off the slots that define the makespan until neither a single
// move nor a pairwise exchange shrinks the span without raising the hired
// cost.
inline void balance_in(Workspace& ws, const std::vector<std::size_t>& members) {
  if (members.size() < 2) return;
  for (;;) {
    const Span before = ws.span_over(members);
    std::vector<std::size_t> sources;
    for (std::size_t i : members)
      if (ws[i].load == before.makespan) sources.push_back(i);
    std::sort(sources.begin(), sources.end(),
              [&](std::size_t a, std::size_t b) { return ws[a].id < ws[b].id; });

    bool improved = false;
    for (std::size_t src : sources)
      if ((improved = try_single_move(ws, members, src, before))) break;
    if (!improved) {
      for (std::size_t src : sources)
        if ((improved = try_swap(ws, members, src, before))) break;
    }
    if (!improved) return;
  }
}

// When a slot removal is accepted: as long as the total cost does not grow,
// or only when it strictly drops.
enum class RemovalRule { not_costlier, cheaper };

inline void reduce_in(Workspace& ws, const std::set<SlotId>& excluded, bool local_mode,
                      RemovalRule rule = RemovalRule::not_costlier) {
  std::set<SlotId> marked = excluded;
  for (;;) {
    std::optional<std::size_t> cand;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      if (marked.count(ws[i].id)) continue;
      if (!cand || ws[i].load < ws[*cand].load ||
          (ws[i].load == ws[*cand].load && ws[i].id < ws[*cand].id))
        cand = i;
    }
    if (!cand) return;

    std::vector<std::size_t> receivers;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      if (i == *cand) continue;
      if (local_mode && ws[i].type_id != ws[*cand].type_id) continue;
      receivers.push_back(i);
    }
    if (receivers.empty() && !ws[*cand].tasks.empty()) {
      marked.insert(ws[*cand].id);
      continue;
    }

    Workspace trial = ws;
    const auto tasks = trial.tasks_longest_first(*cand);
    trial.take_all(*cand);
    assign_into(trial, tasks, receivers);
    trial.erase(*cand);
    const Money after = trial.total_cost(), before = ws.total_cost();
    if (after < before || (after == before && rule == RemovalRule::not_costlier)) {
      ws = std::move(trial);
    } else {
      marked.insert(ws[*cand].id);
    }
  }
}

inline std::vector<Seconds> whole_workload_time(const Scenario& s) {
  std::vector<Seconds> totals;
  for (const auto& it : s.instance_types) {
    Seconds sum = 0;
    for (const auto& t : s.tasks) sum += task_exec_time(it, t);
    totals.push_back(sum);
  }
  return totals;
}

// Appends at most `max_new` slots.
inline std::vector<std::size_t> add_in(Workspace& ws, Money remaining, std::size_t max_new) {
  const Scenario& s = ws.scenario();
  const auto totals = whole_workload_time(s);
  std::vector<std::size_t> added;
  while (added.size() < max_new) {
    std::optional<TypeId> pick;
    for (const auto& it : s.instance_types) {
      if (it.cost_per_hour > remaining) continue;
      if (!pick) {
        pick = it.id;
        continue;
      }
      const auto& cur = s.instance_types[*pick];
      if (totals[it.id] != totals[cur.id] ? totals[it.id] < totals[cur.id]
                                          : it.cost_per_hour < cur.cost_per_hour)
        pick = it.id;
    }
    if (!pick) break;
    added.push_back(ws.add_slot(*pick));
    remaining -= s.instance_types[*pick].cost_per_hour;
  }
  return added;
}

// Two ways to split an over-quantum slot into itself and a same-type twin:
// halving by longest-first alternation to the lighter side, or peeling off
// as much work as fits into one quantum on the twin (which keeps the billed
// hours unchanged when the slot's last hour was nearly full).
enum class SplitKind { halve, peel };

inline Workspace split_slot(const Workspace& ws, std::size_t victim, SplitKind kind) {
  Workspace trial = ws;
  const auto tasks = trial.tasks_longest_first(victim);
  const std::size_t twin = trial.add_slot(trial[victim].type_id);
  trial.take_all(victim);
  const Seconds quantum = ws.scenario().billing_quantum_s;
  for (TaskId t : tasks) {
    if (kind == SplitKind::halve) {
      trial.place(trial[victim].load <= trial[twin].load ? victim : twin, t);
    } else {
      trial.place(trial[twin].load + trial.time_on(twin, t) <= quantum ? twin : victim, t);
    }
  }
  return trial;
}

inline void keep_in(Workspace& ws, Money budget) {
  const Seconds quantum = ws.scenario().billing_quantum_s;
  for (;;) {
    const Span before = ws.span();
    std::vector<std::size_t> over;
    for (std::size_t i = 0; i < ws.size(); ++i)
      if (ws[i].load > quantum) over.push_back(i);
    std::sort(over.begin(), over.end(), [&](std::size_t a, std::size_t b) {
      return ws[a].load != ws[b].load ? ws[a].load > ws[b].load : ws[a].id < ws[b].id;
    });

    bool accepted = false;
    for (std::size_t victim : over) {
      for (SplitKind kind : {SplitKind::halve, SplitKind::peel}) {
        Workspace trial = split_slot(ws, victim, kind);
        if (trial.total_cost() <= budget && trial.span() < before) {
          ws = std::move(trial);
          accepted = true;
          break;
        }
      }
      if (accepted) break;
    }
    if (!accepted) return;
  }
}

inline void replace_in(Workspace& ws, Money budget, std::size_t batch) {
  const Scenario& s = ws.scenario();
  for (;;) {
    std::vector<TypeId> present;
    for (std::size_t i = 0; i < ws.size(); ++i) present.push_back(ws[i].type_id);
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    std::sort(present.begin(), present.end(), [&](TypeId a, TypeId b) {
      const Money ca = s.type(a).cost_per_hour, cb = s.type(b).cost_per_hour;
      return ca != cb ? ca > cb : a < b;
    });

    bool committed = false;
    const Span before = ws.span();
    for (TypeId expensive : present) {
      std::vector<std::size_t> group;
      for (std::size_t i = 0; i < ws.size(); ++i)
        if (ws[i].type_id == expensive) group.push_back(i);
      std::sort(group.begin(), group.end(), [&](std::size_t a, std::size_t b) {
        return ws[a].load != ws[b].load ? ws[a].load > ws[b].load : ws[a].id < ws[b].id;
      });
      group.resize(std::min(group.size(), batch));

      Money freed = std::max<Money>(0, budget - ws.total_cost());
      std::vector<TaskId> moving;
      for (std::size_t i : group) {
        freed += ws.hired_cost(i);
        moving.insert(moving.end(), ws[i].tasks.begin(), ws[i].tasks.end());
      }

      std::vector<TypeId> cheaper;
      for (const auto& it : s.instance_types)
        if (it.cost_per_hour < s.type(expensive).cost_per_hour) cheaper.push_back(it.id);
      std::sort(cheaper.begin(), cheaper.end(), [&](TypeId a, TypeId b) {
        const Money ca = s.type(a).cost_per_hour, cb = s.type(b).cost_per_hour;
        return ca != cb ? ca < cb : a < b;
      });

      for (TypeId cheap : cheaper) {
        const auto affordable = static_cast<std::size_t>(freed / s.type(cheap).cost_per_hour);
        const std::size_t count = std::min(affordable, moving.size());
        if (count == 0) continue;

        Workspace trial = ws;
        std::vector<std::size_t> doomed = group;
        std::sort(doomed.rbegin(), doomed.rend());
        for (std::size_t i : doomed) trial.erase(i);
        std::vector<std::size_t> fresh;
        for (std::size_t k = 0; k < count; ++k) fresh.push_back(trial.add_slot(cheap));
        assign_into(trial, moving, fresh);
        balance_in(trial, fresh);
        if (trial.total_cost() <= budget && trial.span() < before) {
          ws = std::move(trial);
          committed = true;
          break;
        }
      }
      if (committed) break;
    }
    if (!committed) return;
  }
}

inline std::size_t count_tasks_of(const Scenario& s, AppId app) {
  return static_cast<std::size_t>(std::count_if(
      s.tasks.begin(), s.tasks.end(), [app](const Task& t) { return t.app_id == app; }));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public phases. Each takes and returns value plans; slot ids are preserved
// for surviving slots and new slots get fresh ids.

/// Fastest affordable instance type for an application; ties go to the
/// cheaper type, then the lower type id.
inline const InstanceType& best_type(const Application& app, const std::vector<InstanceType>& catalog,
                                     Money budget) {
  const InstanceType* best = nullptr;
  for (const auto& it : catalog) {
    if (it.cost_per_hour > budget) continue;
    if (app.id >= it.perf.size()) throw ModelError("perf vector of " + it.name + " too short");
    if (!best) {
      best = &it;
      continue;
    }
    const Seconds p = it.perf[app.id], bp = best->perf[app.id];
    if (p != bp ? p < bp : (it.cost_per_hour != best->cost_per_hour ? it.cost_per_hour < best->cost_per_hour
                                                                    : it.id < best->id))
      best = &it;
  }
  if (!best) {
    throw InfeasibleError("no instance type costs at most " + std::to_string(budget) +
                          " for application " + app.name);
  }
  return *best;
}

/// One batch of empty slots per application that has tasks: as many VMs of
/// its best type as the whole budget buys, but never more than it has tasks.
inline ExecutionPlan initial_plan(const Scenario& s) {
  ExecutionPlan p;
  for (const auto& app : s.applications) {
    const std::size_t tasks = detail::count_tasks_of(s, app.id);
    if (tasks == 0) continue;
    const auto& it = best_type(app, s.instance_types, s.budget);
    const auto count = std::min(static_cast<std::size_t>(s.budget / it.cost_per_hour), tasks);
    for (std::size_t k = 0; k < count; ++k) p.slots.push_back(VmSlot{p.slots.size(), it.id, {}});
  }
  return p;
}

inline ExecutionPlan assign(const std::vector<TaskId>& tasks, const ExecutionPlan& plan,
                            const Scenario& s) {
  if (plan.empty() && !tasks.empty()) throw ModelError("cannot assign tasks to an empty plan");
  detail::Workspace ws(s, plan);
  detail::assign_into(ws, tasks, detail::all_indices(ws));
  return ws.to_plan();
}

inline ExecutionPlan balance(const ExecutionPlan& plan, const Scenario& s) {
  detail::Workspace ws(s, plan);
  detail::balance_in(ws, detail::all_indices(ws));
  return ws.to_plan();
}

/// Removes the least loaded slots by moving all their tasks elsewhere, as long
/// as the total cost does not grow. In local mode tasks only move between
/// slots of the same type. Slots listed in `excluded` are never removed.
inline ExecutionPlan reduce(const ExecutionPlan& plan, const Scenario& s,
                            const std::set<SlotId>& excluded, bool local_mode) {
  detail::Workspace ws(s, plan);
  detail::reduce_in(ws, excluded, local_mode);
  return ws.to_plan();
}

/// Greedily appends empty slots while the remaining money pays for one more
/// hour of some type, preferring the type that would run the whole workload
/// fastest. The plan never grows beyond one slot per task.
inline ExecutionPlan add_vms(const ExecutionPlan& plan, const Scenario& s, Money remaining) {
  detail::Workspace ws(s, plan);
  const std::size_t room = s.tasks.size() > ws.size() ? s.tasks.size() - ws.size() : 0;
  detail::add_in(ws, remaining, room);
  return ws.to_plan();
}

/// Splits slots running longer than one billing quantum across two slots of
/// the same type while the budget holds and the makespan keeps shrinking.
inline ExecutionPlan keep_under_hour(const ExecutionPlan& plan, const Scenario& s, Money budget) {
  detail::Workspace ws(s, plan);
  detail::keep_in(ws, budget);
  return ws.to_plan();
}

/// Swaps the most loaded slot(s) of an expensive type for a larger number of
/// slots of a strictly cheaper type when that fits the budget and shortens the
/// makespan.
inline ExecutionPlan replace(const ExecutionPlan& plan, const Scenario& s, Money budget,
                             std::size_t batch = 1) {
  if (batch == 0) throw ModelError("replace batch must be at least 1");
  detail::Workspace ws(s, plan);
  detail::replace_in(ws, budget, batch);
  return ws.to_plan();
}

/// The full iterative search: initial plan, assignment and local reduction,
/// then rounds of global reduction, VM addition, balancing, splitting and
/// replacement until neither cost nor makespan improves.
inline SchedulerResult find_plan(const Scenario& s, const FindOptions& options = {}) {
  if (auto v = validate_scenario(s); !v.ok()) throw ModelError("invalid scenario: " + v.describe());
  if (s.tasks.empty()) return SchedulerResult::feasible_plan({});

  SchedulerResult result;
  auto note = [&](const char* phase, const detail::Workspace& ws) {
    if (options.trace) result.trace.push_back({phase, ws.total_cost(), ws.span().makespan});
  };

  ExecutionPlan start;
  try {
    start = initial_plan(s);
  } catch (const InfeasibleError& e) {
    return SchedulerResult::infeasible(e.what());
  }

  std::vector<TaskId> all_tasks(s.tasks.size());
  std::iota(all_tasks.begin(), all_tasks.end(), TaskId{0});

  detail::Workspace ws(s, start);
  note("initial", ws);
  detail::assign_into(ws, all_tasks, detail::all_indices(ws));
  note("assign", ws);
  detail::reduce_in(ws, {}, true, detail::RemovalRule::cheaper);
  note("reduce-local", ws);

  struct Snapshot {
    ExecutionPlan plan;
    Money cost;
    Seconds makespan;
  };
  auto snapshot = [&s](const detail::Workspace& w) {
    ExecutionPlan p = prune_empty_slots(w.to_plan());
    const Money cost = plan_cost(p, s);
    const Seconds makespan = plan_makespan(p, s);
    return Snapshot{std::move(p), cost, makespan};
  };
  // Best so far: least budget violation, then makespan, then cost.
  auto ranks_before = [&s](const Snapshot& a, const Snapshot& b) {
    const Money va = std::max<Money>(0, a.cost - s.budget), vb = std::max<Money>(0, b.cost - s.budget);
    if (va != vb) return va < vb;
    if (a.makespan != b.makespan) return a.makespan < b.makespan;
    return a.cost < b.cost;
  };

  Snapshot stored = snapshot(ws);
  Snapshot best = stored;
  Money stored_cost = std::numeric_limits<Money>::max();
  Seconds stored_makespan = std::numeric_limits<Seconds>::max();

  std::size_t iterations = 0;
  while (iterations < options.max_iterations) {
    ++iterations;
    detail::Workspace round(s, stored.plan);
    detail::reduce_in(round, {}, false, detail::RemovalRule::cheaper);
    note("reduce-global", round);
    const std::size_t room = s.tasks.size() > round.size() ? s.tasks.size() - round.size() : 0;
    detail::add_in(round, s.budget - round.total_cost(), room);
    note("add", round);
    detail::balance_in(round, detail::all_indices(round));
    round.drop_empty();
    note("balance", round);
    detail::keep_in(round, s.budget);
    note("keep", round);
    detail::replace_in(round, std::max(s.budget, round.total_cost()), 1);
    note("replace", round);

    Snapshot current = snapshot(round);
    if (ranks_before(current, best)) best = current;
    if (current.cost < stored_cost || current.makespan < stored_makespan) {
      stored_cost = current.cost;
      stored_makespan = current.makespan;
      stored = std::move(current);
    } else {
      break;
    }
  }

  if (best.cost > s.budget) {
    result.reason = "cheapest plan found costs " + std::to_string(best.cost) + ", budget is " +
                    std::to_string(s.budget);
    result.iterations = iterations;
    return result;
  }
  result.plan = std::move(best.plan);
  result.iterations = iterations;
  return result;
}

}  // namespace botsched
