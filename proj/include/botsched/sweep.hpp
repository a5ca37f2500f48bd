#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "baselines.hpp"
#include "evaluator.hpp"
#include "heuristic.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "scenario_io.hpp"

namespace botsched {

class SweepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SchedulerKind { heuristic, mi, mp, oracle };

inline std::string_view scheduler_name(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::heuristic: return "heuristic";
    case SchedulerKind::mi: return "mi";
    case SchedulerKind::mp: return "mp";
    case SchedulerKind::oracle: return "oracle";
  }
  return "?";
}

inline std::optional<SchedulerKind> parse_scheduler(std::string_view name) {
  for (auto k : {SchedulerKind::heuristic, SchedulerKind::mi, SchedulerKind::mp, SchedulerKind::oracle})
    if (scheduler_name(k) == name) return k;
  return std::nullopt;
}

namespace detail {

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

inline std::int64_t to_int(const std::string& s, std::string_view what) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw SweepError("bad " + std::string(what) + " \"" + s + "\"");
  return v;
}

}  // namespace detail

inline std::vector<SchedulerKind> parse_scheduler_list(std::string_view text) {
  std::vector<SchedulerKind> out;
  for (const auto& part : detail::split(text, ',')) {
    auto k = parse_scheduler(part);
    if (!k) throw SweepError("unknown scheduler \"" + part + "\"");
    if (std::find(out.begin(), out.end(), *k) != out.end())
      throw SweepError("scheduler \"" + part + "\" listed twice");
    out.push_back(*k);
  }
  return out;
}

/// "40..85:5" (inclusive range with step), "40,45,60", or a single value.
inline std::vector<Money> parse_budgets(std::string_view text) {
  std::vector<Money> out;
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    for (const auto& part : detail::split(text, ',')) out.push_back(detail::to_int(part, "budget"));
  } else {
    const std::string head(text.substr(0, dots));
    std::string tail(text.substr(dots + 2));
    Money step = 1;
    if (auto colon = tail.find(':'); colon != std::string::npos) {
      step = detail::to_int(tail.substr(colon + 1), "budget step");
      tail = tail.substr(0, colon);
    }
    const Money start = detail::to_int(head, "budget"), stop = detail::to_int(tail, "budget");
    if (step <= 0) throw SweepError("budget step must be positive");
    if (stop < start) throw SweepError("empty budget range");
    for (Money b = start; b <= stop; b += step) out.push_back(b);
  }
  for (Money b : out)
    if (b < 0) throw SweepError("negative budget " + std::to_string(b));
  return out;
}

/// Budget comes from the scenario.
inline SchedulerResult run_scheduler(SchedulerKind kind, const Scenario& s, const OracleLimits& limits = {},
                                     bool trace = false) {
  switch (kind) {
    case SchedulerKind::heuristic: return find_plan(s, FindOptions{1000, trace});
    case SchedulerKind::mi: return mi_plan(s);
    case SchedulerKind::mp: return mp_plan(s);
    case SchedulerKind::oracle: return brute_force_optimal(s, limits);
  }
  throw SweepError("unknown scheduler");
}

struct SweepSpec {
  std::string scenario_path;
  std::vector<Money> budgets;
  std::vector<SchedulerKind> schedulers;
  OracleLimits limits;
  bool timing = false;   // fill schedule_wall_ms; output is then no longer byte-stable
  unsigned jobs = 1;
};

struct SweepRow {
  Money budget = 0;
  SchedulerKind scheduler = SchedulerKind::heuristic;
  bool feasible = false;
  Money cost = 0;
  Seconds makespan_s = 0;
  std::vector<std::size_t> vm_counts;  // indexed by instance type id
  std::optional<double> wall_ms;
};

struct SweepTable {
  std::vector<std::string> type_names;
  std::vector<SweepRow> rows;
};

inline void validate_spec(const SweepSpec& spec, const Scenario& s) {
  if (spec.budgets.empty()) throw SweepError("no budgets to sweep");
  if (spec.schedulers.empty()) throw SweepError("no schedulers selected");
  if (std::find(spec.schedulers.begin(), spec.schedulers.end(), SchedulerKind::oracle) != spec.schedulers.end()) {
    try {
      check_limits(s, spec.limits);
    } catch (const LimitError& e) {
      throw SweepError(std::string("oracle not permitted: ") + e.what());
    }
  }
}

/// One row per (budget, scheduler), in budget order and then in the order the
/// schedulers were listed. Cells run on up to `spec.jobs` threads.
inline SweepTable run_sweep(const SweepSpec& spec, const Scenario& base) {
  validate_spec(spec, base);
  SweepTable table;
  for (const auto& it : base.instance_types) table.type_names.push_back(it.name);

  const std::size_t cells = spec.budgets.size() * spec.schedulers.size();
  table.rows.resize(cells);
  auto run_cell = [&](std::size_t cell) {
    Scenario s = base;
    s.budget = spec.budgets[cell / spec.schedulers.size()];
    const SchedulerKind kind = spec.schedulers[cell % spec.schedulers.size()];
    const auto t0 = std::chrono::steady_clock::now();
    const SchedulerResult result = run_scheduler(kind, s, spec.limits);
    const auto t1 = std::chrono::steady_clock::now();

    SweepRow row;
    row.budget = s.budget;
    row.scheduler = kind;
    row.vm_counts.assign(s.instance_types.size(), 0);
    if (spec.timing) row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (result.feasible()) {
      if (auto v = validate_plan(*result.plan, s); !v.ok())
        throw std::logic_error(std::string(scheduler_name(kind)) + " produced an invalid plan at budget " +
                               std::to_string(s.budget) + ": " + v.describe());
      const PlanReport report = evaluate(*result.plan, s);
      row.feasible = true;
      row.cost = report.total_cost;
      row.makespan_s = report.makespan_s;
      for (const auto& [type, n] : report.vm_count_by_type) row.vm_counts[type] = n;
    }
    table.rows[cell] = std::move(row);
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(spec.jobs, static_cast<unsigned>(cells)));
  if (jobs == 1) {
    for (std::size_t c = 0; c < cells; ++c) run_cell(c);
    return table;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t c; (c = next.fetch_add(1)) < cells;) {
        try {
          run_cell(c);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
  return table;
}

inline SweepTable run_sweep(const SweepSpec& spec) {
  return run_sweep(spec, load_scenario(spec.scenario_path).scenario);
}

inline std::string to_csv(const SweepTable& table) {
  std::ostringstream out;
  out << "budget,scheduler,feasible,cost,makespan_s";
  for (const auto& name : table.type_names) out << ",vm_count_" << name;
  out << ",schedule_wall_ms\n";
  for (const auto& row : table.rows) {
    out << row.budget << ',' << scheduler_name(row.scheduler) << ',' << (row.feasible ? "true" : "false") << ',';
    if (row.feasible) {
      out << row.cost << ',' << row.makespan_s;
    } else {
      out << ',';
    }
    for (std::size_t n : row.vm_counts) out << ',' << n;
    out << ',';
    if (row.wall_ms) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", *row.wall_ms);
      out << buf;
    } else {
      out << "NA";
    }
    out << '\n';
  }
  return out.str();
}

struct Comparison {
  SchedulerKind baseline = SchedulerKind::mi;
  std::size_t budgets_compared = 0;
  double mean_reduction_pct = 0.0;  // mean of (baseline - heuristic) / baseline * 100
  std::size_t heuristic_not_worse = 0;
};

/// Heuristic vs. each baseline present, over budgets where both are feasible.
inline std::vector<Comparison> summarize(const SweepTable& table) {
  std::vector<Comparison> out;
  for (auto baseline : {SchedulerKind::mi, SchedulerKind::mp, SchedulerKind::oracle}) {
    Comparison c;
    c.baseline = baseline;
    double total = 0.0;
    bool present = false;
    for (const auto& h : table.rows) {
      if (h.scheduler != SchedulerKind::heuristic || !h.feasible) continue;
      for (const auto& b : table.rows) {
        if (b.scheduler != baseline || b.budget != h.budget) continue;
        present = true;
        if (!b.feasible || b.makespan_s == 0) continue;
        ++c.budgets_compared;
        total += 100.0 * static_cast<double>(b.makespan_s - h.makespan_s) / static_cast<double>(b.makespan_s);
        if (h.makespan_s <= b.makespan_s) ++c.heuristic_not_worse;
      }
    }
    if (!present) continue;
    if (c.budgets_compared > 0) c.mean_reduction_pct = total / static_cast<double>(c.budgets_compared);
    out.push_back(c);
  }
  return out;
}

inline std::string format_summary(const std::vector<Comparison>& comparisons) {
  std::ostringstream out;
  for (const auto& c : comparisons) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "heuristic vs %s: %zu budgets compared, mean makespan reduction %.2f%%, not worse on %zu\n",
                  std::string(scheduler_name(c.baseline)).c_str(), c.budgets_compared, c.mean_reduction_pct,
                  c.heuristic_not_worse);
    out << buf;
  }
  return out.str();
}

}  // namespace botsched
