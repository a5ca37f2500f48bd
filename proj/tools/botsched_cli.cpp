// Command-line front end: plan, sweep, oracle, validate.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "botsched/botsched.hpp"

namespace {

using namespace botsched;

OracleLimits parse_limits(const std::string& text) {
  OracleLimits lim;
  if (text.empty()) return lim;
  for (const auto& item : detail::split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw SweepError("bad limit \"" + item + "\", expected key=value");
    const std::string key = item.substr(0, eq);
    const auto value = detail::to_int(item.substr(eq + 1), "limit");
    if (value < 1) throw SweepError("limit " + key + " must be at least 1");
    const auto v = static_cast<std::size_t>(value);
    if (key == "max_tasks") {
      lim.max_tasks = v;
    } else if (key == "max_types") {
      lim.max_types = v;
    } else if (key == "max_vms_per_type") {
      lim.max_vms_per_type = v;
    } else if (key == "max_total_vms") {
      lim.max_total_vms = v;
    } else {
      throw SweepError("unknown limit \"" + key + "\"");
    }
  }
  return lim;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

void print_result(const SchedulerResult& r, const Scenario& s, std::string_view scheduler) {
  std::cout << "scheduler: " << scheduler << "\nbudget: " << s.budget << '\n';
  if (!r.feasible()) {
    std::cout << "feasible: false\nreason: " << r.reason << '\n';
    return;
  }
  const PlanReport report = evaluate(*r.plan, s);
  std::cout << "feasible: true\ncost: " << report.total_cost << "\nmakespan_s: " << report.makespan_s
            << "\nvms:";
  for (const auto& [type, n] : report.vm_count_by_type) std::cout << ' ' << s.type(type).name << '=' << n;
  std::cout << '\n';
  for (const auto& u : report.per_vm) {
    std::cout << "  vm " << u.vm_id << ' ' << s.type(u.type_id).name << " exec_s=" << u.exec_s
              << " hours=" << u.billed_quanta << " cost=" << u.cost << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-constrained Bag-of-Tasks scheduler for pay-per-hour clouds"};
  app.require_subcommand(1);

  std::string scenario_path;
  long long budget = -1;
  std::string scheduler = "heuristic";
  std::string out_path;
  bool trace = false;
  std::string budgets_text;
  std::string schedulers_text = "heuristic,mi,mp";
  std::string limits_text;
  bool timing = false;
  unsigned jobs = 1;

  auto* plan = app.add_subcommand("plan", "Build one execution plan");
  plan->add_option("scenario", scenario_path, "Scenario file or bundled fixture name")->required();
  plan->add_option("--scheduler", scheduler, "heuristic | mi | mp | oracle");
  plan->add_option("--budget", budget, "Budget (defaults to the scenario's)");
  plan->add_option("--out", out_path, "Write plan and report as JSON");
  plan->add_option("--limits", limits_text, "Oracle limits, e.g. max_tasks=8,max_types=3");
  plan->add_flag("--trace", trace, "Record per-phase cost and makespan (heuristic)");

  auto* sweep = app.add_subcommand("sweep", "Run schedulers over a range of budgets, emit CSV");
  sweep->add_option("scenario", scenario_path, "Scenario file or bundled fixture name")->required();
  sweep->add_option("--budgets", budgets_text, "a..b:step or comma list")->required();
  sweep->add_option("--schedulers", schedulers_text, "Comma list of heuristic, mi, mp, oracle");
  sweep->add_option("--out", out_path, "CSV output path")->required();
  sweep->add_option("--limits", limits_text, "Oracle limits");
  sweep->add_option("--jobs", jobs, "Worker threads");
  sweep->add_flag("--timing", timing, "Fill schedule_wall_ms (output no longer byte-stable)");

  auto* oracle = app.add_subcommand("oracle", "Exact optimum for a small scenario");
  oracle->add_option("scenario", scenario_path, "Scenario file or bundled fixture name")->required();
  oracle->add_option("--budget", budget, "Budget (defaults to the scenario's)");
  oracle->add_option("--limits", limits_text, "max_tasks=,max_types=,max_vms_per_type=,max_total_vms=");
  oracle->add_option("--out", out_path, "Write plan and report as JSON");

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("scenario", scenario_path, "Scenario file or bundled fixture name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      const auto named = load_scenario(scenario_path);
      const auto& s = named.scenario;
      std::cout << "ok: " << named.name << ": " << s.applications.size() << " applications, " << s.tasks.size()
                << " tasks, " << s.instance_types.size() << " instance types\n";
      return 0;
    }

    if (*plan || *oracle) {
      auto named = load_scenario(scenario_path);
      Scenario& s = named.scenario;
      if (budget >= 0) s.budget = budget;
      const auto limits = parse_limits(limits_text);
      SchedulerKind kind = SchedulerKind::oracle;
      if (*plan) {
        auto parsed = parse_scheduler(scheduler);
        if (!parsed) throw SweepError("unknown scheduler \"" + scheduler + "\"");
        kind = *parsed;
      }
      const SchedulerResult r = run_scheduler(kind, s, limits, trace);
      print_result(r, s, scheduler_name(kind));
      if (trace) {
        for (const auto& e : r.trace)
          std::cout << "  trace " << e.phase << " cost=" << e.cost << " makespan_s=" << e.makespan_s << '\n';
      }
      if (!out_path.empty()) write_file(out_path, result_to_json(r, s, std::string(scheduler_name(kind))).dump(2) + "\n");
      return 0;
    }

    if (*sweep) {
      SweepSpec spec;
      spec.scenario_path = scenario_path;
      spec.budgets = parse_budgets(budgets_text);
      spec.schedulers = parse_scheduler_list(schedulers_text);
      spec.limits = parse_limits(limits_text);
      spec.timing = timing;
      spec.jobs = jobs;
      const SweepTable table = run_sweep(spec);
      write_file(out_path, to_csv(table));
      std::cout << format_summary(summarize(table));
      return 0;
    }
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const SweepError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const LimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
