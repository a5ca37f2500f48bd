#include <gtest/gtest.h>

#include "botsched/sweep.hpp"

namespace botsched {
namespace {

TEST(ParseBudgets, RangeListAndSingle) {
  EXPECT_EQ(parse_budgets("40..55:5"), (std::vector<Money>{40, 45, 50, 55}));
  EXPECT_EQ(parse_budgets("3..5"), (std::vector<Money>{3, 4, 5}));
  EXPECT_EQ(parse_budgets("7,2,9"), (std::vector<Money>{7, 2, 9}));
  EXPECT_EQ(parse_budgets("12"), (std::vector<Money>{12}));
  EXPECT_EQ(parse_budgets("40..42:5"), (std::vector<Money>{40}));
}

TEST(ParseBudgets, RejectsGarbage) {
  EXPECT_THROW(parse_budgets("abc"), SweepError);
  EXPECT_THROW(parse_budgets("10..5"), SweepError);
  EXPECT_THROW(parse_budgets("1..5:0"), SweepError);
  EXPECT_THROW(parse_budgets("-3"), SweepError);
  EXPECT_THROW(parse_budgets("4,,5"), SweepError);
}

TEST(ParseSchedulers, KnownNamesOnly) {
  EXPECT_EQ(parse_scheduler_list("heuristic,mi,mp,oracle"),
            (std::vector<SchedulerKind>{SchedulerKind::heuristic, SchedulerKind::mi, SchedulerKind::mp,
                                        SchedulerKind::oracle}));
  EXPECT_THROW(parse_scheduler_list("heuristic,greedy"), SweepError);
}

TEST(Sweep, WorkedExampleRows) {
  SweepSpec spec;
  spec.scenario_path = "paper-4g";
  spec.budgets = {2};
  spec.schedulers = {SchedulerKind::heuristic, SchedulerKind::oracle};
  spec.limits = {10, 3, 10, 10};
  const auto table = run_sweep(spec);
  ASSERT_EQ(table.rows.size(), 2u);
  for (const auto& row : table.rows) {
    EXPECT_TRUE(row.feasible);
    EXPECT_EQ(row.cost, 2);
    EXPECT_EQ(row.makespan_s, 50);
    EXPECT_EQ(row.vm_counts, (std::vector<std::size_t>{0, 2}));
  }
  EXPECT_EQ(to_csv(table),
            "budget,scheduler,feasible,cost,makespan_s,vm_count_it1,vm_count_it2,schedule_wall_ms\n"
            "2,heuristic,true,2,50,0,2,NA\n"
            "2,oracle,true,2,50,0,2,NA\n");
}

TEST(Sweep, InfeasibleRowsLeaveMetricsBlank) {
  SweepSpec spec;
  spec.scenario_path = "paper-4g";
  spec.budgets = {0};
  spec.schedulers = {SchedulerKind::mp};
  EXPECT_EQ(to_csv(run_sweep(spec)),
            "budget,scheduler,feasible,cost,makespan_s,vm_count_it1,vm_count_it2,schedule_wall_ms\n"
            "0,mp,false,,,0,0,NA\n");
}

TEST(Sweep, OracleOnLargeScenarioIsRefusedUpFront) {
  SweepSpec spec;
  spec.scenario_path = "table1-small";
  spec.budgets = {40};
  spec.schedulers = {SchedulerKind::oracle};
  EXPECT_THROW(run_sweep(spec), SweepError);
}

TEST(Sweep, OutputDoesNotDependOnThreadCount) {
  SweepSpec spec;
  spec.scenario_path = "table1-small";
  spec.budgets = parse_budgets("40..85:5");
  spec.schedulers = {SchedulerKind::heuristic, SchedulerKind::mi, SchedulerKind::mp};
  const auto serial = to_csv(run_sweep(spec));
  spec.jobs = 4;
  const auto parallel = to_csv(run_sweep(spec));
  EXPECT_EQ(serial, parallel);
  EXPECT_EQ(std::count(serial.begin(), serial.end(), '\n'), 1 + 10 * 3);
}

TEST(Summary, MeanReductionOverCommonBudgets) {
  SweepTable t;
  t.type_names = {"a"};
  t.rows = {{10, SchedulerKind::heuristic, true, 5, 80, {1}, {}},
            {10, SchedulerKind::mi, true, 5, 100, {1}, {}},
            {20, SchedulerKind::heuristic, true, 5, 50, {1}, {}},
            {20, SchedulerKind::mi, true, 5, 50, {1}, {}},
            {30, SchedulerKind::heuristic, true, 5, 40, {1}, {}},
            {30, SchedulerKind::mi, false, 0, 0, {0}, {}}};
  const auto c = summarize(t);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].baseline, SchedulerKind::mi);
  EXPECT_EQ(c[0].budgets_compared, 2u);
  EXPECT_DOUBLE_EQ(c[0].mean_reduction_pct, 10.0);
  EXPECT_EQ(c[0].heuristic_not_worse, 2u);
}

}  // namespace
}  // namespace botsched
