#include <random>

#include <gtest/gtest.h>

#include "botsched/evaluator.hpp"
#include "support/scenarios.hpp"

namespace botsched {
namespace {

TEST(Timelines, TasksRunBackToBackAfterBoot) {
  Scenario s;
  s.applications = testing::apps(1);
  s.instance_types = {{0, "u", 1, {10}}};
  s.tasks = testing::tasks({{0, 2}, {0, 3}});
  s.startup_overhead_s = 100;
  const auto tl = build_timelines(testing::plan_of({{0, {0, 1}}}), s);
  ASSERT_EQ(tl.size(), 1u);
  EXPECT_EQ(tl[0].boot_end_s, 100);
  ASSERT_EQ(tl[0].events.size(), 2u);
  EXPECT_EQ(tl[0].events[0].start_s, 100);
  EXPECT_EQ(tl[0].events[0].end_s, 120);
  EXPECT_EQ(tl[0].events[1].start_s, 120);
  EXPECT_EQ(tl[0].events[1].end_s, 150);
  EXPECT_EQ(tl[0].end_s(), 150);
}

TEST(Timelines, EmptySlotEndsAtBoot) {
  Scenario s = testing::two_type_example();
  s.startup_overhead_s = 40;
  auto p = testing::plan_of({{1, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}}, {0, {}}});
  const auto tl = build_timelines(p, s);
  EXPECT_TRUE(tl[1].events.empty());
  EXPECT_EQ(tl[1].end_s(), 40);
}

TEST(Evaluate, WorkedExampleReport) {
  const Scenario s = testing::two_type_example();
  const auto r = evaluate(testing::plan_of({{1, {0, 1, 2, 3, 4}}, {1, {5, 6, 7, 8, 9}}}), s);
  EXPECT_EQ(r.makespan_s, 50);
  EXPECT_EQ(r.total_cost, 2);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.vm_count_by_type, (std::map<TypeId, std::size_t>{{1, 2}}));
  ASSERT_EQ(r.per_vm.size(), 2u);
  EXPECT_EQ(r.per_vm[0].billed_quanta, 1);
}

TEST(Evaluate, OverBudgetIsReportedNotThrown) {
  const Scenario s = testing::two_type_example(1);
  const auto r = evaluate(testing::plan_of({{1, {0, 1, 2, 3, 4}}, {1, {5, 6, 7, 8, 9}}}), s);
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.total_cost, 2);
}

TEST(Evaluate, MalformedPlanThrows) {
  const Scenario s = testing::two_type_example();
  EXPECT_THROW(evaluate(testing::plan_of({{1, {0, 1, 2}}}), s), ModelError);
  EXPECT_THROW(evaluate(testing::plan_of({{5, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}}}), s), ModelError);
}

TEST(Evaluate, ReplayAgreesWithClosedFormOnRandomPlans) {
  std::mt19937_64 rng(5150);
  for (int round = 0; round < 500; ++round) {
    const Scenario s = testing::random_scenario(rng);
    const auto p = testing::random_plan(rng, s, 1 + rng() % 5, false);
    const auto r = evaluate(p, s);
    ASSERT_EQ(r.makespan_s, plan_makespan(p, s));
    ASSERT_EQ(r.total_cost, plan_cost(p, s));
    ASSERT_EQ(r.feasible, !validate_plan(p, s).has(ViolationKind::over_budget));
  }
}

}  // namespace
}  // namespace botsched
