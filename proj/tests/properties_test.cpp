#include <random>

#include <gtest/gtest.h>

#include "botsched/heuristic.hpp"
#include "support/scenarios.hpp"

// Invariants of the individual phases on random plans whose slots all hold at
// least one task.

namespace botsched {
namespace {

struct Case {
  Scenario s;
  ExecutionPlan p;
};

Case random_case(std::mt19937_64& rng) {
  Case c{testing::random_scenario(rng), {}};
  const std::size_t slots = 1 + rng() % std::min<std::size_t>(6, c.s.tasks.size());
  c.p = testing::random_plan(rng, c.s, slots, true);
  return c;
}

bool same_plan(const ExecutionPlan& a, const ExecutionPlan& b) {
  if (a.slots.size() != b.slots.size()) return false;
  for (std::size_t i = 0; i < a.slots.size(); ++i) {
    if (a.slots[i].type_id != b.slots[i].type_id || a.slots[i].task_ids != b.slots[i].task_ids) return false;
  }
  return true;
}

constexpr int kRounds = 400;

TEST(PhaseProperties, BalanceNeverRaisesMakespanOrCost) {
  std::mt19937_64 rng(1);
  for (int round = 0; round < kRounds; ++round) {
    const auto [s, p] = random_case(rng);
    const auto q = balance(p, s);
    ASSERT_LE(plan_makespan(q, s), plan_makespan(p, s)) << round;
    ASSERT_LE(plan_cost(q, s), plan_cost(p, s)) << round;
    ASSERT_EQ(testing::task_multiset(q), testing::task_multiset(p)) << round;
  }
}

TEST(PhaseProperties, ReduceNeverRaisesCostAndKeepsEveryTask) {
  std::mt19937_64 rng(2);
  for (int round = 0; round < kRounds; ++round) {
    const auto [s, p] = random_case(rng);
    for (bool local : {false, true}) {
      const auto q = reduce(p, s, {}, local);
      ASSERT_LE(plan_cost(q, s), plan_cost(p, s)) << round;
      ASSERT_LE(q.slots.size(), p.slots.size()) << round;
      ASSERT_EQ(testing::task_multiset(q), testing::task_multiset(p)) << round;
    }
  }
}

TEST(PhaseProperties, ReduceKeepsExcludedSlots) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < kRounds; ++round) {
    const auto [s, p] = random_case(rng);
    const SlotId keep = rng() % p.slots.size();
    const auto q = reduce(p, s, {keep}, false);
    const bool present = std::any_of(q.slots.begin(), q.slots.end(), [&](const VmSlot& vm) { return vm.id == keep; });
    ASSERT_TRUE(present) << round;
  }
}

TEST(PhaseProperties, KeepUnderHourRespectsBudgetOrLeavesPlanAlone) {
  std::mt19937_64 rng(4);
  for (int round = 0; round < kRounds; ++round) {
    const auto [s, p] = random_case(rng);
    const auto q = keep_under_hour(p, s, s.budget);
    ASSERT_LE(plan_makespan(q, s), plan_makespan(p, s)) << round;
    ASSERT_TRUE(same_plan(p, q) || plan_cost(q, s) <= s.budget) << round;
    ASSERT_EQ(testing::task_multiset(q), testing::task_multiset(p)) << round;
  }
}

TEST(PhaseProperties, ReplaceRespectsBudgetOrLeavesPlanAlone) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < kRounds; ++round) {
    const auto [s, p] = random_case(rng);
    for (std::size_t batch : {1u, 2u}) {
      const auto q = replace(p, s, s.budget, batch);
      ASSERT_LE(plan_makespan(q, s), plan_makespan(p, s)) << round;
      ASSERT_TRUE(same_plan(p, q) || plan_cost(q, s) <= s.budget) << round;
      ASSERT_EQ(testing::task_multiset(q), testing::task_multiset(p)) << round;
    }
  }
}

TEST(PhaseProperties, FindPlanIsValidWheneverFeasible) {
  std::mt19937_64 rng(6);
  for (int round = 0; round < kRounds; ++round) {
    const Scenario s = testing::random_scenario(rng);
    const auto r = find_plan(s);
    if (!r.feasible()) {
      ASSERT_FALSE(r.reason.empty());
      continue;
    }
    const auto v = validate_plan(*r.plan, s);
    ASSERT_TRUE(v.ok()) << round << ": " << v.describe();
  }
}

TEST(PhaseProperties, FindPlanIsDeterministic) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 100; ++round) {
    const Scenario s = testing::random_scenario(rng);
    const auto a = find_plan(s), b = find_plan(s);
    ASSERT_EQ(a.feasible(), b.feasible());
    if (a.feasible()) {
      ASSERT_TRUE(same_plan(*a.plan, *b.plan)) << round;
    }
  }
}

}  // namespace
}  // namespace botsched
