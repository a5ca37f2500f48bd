#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Bundled scenario documents, identical to the files under fixtures/.
namespace botsched {

namespace detail {

inline constexpr std::string_view kTable1 = R"json({
  "name": "table1",
  "applications": [{"name": "A1"}, {"name": "A2"}, {"name": "A3"}],
  "instance_types": [
    {"name": "it1", "cost_per_hour": 5, "perf": [20, 24, 22]},
    {"name": "it2", "cost_per_hour": 10, "perf": [11, 13, 12]},
    {"name": "it3", "cost_per_hour": 10, "perf": [10, 15, 9]},
    {"name": "it4", "cost_per_hour": 10, "perf": [10, 9, 12]}
  ],
  "workload": [
    {"application": "A1", "count": 250, "sizes": "uniform-levels(1,5)"},
    {"application": "A2", "count": 250, "sizes": "uniform-levels(1,5)"},
    {"application": "A3", "count": 250, "sizes": "uniform-levels(1,5)"}
  ],
  "defaults": {"startup_overhead_s": 0, "billing_quantum_s": 3600, "budget": 60}
}
)json";

inline constexpr std::string_view kTable1Small = R"json({
  "name": "table1-small",
  "applications": [{"name": "A1"}, {"name": "A2"}, {"name": "A3"}],
  "instance_types": [
    {"name": "it1", "cost_per_hour": 5, "perf": [20, 24, 22]},
    {"name": "it2", "cost_per_hour": 10, "perf": [11, 13, 12]},
    {"name": "it3", "cost_per_hour": 10, "perf": [10, 15, 9]},
    {"name": "it4", "cost_per_hour": 10, "perf": [10, 9, 12]}
  ],
  "workload": [
    {"application": "A1", "count": 25, "sizes": "uniform-levels(1,5)"},
    {"application": "A2", "count": 25, "sizes": "uniform-levels(1,5)"},
    {"application": "A3", "count": 25, "sizes": "uniform-levels(1,5)"}
  ],
  "defaults": {"startup_overhead_s": 0, "billing_quantum_s": 3600, "budget": 40}
}
)json";

inline constexpr std::string_view kPaper4g = R"json({
  "name": "paper-4g",
  "applications": [{"name": "A1"}],
  "instance_types": [
    {"name": "it1", "cost_per_hour": 2, "perf": [8]},
    {"name": "it2", "cost_per_hour": 1, "perf": [10]}
  ],
  "workload": [
    {"application": "A1", "count": 10, "sizes": "uniform-levels(1,1)"}
  ],
  "defaults": {"startup_overhead_s": 0, "billing_quantum_s": 3600, "budget": 2}
}
)json";

}  // namespace detail

inline std::vector<std::string> fixture_names() { return {"table1", "table1-small", "paper-4g"}; }

inline std::optional<std::string> fixture_document(std::string_view name) {
  if (name == "table1") return std::string(detail::kTable1);
  if (name == "table1-small") return std::string(detail::kTable1Small);
  if (name == "paper-4g") return std::string(detail::kPaper4g);
  return std::nullopt;
}

}  // namespace botsched
