#pragma once

#include <string>

#include "rrtplus/chain.hpp"
#include "rrtplus/planners.hpp"

namespace rrtplus {

/// Scenario <-> JSON document. Serialization is canonical (sorted keys,
/// shortest round-tripping number form), so identical scenarios produce
/// identical bytes and files replay exactly.
std::string scenario_to_json(const ScenarioSpec& scenario);
ScenarioSpec scenario_from_json(const std::string& text);

void save_scenario(const ScenarioSpec& scenario, const std::string& path);
ScenarioSpec load_scenario(const std::string& path);

/// PlanResult as a JSON document. Wall time is a measurement, not a
/// result: it is only included when include_timing is set, keeping the
/// default output byte-stable across repeated identical runs.
std::string plan_result_to_json(const PlanResult& result, bool include_timing = false);
PlanResult plan_result_from_json(const std::string& text);

}  // namespace rrtplus
