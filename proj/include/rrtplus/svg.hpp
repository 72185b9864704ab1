#pragma once

#include <string>
#include <vector>

#include "rrtplus/chain.hpp"

namespace rrtplus {

/// SVG scene of a solved query: obstacles, the start pose in red, the
/// goal pose in green, and `frames` chain poses total, interpolated by
/// arc length along the path with opacity fading from start to goal.
/// frames == 2 draws exactly the start and goal poses.
std::string render_solution_svg(const ScenarioSpec& scenario,
                                const std::vector<Configuration>& path, int frames = 12);

void save_svg(const std::string& svg, const std::string& path);

}  // namespace rrtplus
