#include "rrtplus/scenario_io.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace rrtplus {

namespace {

using nlohmann::json;

json vec2_to_json(const Vec2& v) { return json::array({v.x, v.y}); }

Vec2 vec2_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json obstacle_to_json(const Obstacle& obs) {
    json j;
    if (const auto* circle = std::get_if<Circle>(&obs)) {
        j["type"] = "circle";
        j["center"] = vec2_to_json(circle->center);
        j["radius"] = circle->radius;
    } else if (const auto* wall = std::get_if<Segment2>(&obs)) {
        j["type"] = "segment";
        j["a"] = vec2_to_json(wall->a);
        j["b"] = vec2_to_json(wall->b);
    } else {
        const auto& box = std::get<Box2>(obs);
        j["type"] = "box";
        j["lo"] = vec2_to_json(box.lo);
        j["hi"] = vec2_to_json(box.hi);
    }
    return j;
}

Obstacle obstacle_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "circle")
        return Circle{vec2_from_json(j.at("center")), j.at("radius").get<double>()};
    if (type == "segment") return Segment2{vec2_from_json(j.at("a")), vec2_from_json(j.at("b"))};
    if (type == "box") return Box2{vec2_from_json(j.at("lo")), vec2_from_json(j.at("hi"))};
    throw std::invalid_argument("unknown obstacle type: " + type);
}

}  // namespace

std::string scenario_to_json(const ScenarioSpec& scenario) {
    json j;
    j["name"] = scenario.name;
    j["kind"] = to_string(scenario.env.kind);
    j["self_collision"] = scenario.self_collision;
    j["robot"] = {{"num_links", scenario.robot.num_links},
                  {"link_length", scenario.robot.link_length},
                  {"base", vec2_to_json(scenario.robot.base)},
                  {"inflation", scenario.robot.inflation}};
    j["bounds"] = {{"lo", scenario.bounds.lo}, {"hi", scenario.bounds.hi}};
    j["workspace"] = {{"lo", vec2_to_json(scenario.env.workspace.lo)},
                      {"hi", vec2_to_json(scenario.env.workspace.hi)}};
    j["q_init"] = scenario.q_init;
    j["q_goal"] = scenario.q_goal;
    j["obstacles"] = json::array();
    for (const auto& obs : scenario.env.obstacles) j["obstacles"].push_back(obstacle_to_json(obs));
    return j.dump(2) + "\n";
}

ScenarioSpec scenario_from_json(const std::string& text) {
    const json j = json::parse(text);
    ScenarioSpec scenario;
    scenario.name = j.at("name").get<std::string>();
    scenario.env.kind = env_kind_from_string(j.at("kind").get<std::string>());
    scenario.self_collision = j.at("self_collision").get<bool>();

    const auto& robot = j.at("robot");
    scenario.robot.num_links = robot.at("num_links").get<int>();
    scenario.robot.link_length = robot.at("link_length").get<double>();
    scenario.robot.base = vec2_from_json(robot.at("base"));
    scenario.robot.inflation = robot.at("inflation").get<double>();

    scenario.bounds = CSpaceBounds(j.at("bounds").at("lo").get<std::vector<double>>(),
                                   j.at("bounds").at("hi").get<std::vector<double>>());
    scenario.env.workspace = {vec2_from_json(j.at("workspace").at("lo")),
                              vec2_from_json(j.at("workspace").at("hi"))};
    scenario.q_init = j.at("q_init").get<Configuration>();
    scenario.q_goal = j.at("q_goal").get<Configuration>();
    for (const auto& obs : j.at("obstacles")) scenario.env.obstacles.push_back(obstacle_from_json(obs));
    return scenario;
}

void save_scenario(const ScenarioSpec& scenario, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write scenario file: " + path);
    out << scenario_to_json(scenario);
}

ScenarioSpec load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read scenario file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return scenario_from_json(text);
}

std::string plan_result_to_json(const PlanResult& result, bool include_timing) {
    json j;
    j["status"] = to_string(result.status);
    j["samples_used"] = result.samples_used;
    j["samples_per_stage"] = result.samples_per_stage;
    j["tree_sizes"] = result.tree_sizes;
    if (result.stage_solved_in)
        j["stage_solved_in"] = *result.stage_solved_in;
    else
        j["stage_solved_in"] = nullptr;
    j["path"] = result.path;
    if (include_timing) j["wall_time_s"] = result.wall_time;
    return j.dump(2) + "\n";
}

PlanResult plan_result_from_json(const std::string& text) {
    const json j = json::parse(text);
    PlanResult result;
    const std::string status = j.at("status").get<std::string>();
    if (status == "solved")
        result.status = PlanStatus::solved;
    else if (status == "timeout")
        result.status = PlanStatus::timeout;
    else
        result.status = PlanStatus::budget_exhausted;
    result.samples_used = j.at("samples_used").get<long long>();
    result.samples_per_stage = j.at("samples_per_stage").get<std::vector<long long>>();
    result.tree_sizes = j.at("tree_sizes").get<std::vector<std::size_t>>();
    if (!j.at("stage_solved_in").is_null())
        result.stage_solved_in = j.at("stage_solved_in").get<int>();
    result.path = j.at("path").get<std::vector<Configuration>>();
    if (j.contains("wall_time_s")) result.wall_time = j.at("wall_time_s").get<double>();
    return result;
}

}  // namespace rrtplus
