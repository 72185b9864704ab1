#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "rrtplus/cspace.hpp"
#include "rrtplus/planners.hpp"

namespace rrtplus {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Segment2 {
    Vec2 a, b;
};

struct Circle {
    Vec2 center;
    double radius = 0.0;
};

struct Box2 {
    Vec2 lo, hi;
};

using Obstacle = std::variant<Circle, Segment2, Box2>;

/// Planar chain of `num_links` equal revolute links anchored at `base`.
/// Links are segments; `inflation` gives them an optional half-width.
struct ChainRobot {
    int num_links = 1;
    double link_length = 1.0;
    Vec2 base{0.0, 0.0};
    double inflation = 0.0;
};

enum class EnvKind { empty, easy_random, cluttered_random, horn };

std::string to_string(EnvKind kind);
EnvKind env_kind_from_string(const std::string& name);

struct Environment {
    std::vector<Obstacle> obstacles;
    Box2 workspace;
    EnvKind kind = EnvKind::empty;
};

/// A full planning instance: environment, robot, joint box and both
/// endpoint poses (validated collision-free on construction).
struct ScenarioSpec {
    Environment env;
    ChainRobot robot;
    Configuration q_init;
    Configuration q_goal;
    CSpaceBounds bounds;
    bool self_collision = false;
    std::string name;
};

// --- geometry primitives ---

double point_segment_distance(const Vec2& p, const Segment2& s);
double segment_segment_distance(const Segment2& a, const Segment2& b);
/// Proper or touching intersection, including collinear overlap.
bool segments_intersect(const Segment2& a, const Segment2& b);
/// Exact zero-thickness test of a segment against a solid obstacle.
bool segment_intersects(const Segment2& seg, const Obstacle& obs);
/// Distance from a segment to a solid obstacle (0 when they intersect).
double obstacle_distance(const Segment2& seg, const Obstacle& obs);

// --- chain ---

/// Joint positions: num_links + 1 points, point 0 at the base, headings
/// accumulated over the joint values.
std::vector<Vec2> forward_kinematics(const ChainRobot& robot, const Configuration& q);

/// Any link hits an obstacle, leaves the workspace box, or (optionally)
/// a non-adjacent link pair intersects.
bool chain_in_collision(const ChainRobot& robot, const Environment& env, const Configuration& q,
                        bool self_collision);

/// Smallest margin across all collision constraints (obstacles,
/// workspace walls, optional self pairs), inflation subtracted;
/// non-positive when in collision.
double chain_clearance(const ChainRobot& robot, const Environment& env, const Configuration& q,
                       bool self_collision);

/// Conservative straight-segment check: walks from a to b advancing by
/// clearance over a per-link velocity bound, so acceptance implies the
/// whole swept motion is collision-free at any resolution.
bool chain_motion_free(const ChainRobot& robot, const Environment& env, bool self_collision,
                       const Configuration& a, const Configuration& b);

/// Deterministic scenario generator for the four benchmark environments.
/// Throws std::runtime_error when a valid instance cannot be produced.
ScenarioSpec make_scenario(EnvKind kind, int n, std::uint64_t seed);

/// ProblemDef over the scenario: validity via chain_in_collision, motion
/// via the conservative walker.
ProblemDef problem_from_scenario(const ScenarioSpec& scenario);

}  // namespace rrtplus
