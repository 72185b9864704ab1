#include "rrtplus/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rrtplus {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

Vec2 sub(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }

double norm(const Vec2& v) { return std::hypot(v.x, v.y); }

bool on_segment_collinear(const Vec2& p, const Vec2& q, const Vec2& r) {
    // q collinear with p-r assumed; is it within the bounding box?
    return std::min(p.x, r.x) <= q.x && q.x <= std::max(p.x, r.x) &&
           std::min(p.y, r.y) <= q.y && q.y <= std::max(p.y, r.y);
}

bool point_in_box(const Vec2& p, const Box2& box) {
    return p.x >= box.lo.x && p.x <= box.hi.x && p.y >= box.lo.y && p.y <= box.hi.y;
}

bool segment_box_intersect(const Segment2& seg, const Box2& box) {
    if (point_in_box(seg.a, box) || point_in_box(seg.b, box)) return true;
    // Liang-Barsky clip of the parametric segment against the slabs.
    const double dx = seg.b.x - seg.a.x;
    const double dy = seg.b.y - seg.a.y;
    double t0 = 0.0, t1 = 1.0;
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {seg.a.x - box.lo.x, box.hi.x - seg.a.x, seg.a.y - box.lo.y,
                         box.hi.y - seg.a.y};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0) return false;
        } else {
            const double r = q[i] / p[i];
            if (p[i] < 0.0) {
                t0 = std::max(t0, r);
            } else {
                t1 = std::min(t1, r);
            }
            if (t0 > t1) return false;
        }
    }
    return true;
}

double point_box_distance(const Vec2& p, const Box2& box) {
    const double dx = std::max({box.lo.x - p.x, 0.0, p.x - box.hi.x});
    const double dy = std::max({box.lo.y - p.y, 0.0, p.y - box.hi.y});
    return std::hypot(dx, dy);
}

/// Distance from an interior point to the workspace boundary; negative
/// outside the box.
double inside_distance(const Vec2& p, const Box2& box) {
    return std::min(std::min(p.x - box.lo.x, box.hi.x - p.x),
                    std::min(p.y - box.lo.y, box.hi.y - p.y));
}

}  // namespace

double point_segment_distance(const Vec2& p, const Segment2& s) {
    const Vec2 d = sub(s.b, s.a);
    const double len_sq = dot(d, d);
    if (len_sq == 0.0) return norm(sub(p, s.a));
    const double t = std::clamp(dot(sub(p, s.a), d) / len_sq, 0.0, 1.0);
    const Vec2 closest{s.a.x + t * d.x, s.a.y + t * d.y};
    return norm(sub(p, closest));
}

bool segments_intersect(const Segment2& s1, const Segment2& s2) {
    const double d1 = cross(s2.a, s2.b, s1.a);
    const double d2 = cross(s2.a, s2.b, s1.b);
    const double d3 = cross(s1.a, s1.b, s2.a);
    const double d4 = cross(s1.a, s1.b, s2.b);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    if (d1 == 0.0 && on_segment_collinear(s2.a, s1.a, s2.b)) return true;
    if (d2 == 0.0 && on_segment_collinear(s2.a, s1.b, s2.b)) return true;
    if (d3 == 0.0 && on_segment_collinear(s1.a, s2.a, s1.b)) return true;
    if (d4 == 0.0 && on_segment_collinear(s1.a, s2.b, s1.b)) return true;
    return false;
}

double segment_segment_distance(const Segment2& a, const Segment2& b) {
    if (segments_intersect(a, b)) return 0.0;
    return std::min(std::min(point_segment_distance(a.a, b), point_segment_distance(a.b, b)),
                    std::min(point_segment_distance(b.a, a), point_segment_distance(b.b, a)));
}

bool segment_intersects(const Segment2& seg, const Obstacle& obs) {
    if (const auto* circle = std::get_if<Circle>(&obs))
        return point_segment_distance(circle->center, seg) <= circle->radius;
    if (const auto* wall = std::get_if<Segment2>(&obs)) return segments_intersect(seg, *wall);
    return segment_box_intersect(seg, std::get<Box2>(obs));
}

double obstacle_distance(const Segment2& seg, const Obstacle& obs) {
    if (const auto* circle = std::get_if<Circle>(&obs))
        return std::max(0.0, point_segment_distance(circle->center, seg) - circle->radius);
    if (const auto* wall = std::get_if<Segment2>(&obs))
        return segment_segment_distance(seg, *wall);
    const auto& box = std::get<Box2>(obs);
    if (segment_box_intersect(seg, box)) return 0.0;
    const Segment2 edges[4] = {
        {{box.lo.x, box.lo.y}, {box.hi.x, box.lo.y}},
        {{box.hi.x, box.lo.y}, {box.hi.x, box.hi.y}},
        {{box.hi.x, box.hi.y}, {box.lo.x, box.hi.y}},
        {{box.lo.x, box.hi.y}, {box.lo.x, box.lo.y}},
    };
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : edges) best = std::min(best, segment_segment_distance(seg, e));
    return best;
}

std::vector<Vec2> forward_kinematics(const ChainRobot& robot, const Configuration& q) {
    if (static_cast<int>(q.size()) != robot.num_links)
        throw std::invalid_argument("forward_kinematics: joint count mismatch");
    std::vector<Vec2> points(q.size() + 1);
    points[0] = robot.base;
    double heading = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        heading += q[i];
        points[i + 1] = {points[i].x + robot.link_length * std::cos(heading),
                         points[i].y + robot.link_length * std::sin(heading)};
    }
    return points;
}

bool chain_in_collision(const ChainRobot& robot, const Environment& env, const Configuration& q,
                        bool self_collision) {
    const auto points = forward_kinematics(robot, q);
    for (const auto& p : points)
        if (!point_in_box(p, env.workspace)) return true;

    const int n = robot.num_links;
    for (int i = 0; i < n; ++i) {
        const Segment2 link{points[i], points[i + 1]};
        for (const auto& obs : env.obstacles) {
            if (robot.inflation > 0.0) {
                if (obstacle_distance(link, obs) <= robot.inflation) return true;
            } else if (segment_intersects(link, obs)) {
                return true;
            }
        }
    }
    if (self_collision) {
        for (int i = 0; i < n; ++i) {
            const Segment2 li{points[i], points[i + 1]};
            for (int j = i + 2; j < n; ++j) {
                const Segment2 lj{points[j], points[j + 1]};
                if (robot.inflation > 0.0) {
                    if (segment_segment_distance(li, lj) <= 2.0 * robot.inflation) return true;
                } else if (segments_intersect(li, lj)) {
                    return true;
                }
            }
        }
    }
    return false;
}

namespace {

/// Upper bound on the speed of any point of link i (1-based) per unit
/// of configuration-space motion: joint k contributes a moment arm of
/// at most (i - k + 1) links.
std::vector<double> link_speed_bounds(const ChainRobot& robot) {
    std::vector<double> bound(robot.num_links + 1, 0.0);
    double sum_sq = 0.0;
    for (int i = 1; i <= robot.num_links; ++i) {
        sum_sq += static_cast<double>(i) * static_cast<double>(i);
        bound[i] = robot.link_length * std::sqrt(sum_sq);
    }
    return bound;
}

/// Largest C-space advance guaranteed collision-free from q, or 0 when
/// q itself is (nearly) in contact. `speed` comes from
/// link_speed_bounds.
double safe_advance(const ChainRobot& robot, const Environment& env, bool self_collision,
                    const Configuration& q, const std::vector<double>& speed, double contact_tol) {
    const auto points = forward_kinematics(robot, q);
    const int n = robot.num_links;
    double advance = std::numeric_limits<double>::infinity();

    for (int j = 1; j <= n; ++j) {
        const double c = inside_distance(points[j], env.workspace) - robot.inflation;
        if (c <= contact_tol) return 0.0;
        advance = std::min(advance, c / speed[j]);
    }
    for (int i = 1; i <= n; ++i) {
        const Segment2 link{points[i - 1], points[i]};
        for (const auto& obs : env.obstacles) {
            const double c = obstacle_distance(link, obs) - robot.inflation;
            if (c <= contact_tol) return 0.0;
            advance = std::min(advance, c / speed[i]);
        }
    }
    if (self_collision) {
        for (int i = 1; i <= n; ++i) {
            const Segment2 li{points[i - 1], points[i]};
            for (int j = i + 2; j <= n; ++j) {
                const Segment2 lj{points[j - 1], points[j]};
                const double c = segment_segment_distance(li, lj) - 2.0 * robot.inflation;
                if (c <= contact_tol) return 0.0;
                advance = std::min(advance, c / (speed[i] + speed[j]));
            }
        }
    }
    return advance;
}

}  // namespace

double chain_clearance(const ChainRobot& robot, const Environment& env, const Configuration& q,
                       bool self_collision) {
    const auto points = forward_kinematics(robot, q);
    const int n = robot.num_links;
    double clearance = std::numeric_limits<double>::infinity();
    for (const auto& p : points)
        clearance = std::min(clearance, inside_distance(p, env.workspace) - robot.inflation);
    for (int i = 0; i < n; ++i) {
        const Segment2 link{points[i], points[i + 1]};
        for (const auto& obs : env.obstacles)
            clearance = std::min(clearance, obstacle_distance(link, obs) - robot.inflation);
    }
    if (self_collision) {
        for (int i = 0; i < n; ++i) {
            const Segment2 li{points[i], points[i + 1]};
            for (int j = i + 2; j < n; ++j) {
                const Segment2 lj{points[j], points[j + 1]};
                clearance = std::min(clearance,
                                     segment_segment_distance(li, lj) - 2.0 * robot.inflation);
            }
        }
    }
    return clearance;
}

bool chain_motion_free(const ChainRobot& robot, const Environment& env, bool self_collision,
                       const Configuration& a, const Configuration& b) {
    const auto speed = link_speed_bounds(robot);
    const double contact_tol = 1e-6 * robot.link_length;
    const double d = distance(a, b);
    constexpr int kMaxEvals = 20000;

    double s = 0.0;
    for (int evals = 0; evals < kMaxEvals; ++evals) {
        const Configuration q = (d == 0.0) ? a : interpolate(a, b, std::min(1.0, s / d));
        const double advance = safe_advance(robot, env, self_collision, q, speed, contact_tol);
        if (advance <= 0.0) return false;
        if (s >= d) return true;
        s = std::min(d, s + advance);
    }
    return false;  // grazing too closely to certify; reject conservatively
}

std::string to_string(EnvKind kind) {
    switch (kind) {
        case EnvKind::empty: return "empty";
        case EnvKind::easy_random: return "easy";
        case EnvKind::cluttered_random: return "cluttered";
        case EnvKind::horn: return "horn";
    }
    return "unknown";
}

EnvKind env_kind_from_string(const std::string& name) {
    if (name == "empty") return EnvKind::empty;
    if (name == "easy" || name == "easy-random") return EnvKind::easy_random;
    if (name == "cluttered" || name == "cluttered-random") return EnvKind::cluttered_random;
    if (name == "horn") return EnvKind::horn;
    throw std::invalid_argument("unknown environment kind: " + name);
}

namespace {

double chain_obstacle_margin(const ChainRobot& robot, const Configuration& q,
                             const Obstacle& obs) {
    const auto points = forward_kinematics(robot, q);
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < robot.num_links; ++i) {
        const Segment2 link{points[i], points[i + 1]};
        margin = std::min(margin, obstacle_distance(link, obs));
    }
    return margin;
}

ScenarioSpec make_random_scenario(EnvKind kind, int n, RngStream& rng) {
    const double link = 1.0;
    const double reach = link * n;

    ScenarioSpec scenario;
    scenario.robot = {n, link, {0.0, 0.0}, 0.0};
    scenario.bounds = CSpaceBounds::cube(static_cast<std::size_t>(n), -kPi, kPi);
    scenario.self_collision = false;
    scenario.env.kind = kind;
    scenario.env.workspace = {{-(reach + 1.0), -(reach + 1.0)}, {reach + 1.0, reach + 1.0}};
    scenario.q_init.assign(n, 0.0);

    // Goal pose: any sufficiently distinct random configuration.
    const double min_separation = 0.35 * std::sqrt(static_cast<double>(n));
    bool have_goal = false;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Configuration q = sample_uniform(scenario.bounds, rng);
        if (distance(q, scenario.q_init) >= min_separation) {
            scenario.q_goal = std::move(q);
            have_goal = true;
            break;
        }
    }
    if (!have_goal) throw std::runtime_error("make_scenario: could not draw a goal pose");

    int num_circles = 0;
    if (kind == EnvKind::easy_random) num_circles = 5;
    if (kind == EnvKind::cluttered_random) num_circles = 15;

    const double clear_margin = 0.35 * link;
    for (int c = 0; c < num_circles; ++c) {
        bool placed = false;
        for (int attempt = 0; attempt < 500 && !placed; ++attempt) {
            const double angle = rng.uniform_double(0.0, 2.0 * kPi);
            const double dist = rng.uniform_double(0.25 * reach, 0.85 * reach);
            const double radius = rng.uniform_double(0.05 * reach, 0.10 * reach);
            const Circle circle{{dist * std::cos(angle), dist * std::sin(angle)}, radius};

            bool ok = true;
            for (const auto& other : scenario.env.obstacles) {
                const auto& oc = std::get<Circle>(other);
                const double gap = norm(sub(circle.center, oc.center)) - circle.radius - oc.radius;
                if (gap < 0.05 * link) ok = false;
            }
            if (ok) {
                const Obstacle obs = circle;
                if (chain_obstacle_margin(scenario.robot, scenario.q_init, obs) < clear_margin ||
                    chain_obstacle_margin(scenario.robot, scenario.q_goal, obs) < clear_margin)
                    ok = false;
            }
            if (ok) {
                scenario.env.obstacles.emplace_back(circle);
                placed = true;
            }
        }
        if (!placed) throw std::runtime_error("make_scenario: obstacle placement retries exhausted");
    }
    return scenario;
}

ScenarioSpec make_horn_scenario(int n, RngStream& rng) {
    (void)rng;  // geometry is closed-form; the seed picks nothing today
    const double link = 1.0;

    // Corridor centerline: circular arc the goal pose is inscribed in.
    const double chain_sweep = (kPi / 180.0) * std::min(200.0, 40.0 * n);
    const double delta = chain_sweep / n;
    const double radius_center = link / (2.0 * std::sin(delta / 2.0));
    const double gap = 1.6 * link;
    const double radius_outer = radius_center + gap / 2.0;
    const double radius_inner = std::max(radius_center - gap / 2.0, 0.2 * radius_center);

    ScenarioSpec scenario;
    scenario.robot = {n, link, {0.0, 0.0}, 0.0};
    scenario.bounds = CSpaceBounds::cube(static_cast<std::size_t>(n), -kPi, kPi);
    scenario.self_collision = true;
    scenario.env.kind = EnvKind::horn;

    const Vec2 center{-radius_center, 0.0};
    const double wall_start = (kPi / 180.0) * 14.0;
    const double wall_end = std::min(chain_sweep + (kPi / 180.0) * 30.0, (kPi / 180.0) * 320.0);
    const double wall_step = (kPi / 180.0) * 6.0;

    auto arc_point = [&center](double radius, double theta) {
        return Vec2{center.x + radius * std::cos(theta), center.y + radius * std::sin(theta)};
    };
    const int wall_segments =
        static_cast<int>(std::ceil((wall_end - wall_start) / wall_step));
    for (double radius : {radius_outer, radius_inner}) {
        for (int k = 0; k < wall_segments; ++k) {
            const double theta = wall_start + (wall_end - wall_start) * k / wall_segments;
            const double next = wall_start + (wall_end - wall_start) * (k + 1) / wall_segments;
            scenario.env.obstacles.emplace_back(
                Segment2{arc_point(radius, theta), arc_point(radius, next)});
        }
    }

    const double half = radius_center + link * n + 2.0;
    scenario.env.workspace = {{-half, -half}, {half, half}};

    scenario.q_init.assign(n, 0.0);
    scenario.q_goal.assign(n, delta);
    scenario.q_goal[0] = kPi / 2.0 + delta / 2.0;

    if (gap <= 2.0 * scenario.robot.inflation)
        throw std::runtime_error("make_scenario: horn gap below link thickness");
    return scenario;
}

}  // namespace

ScenarioSpec make_scenario(EnvKind kind, int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("make_scenario: need at least 2 DoF");
    RngStream rng(seed);

    ScenarioSpec scenario =
        (kind == EnvKind::horn) ? make_horn_scenario(n, rng) : make_random_scenario(kind, n, rng);
    scenario.name = to_string(kind);

    if (!scenario.bounds.contains(scenario.q_init) || !scenario.bounds.contains(scenario.q_goal))
        throw std::runtime_error("make_scenario: endpoint out of joint bounds");
    if (chain_in_collision(scenario.robot, scenario.env, scenario.q_init, scenario.self_collision))
        throw std::runtime_error("make_scenario: q_init is in collision");
    if (chain_in_collision(scenario.robot, scenario.env, scenario.q_goal, scenario.self_collision))
        throw std::runtime_error("make_scenario: q_goal is in collision");
    return scenario;
}

ProblemDef problem_from_scenario(const ScenarioSpec& scenario) {
    ProblemDef problem;
    problem.bounds = scenario.bounds;
    problem.q_init = scenario.q_init;
    problem.q_goal = scenario.q_goal;
    const ChainRobot robot = scenario.robot;
    const Environment env = scenario.env;
    const bool self_collision = scenario.self_collision;
    const CSpaceBounds bounds = scenario.bounds;
    problem.valid = [robot, env, self_collision, bounds](const Configuration& q) {
        return bounds.contains(q) && !chain_in_collision(robot, env, q, self_collision);
    };
    problem.motion = [robot, env, self_collision](const Configuration& a, const Configuration& b) {
        return chain_motion_free(robot, env, self_collision, a, b);
    };
    return problem;
}

}  // namespace rrtplus
