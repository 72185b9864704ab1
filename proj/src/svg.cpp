#include "rrtplus/svg.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rrtplus {

namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

struct Mapper {
    Box2 workspace;
    double tx(double x) const { return x - workspace.lo.x; }
    double ty(double y) const { return workspace.hi.y - y; }  // SVG y grows downward
};

void emit_pose(std::ostringstream& out, const Mapper& map, const ScenarioSpec& scenario,
               const Configuration& q, const std::string& color, double opacity,
               double stroke_width) {
    const auto points = forward_kinematics(scenario.robot, q);
    out << "  <polyline class=\"chain\" fill=\"none\" stroke=\"" << color
        << "\" stroke-opacity=\"" << num(opacity) << "\" stroke-width=\"" << num(stroke_width)
        << "\" stroke-linecap=\"round\" stroke-linejoin=\"round\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) out << ' ';
        out << num(map.tx(points[i].x)) << ',' << num(map.ty(points[i].y));
    }
    out << "\"/>\n";
}

Configuration pose_at_fraction(const std::vector<Configuration>& path, double fraction) {
    double total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) total += distance(path[i - 1], path[i]);
    if (total == 0.0) return path.front();
    const double target = fraction * total;
    double walked = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        const double seg = distance(path[i - 1], path[i]);
        if (walked + seg >= target) {
            const double t = (seg == 0.0) ? 0.0 : (target - walked) / seg;
            return interpolate(path[i - 1], path[i], std::min(1.0, std::max(0.0, t)));
        }
        walked += seg;
    }
    return path.back();
}

}  // namespace

std::string render_solution_svg(const ScenarioSpec& scenario,
                                const std::vector<Configuration>& path, int frames) {
    if (path.empty()) throw std::invalid_argument("render_solution_svg: empty path");
    if (frames < 2) frames = 2;

    const Mapper map{scenario.env.workspace};
    const double width = scenario.env.workspace.hi.x - scenario.env.workspace.lo.x;
    const double height = scenario.env.workspace.hi.y - scenario.env.workspace.lo.y;
    const double stroke = std::max(0.04 * scenario.robot.link_length,
                                   2.0 * scenario.robot.inflation);

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << num(width) << ' '
        << num(height) << "\" width=\"800\" height=\"" << num(800.0 * height / width) << "\">\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" fill=\"white\" stroke=\"#888888\" stroke-width=\"" << num(0.02 * width)
        << "\"/>\n";

    for (const auto& obs : scenario.env.obstacles) {
        if (const auto* circle = std::get_if<Circle>(&obs)) {
            out << "  <circle cx=\"" << num(map.tx(circle->center.x)) << "\" cy=\""
                << num(map.ty(circle->center.y)) << "\" r=\"" << num(circle->radius)
                << "\" fill=\"#b0b0b0\"/>\n";
        } else if (const auto* wall = std::get_if<Segment2>(&obs)) {
            out << "  <line x1=\"" << num(map.tx(wall->a.x)) << "\" y1=\""
                << num(map.ty(wall->a.y)) << "\" x2=\"" << num(map.tx(wall->b.x)) << "\" y2=\""
                << num(map.ty(wall->b.y))
                << "\" stroke=\"#505050\" stroke-width=\"" << num(stroke) << "\"/>\n";
        } else {
            const auto& box = std::get<Box2>(obs);
            out << "  <rect x=\"" << num(map.tx(box.lo.x)) << "\" y=\"" << num(map.ty(box.hi.y))
                << "\" width=\"" << num(box.hi.x - box.lo.x) << "\" height=\""
                << num(box.hi.y - box.lo.y) << "\" fill=\"#b0b0b0\"/>\n";
        }
    }

    // Intermediate poses first so the endpoint poses stay on top.
    const double chain_stroke = std::max(0.06 * scenario.robot.link_length,
                                         2.0 * scenario.robot.inflation);
    for (int k = 1; k + 1 < frames; ++k) {
        const double f = static_cast<double>(k) / (frames - 1);
        emit_pose(out, map, scenario, pose_at_fraction(path, f), "#4878cf", 0.15 + 0.55 * f,
                  chain_stroke);
    }
    emit_pose(out, map, scenario, path.front(), "#d62728", 0.9, chain_stroke);
    emit_pose(out, map, scenario, path.back(), "#2ca02c", 0.9, chain_stroke);

    out << "</svg>\n";
    return out.str();
}

void save_svg(const std::string& svg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write SVG file: " + path);
    out << svg;
}

}  // namespace rrtplus
