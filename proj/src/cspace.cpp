#include "rrtplus/cspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rrtplus {

CSpaceBounds::CSpaceBounds(std::vector<double> lo_in, std::vector<double> hi_in)
    : lo(std::move(lo_in)), hi(std::move(hi_in)) {
    if (lo.size() != hi.size() || lo.empty())
        throw std::invalid_argument("CSpaceBounds: lo/hi must have equal nonzero length");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i]))
            throw std::invalid_argument("CSpaceBounds: requires lo < hi on every axis");
}

CSpaceBounds CSpaceBounds::cube(std::size_t n, double axis_lo, double axis_hi) {
    return CSpaceBounds(std::vector<double>(n, axis_lo), std::vector<double>(n, axis_hi));
}

double CSpaceBounds::mean_extent() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) sum += extent(i);
    return sum / static_cast<double>(dim());
}

double CSpaceBounds::diagonal() const {
    double sq = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) sq += extent(i) * extent(i);
    return std::sqrt(sq);
}

bool CSpaceBounds::contains(const Configuration& q, double tol) const {
    if (q.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i)
        if (q[i] < lo[i] - tol || q[i] > hi[i] + tol) return false;
    return true;
}

Configuration sample_uniform(const CSpaceBounds& bounds, RngStream& rng) {
    Configuration q(bounds.dim());
    for (std::size_t i = 0; i < bounds.dim(); ++i)
        q[i] = rng.uniform_double(bounds.lo[i], bounds.hi[i]);
    return q;
}

double distance(const Configuration& a, const Configuration& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("distance: dimension mismatch");
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sq += d * d;
    }
    return std::sqrt(sq);
}

Configuration interpolate(const Configuration& a, const Configuration& b, double t) {
    if (a.size() != b.size())
        throw std::invalid_argument("interpolate: dimension mismatch");
    if (t < 0.0 || t > 1.0)
        throw std::invalid_argument("interpolate: t outside [0, 1]");
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    Configuration q(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) q[i] = a[i] + t * (b[i] - a[i]);
    return q;
}

std::pair<double, double> clip_line_to_box(const Configuration& q_init,
                                           const Configuration& q_goal,
                                           const CSpaceBounds& bounds) {
    if (q_init.size() != bounds.dim() || q_goal.size() != bounds.dim())
        throw std::invalid_argument("clip_line_to_box: dimension mismatch");
    if (q_init == q_goal)
        throw std::invalid_argument("clip_line_to_box: zero direction (q_init == q_goal)");

    // Parametric slab clipping: intersect the admissible r interval of
    // each axis. Axes with zero direction stay in-bounds for every r.
    double r_min = -std::numeric_limits<double>::infinity();
    double r_max = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < bounds.dim(); ++i) {
        const double d = q_goal[i] - q_init[i];
        if (d == 0.0) continue;
        double t_lo = (bounds.lo[i] - q_init[i]) / d;
        double t_hi = (bounds.hi[i] - q_init[i]) / d;
        if (t_lo > t_hi) std::swap(t_lo, t_hi);
        r_min = std::max(r_min, t_lo);
        r_max = std::min(r_max, t_hi);
    }
    return {r_min, r_max};
}

Configuration steer(const Configuration& q_near, const Configuration& q_rand, double step) {
    const double d = distance(q_near, q_rand);
    if (d <= step) return q_rand;
    const double t = step / d;
    Configuration q(q_near.size());
    for (std::size_t i = 0; i < q_near.size(); ++i)
        q[i] = q_near[i] + t * (q_rand[i] - q_near[i]);
    return q;
}

}  // namespace rrtplus
