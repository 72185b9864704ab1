#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rrtplus/rng.hpp"

namespace rrtplus {

/// A point in the configuration space: one value per degree of freedom
/// (radians for revolute joints).
using Configuration = std::vector<double>;

/// Axis-aligned box C-space: per-DoF closed intervals [lo_i, hi_i].
struct CSpaceBounds {
    std::vector<double> lo;
    std::vector<double> hi;

    CSpaceBounds() = default;
    CSpaceBounds(std::vector<double> lo_in, std::vector<double> hi_in);

    /// n identical axes [axis_lo, axis_hi].
    static CSpaceBounds cube(std::size_t n, double axis_lo, double axis_hi);

    std::size_t dim() const { return lo.size(); }
    double extent(std::size_t i) const { return hi[i] - lo[i]; }
    double mean_extent() const;
    /// Euclidean length of the box diagonal.
    double diagonal() const;
    bool contains(const Configuration& q, double tol = 0.0) const;
};

/// Uniform sample over the box, one independent draw per axis in axis order.
Configuration sample_uniform(const CSpaceBounds& bounds, RngStream& rng);

/// Euclidean distance. Throws std::invalid_argument on dimension mismatch.
double distance(const Configuration& a, const Configuration& b);

/// a + t(b - a) componentwise, t in [0, 1].
Configuration interpolate(const Configuration& a, const Configuration& b, double t);

/// Maximal parameter interval [r_min, r_max] such that
/// q_init + r (q_goal - q_init) stays inside the box for every r in it.
/// Both endpoints must be in-bounds and distinct, so r_min <= 0 and r_max >= 1.
std::pair<double, double> clip_line_to_box(const Configuration& q_init,
                                           const Configuration& q_goal,
                                           const CSpaceBounds& bounds);

/// Moves from q_near toward q_rand by at most `step`; returns q_rand
/// itself when it is within reach.
Configuration steer(const Configuration& q_near, const Configuration& q_rand, double step);

}  // namespace rrtplus
