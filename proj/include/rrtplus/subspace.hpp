#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rrtplus/cspace.hpp"
#include "rrtplus/rng.hpp"

namespace rrtplus {

/// Search region for the prioritized-release sampler: the DoFs still in
/// the constrained set follow the init-goal line (one shared scalar r),
/// the released DoFs range over their full intervals. Releasing pops
/// DoFs from `release_order` front to back, so the constrained set is
/// always the unreleased suffix.
struct PrioritizedStage {
    std::vector<std::size_t> release_order;  // permutation of 0..n-1
    std::size_t released = 0;                // prefix of release_order already freed
    std::pair<double, double> r_range{0.0, 1.0};

    std::size_t num_constrained() const { return release_order.size() - released; }
    bool constrained(std::size_t dof) const;

    /// Dimension of the search region: the shared line scalar plus one
    /// per released DoF; once everything is released the region is the
    /// whole box.
    std::size_t dim() const {
        const std::size_t n = release_order.size();
        return num_constrained() == 0 ? n : 1 + (n - num_constrained());
    }
};

/// Affine flat through q_init and q_goal: points q = basis * r + origin.
/// Column 0 is q_goal - q_init, so the coefficient e1 reaches the goal.
struct AffineStage {
    std::size_t n = 0;  // ambient dimension
    std::size_t s = 0;  // flat dimension (columns)
    Configuration origin;             // q_init
    std::vector<double> basis;        // n x s, column-major
    double col(std::size_t i, std::size_t j) const { return basis[j * n + i]; }
};

/// Per-stage sample budgets k_s = round(v^s) with v = Q_total^(1/n).
struct SampleSchedule {
    enum class Mode { samples, wall_time };

    std::vector<long long> budgets;
    double growth = 1.0;
    long long total = 0;  // Q_total the schedule was built for
    Mode mode = Mode::samples;
    double total_time = 0.0;  // seconds, wall_time mode only

    std::size_t stages() const { return budgets.size(); }
    long long budget_sum() const;
    /// Stage share of total_time, proportional to its sample budget.
    double time_quota(std::size_t stage_index) const;
};

/// Geometric budget split of Q_total across n stages.
SampleSchedule find_sample_size(long long q_total, std::size_t n);

/// Same geometric proportions, but stages are bounded by time quotas
/// summing to total_seconds instead of by sample counts.
SampleSchedule with_time_quotas(SampleSchedule schedule, double total_seconds);

/// sum(budgets) / Q_total; bounded by v/(v-1) up to rounding slack.
double worst_case_overhead(const SampleSchedule& schedule);

/// Fully constrained stage (line search) for the given endpoints.
/// The r interval is clipped once here and reused for the whole run.
PrioritizedStage make_prioritized_stage(const Configuration& q_init,
                                        const Configuration& q_goal,
                                        const CSpaceBounds& bounds,
                                        std::vector<std::size_t> release_order);

/// Releases the next DoF in order. Throws if nothing is left to release.
PrioritizedStage release_next(PrioritizedStage stage);

/// Draws r uniform on stage.r_range, places every coordinate on the
/// init-goal line, then overwrites each released DoF with an
/// independent uniform draw over its interval (ascending DoF order).
Configuration prioritized_sample(const Configuration& q_init,
                                 const Configuration& q_goal,
                                 const PrioritizedStage& stage,
                                 const CSpaceBounds& bounds,
                                 RngStream& rng);

/// Random s-dimensional flat through both endpoints; extra columns are
/// random unit vectors, redrawn until the basis is solidly full rank
/// (smallest singular value above 1e-6).
AffineStage make_affine_stage(const Configuration& q_init,
                              const Configuration& q_goal,
                              std::size_t s,
                              RngStream& rng);

/// Rejection-samples the flat against the box: coefficients are drawn
/// uniform on [-rho_j, rho_j] with rho_j = box diagonal / column norm,
/// and out-of-box points are discarded. Returns nullopt after
/// max_rejects consecutive rejections.
std::optional<Configuration> affine_sample(const AffineStage& stage,
                                           const CSpaceBounds& bounds,
                                           RngStream& rng,
                                           int max_rejects = 100);

}  // namespace rrtplus
