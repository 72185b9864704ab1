#include "rrtplus/subspace.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rrtplus {

bool PrioritizedStage::constrained(std::size_t dof) const {
    for (std::size_t i = released; i < release_order.size(); ++i)
        if (release_order[i] == dof) return true;
    return false;
}

long long SampleSchedule::budget_sum() const {
    long long sum = 0;
    for (long long k : budgets) sum += k;
    return sum;
}

double SampleSchedule::time_quota(std::size_t stage_index) const {
    const long long sum = budget_sum();
    if (sum <= 0) return 0.0;
    return total_time * static_cast<double>(budgets.at(stage_index)) / static_cast<double>(sum);
}

SampleSchedule find_sample_size(long long q_total, std::size_t n) {
    if (q_total < 1) throw std::invalid_argument("find_sample_size: Q_total must be >= 1");
    if (n < 1) throw std::invalid_argument("find_sample_size: n must be >= 1");

    SampleSchedule schedule;
    schedule.total = q_total;
    schedule.growth = std::exp(std::log(static_cast<double>(q_total)) / static_cast<double>(n));
    schedule.budgets.resize(n);
    for (std::size_t s = 1; s <= n; ++s) {
        const double k = std::pow(schedule.growth, static_cast<double>(s));
        schedule.budgets[s - 1] = std::max<long long>(1, std::llround(k));
    }
    return schedule;
}

SampleSchedule with_time_quotas(SampleSchedule schedule, double total_seconds) {
    if (total_seconds <= 0.0)
        throw std::invalid_argument("with_time_quotas: total_seconds must be positive");
    schedule.mode = SampleSchedule::Mode::wall_time;
    schedule.total_time = total_seconds;
    return schedule;
}

double worst_case_overhead(const SampleSchedule& schedule) {
    return static_cast<double>(schedule.budget_sum()) / static_cast<double>(schedule.total);
}

PrioritizedStage make_prioritized_stage(const Configuration& q_init,
                                        const Configuration& q_goal,
                                        const CSpaceBounds& bounds,
                                        std::vector<std::size_t> release_order) {
    const std::size_t n = bounds.dim();
    if (q_init.size() != n || q_goal.size() != n)
        throw std::invalid_argument("make_prioritized_stage: dimension mismatch");
    if (release_order.size() != n)
        throw std::invalid_argument("make_prioritized_stage: release order must cover all DoFs");
    std::vector<bool> seen(n, false);
    for (std::size_t dof : release_order) {
        if (dof >= n || seen[dof])
            throw std::invalid_argument("make_prioritized_stage: release order is not a permutation");
        seen[dof] = true;
    }

    PrioritizedStage stage;
    stage.release_order = std::move(release_order);
    stage.released = 0;
    stage.r_range = clip_line_to_box(q_init, q_goal, bounds);
    return stage;
}

PrioritizedStage release_next(PrioritizedStage stage) {
    if (stage.num_constrained() == 0)
        throw std::logic_error("release_next: constrained set already empty");
    ++stage.released;
    return stage;
}

Configuration prioritized_sample(const Configuration& q_init,
                                 const Configuration& q_goal,
                                 const PrioritizedStage& stage,
                                 const CSpaceBounds& bounds,
                                 RngStream& rng) {
    const std::size_t n = bounds.dim();
    if (q_init.size() != n || q_goal.size() != n || stage.release_order.size() != n)
        throw std::invalid_argument("prioritized_sample: dimension mismatch");

    // Random point in C along the init-goal line.
    const double r = rng.uniform_double(stage.r_range.first, stage.r_range.second);
    Configuration q(n);
    for (std::size_t i = 0; i < n; ++i) {
        q[i] = (q_goal[i] - q_init[i]) * r + q_init[i];
        // Guard against roundoff at the clipped ends of the chord.
        q[i] = std::clamp(q[i], bounds.lo[i], bounds.hi[i]);
    }

    // Released DoFs are resampled over their full range, ascending order.
    if (stage.released > 0) {
        std::vector<bool> is_constrained(n, false);
        for (std::size_t i = stage.released; i < n; ++i)
            is_constrained[stage.release_order[i]] = true;
        for (std::size_t dof = 0; dof < n; ++dof)
            if (!is_constrained[dof]) q[dof] = rng.uniform_double(bounds.lo[dof], bounds.hi[dof]);
    }
    return q;
}

AffineStage make_affine_stage(const Configuration& q_init,
                              const Configuration& q_goal,
                              std::size_t s,
                              RngStream& rng) {
    const std::size_t n = q_init.size();
    if (q_goal.size() != n)
        throw std::invalid_argument("make_affine_stage: dimension mismatch");
    if (s < 1 || s > n)
        throw std::invalid_argument("make_affine_stage: s must satisfy 1 <= s <= n");
    if (q_init == q_goal)
        throw std::invalid_argument("make_affine_stage: q_init == q_goal");

    constexpr double kMinSingularValue = 1e-6;
    constexpr int kMaxRedraws = 128;

    AffineStage stage;
    stage.n = n;
    stage.s = s;
    stage.origin = q_init;
    stage.basis.assign(n * s, 0.0);
    for (std::size_t i = 0; i < n; ++i) stage.basis[i] = q_goal[i] - q_init[i];

    // Random unit vector: rejection from the unit cube, then normalize.
    auto draw_unit = [&rng, n]() {
        std::vector<double> v(n);
        for (;;) {
            double sq = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = rng.uniform_double(-1.0, 1.0);
                sq += v[i] * v[i];
            }
            if (sq > 1e-6 && sq <= 1.0) {
                const double inv = 1.0 / std::sqrt(sq);
                for (double& x : v) x *= inv;
                return v;
            }
        }
    };

    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        for (std::size_t j = 1; j < s; ++j) {
            const auto v = draw_unit();
            for (std::size_t i = 0; i < n; ++i) stage.basis[j * n + i] = v[i];
        }
        Eigen::Map<const Eigen::MatrixXd> a(stage.basis.data(), static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(s));
        const auto sv = a.jacobiSvd().singularValues();
        if (sv(sv.size() - 1) > kMinSingularValue) return stage;
        if (s == 1) break;  // single-column rank is fixed by the endpoints
    }
    throw std::runtime_error("make_affine_stage: could not draw a full-rank basis");
}

std::optional<Configuration> affine_sample(const AffineStage& stage,
                                           const CSpaceBounds& bounds,
                                           RngStream& rng,
                                           int max_rejects) {
    const std::size_t n = stage.n;
    if (bounds.dim() != n)
        throw std::invalid_argument("affine_sample: dimension mismatch");

    // Coefficient ranges sized so the image of the coefficient box can
    // cover the whole C box along each basis direction.
    const double diag = bounds.diagonal();
    std::vector<double> rho(stage.s);
    for (std::size_t j = 0; j < stage.s; ++j) {
        double sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) sq += stage.col(i, j) * stage.col(i, j);
        rho[j] = diag / std::sqrt(sq);
    }

    Configuration q(n);
    for (int attempt = 0; attempt < max_rejects; ++attempt) {
        for (std::size_t i = 0; i < n; ++i) q[i] = stage.origin[i];
        for (std::size_t j = 0; j < stage.s; ++j) {
            const double r = rng.uniform_double(-rho[j], rho[j]);
            for (std::size_t i = 0; i < n; ++i) q[i] += r * stage.col(i, j);
        }
        if (bounds.contains(q)) return q;
    }
    return std::nullopt;
}

}  // namespace rrtplus
