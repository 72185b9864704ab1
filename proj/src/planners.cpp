#include "rrtplus/planners.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace rrtplus {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Sampler that may decline (affine rejection exhausted): a nullopt
/// draw still consumes one unit of the stage budget.
using MaybeSampleFn = std::function<std::optional<Configuration>(RngStream&)>;

MaybeSampleFn always(SampleFn fn) {
    return [fn = std::move(fn)](RngStream& rng) -> std::optional<Configuration> {
        return fn(rng);
    };
}

struct MotionOracle {
    const ProblemDef* problem;
    double resolution;

    bool operator()(const Configuration& a, const Configuration& b) const {
        if (problem->motion) return problem->motion(a, b);
        return validate_motion(*problem, a, b, resolution);
    }
};

struct RunLimits {
    Clock::time_point start;
    double max_time;
    long long max_samples;

    bool out_of_time() const {
        return std::isfinite(max_time) && seconds_since(start) >= max_time;
    }
};

enum class PassOutcome { solved, stage_done, out_of_time, out_of_samples };

struct TransitionCtx {
    const CostFn* cost = nullptr;
    TransitionParams params;
    double temperature = 0.0;
};

bool transition_ok(TransitionCtx& ctx, const Configuration& from, const Configuration& to,
                   RngStream& rng) {
    const double c_from = (*ctx.cost)(from);
    const double c_to = (*ctx.cost)(to);
    if (c_to <= c_from) return true;  // downhill and flat moves always pass
    const double p = std::exp(-(c_to - c_from) / (ctx.params.cost_scale * ctx.temperature));
    if (rng.uniform_double() < p) {
        ctx.temperature /= std::pow(ctx.params.cool_base, 1.0 / ctx.params.n_fail_max);
        return true;
    }
    ctx.temperature *= ctx.params.heat_factor;
    return false;
}

double estimate_init_temperature(const ProblemDef& problem, const CostFn& cost,
                                 const TransitionParams& params, RngStream& rng) {
    if (std::isfinite(params.init_temp)) return params.init_temp;
    double lo = std::min(cost(problem.q_init), cost(problem.q_goal));
    double hi = std::max(cost(problem.q_init), cost(problem.q_goal));
    for (int i = 0; i < 64; ++i) {
        const double c = cost(sample_uniform(problem.bounds, rng));
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    return 1e-4 * std::max(hi - lo, 1.0);
}

/// One subsearch of the unidirectional planner. Consumes budget units
/// (one per sampling iteration) until the stage is exhausted, a global
/// limit trips, or the goal is connected.
PassOutcome rrt_pass(Tree& tree, int& goal_node, const ProblemDef& problem,
                     const PlannerParams& params, const MotionOracle& motion,
                     const MaybeSampleFn& sample, RngStream& rng, int stage_index,
                     long long stage_budget, std::optional<double> stage_quota,
                     const RunLimits& limits, long long& total_used, long long& stage_used) {
    const auto stage_start = Clock::now();
    while (stage_used < stage_budget) {
        if (total_used >= limits.max_samples) return PassOutcome::out_of_samples;
        if (limits.out_of_time()) return PassOutcome::out_of_time;
        if (stage_quota && seconds_since(stage_start) >= *stage_quota)
            return PassOutcome::stage_done;
        ++stage_used;
        ++total_used;

        Configuration q_rand;
        if (params.goal_bias > 0.0 && rng.uniform_double() < params.goal_bias) {
            q_rand = problem.q_goal;
        } else {
            auto drawn = sample(rng);
            if (!drawn) continue;  // no-op iteration
            q_rand = std::move(*drawn);
        }

        const std::size_t near = nearest_vertex(tree, q_rand);
        Configuration q_new = steer(tree.nodes[near].q, q_rand, params.step);
        if (!motion(tree.nodes[near].q, q_new)) continue;
        const int idx = tree.add(std::move(q_new), static_cast<int>(near), stage_index);

        const double dg = distance(tree.nodes[idx].q, problem.q_goal);
        if (dg <= params.goal_threshold) {
            if (dg == 0.0) {
                goal_node = idx;
                return PassOutcome::solved;
            }
            if (motion(tree.nodes[idx].q, problem.q_goal)) {
                goal_node = tree.add(problem.q_goal, idx, stage_index);
                return PassOutcome::solved;
            }
        }
    }
    return PassOutcome::stage_done;
}

enum class ExtendStatus { trapped, advanced, reached };

ExtendStatus extend_once(Tree& tree, const Configuration& target, const PlannerParams& params,
                         const MotionOracle& motion, int stage_index, TransitionCtx* transition,
                         RngStream& rng, int& new_index) {
    const std::size_t near = nearest_vertex(tree, target);
    Configuration q_new = steer(tree.nodes[near].q, target, params.step);
    if (!motion(tree.nodes[near].q, q_new)) return ExtendStatus::trapped;
    if (transition && !transition_ok(*transition, tree.nodes[near].q, q_new, rng))
        return ExtendStatus::trapped;
    const bool reached = (q_new == target);
    new_index = tree.add(std::move(q_new), static_cast<int>(near), stage_index);
    return reached ? ExtendStatus::reached : ExtendStatus::advanced;
}

/// One subsearch of the bidirectional planners (RRT-Connect, and BiT-RRT
/// when `transition` is set). Extend the current tree toward a sample,
/// then run the greedy Connect loop on the other tree; both the sample
/// and every Connect attempt count against the stage budget.
PassOutcome connect_pass(Tree& tree_a, Tree& tree_b, bool& cur_is_a, int& join_a, int& join_b,
                         const ProblemDef& problem, const PlannerParams& params,
                         const MotionOracle& motion, const MaybeSampleFn& sample,
                         TransitionCtx* transition, RngStream& rng, int stage_index,
                         long long stage_budget, std::optional<double> stage_quota,
                         const RunLimits& limits, long long& total_used, long long& stage_used) {
    const auto stage_start = Clock::now();
    while (stage_used < stage_budget) {
        if (total_used >= limits.max_samples) return PassOutcome::out_of_samples;
        if (limits.out_of_time()) return PassOutcome::out_of_time;
        if (stage_quota && seconds_since(stage_start) >= *stage_quota)
            return PassOutcome::stage_done;
        ++stage_used;
        ++total_used;

        Configuration q_rand;
        if (params.goal_bias > 0.0 && rng.uniform_double() < params.goal_bias) {
            q_rand = problem.q_goal;
        } else {
            auto drawn = sample(rng);
            if (!drawn) continue;
            q_rand = std::move(*drawn);
        }

        Tree& grow = cur_is_a ? tree_a : tree_b;
        Tree& other = cur_is_a ? tree_b : tree_a;

        int grown = -1;
        if (extend_once(grow, q_rand, params, motion, stage_index, transition, rng, grown) !=
            ExtendStatus::trapped) {
            const Configuration q_new = grow.nodes[grown].q;
            ExtendStatus st = ExtendStatus::advanced;
            int reached_index = -1;
            while (st == ExtendStatus::advanced && stage_used < stage_budget) {
                if (total_used >= limits.max_samples) return PassOutcome::out_of_samples;
                if (limits.out_of_time()) return PassOutcome::out_of_time;
                if (stage_quota && seconds_since(stage_start) >= *stage_quota)
                    return PassOutcome::stage_done;
                ++stage_used;
                ++total_used;
                st = extend_once(other, q_new, params, motion, stage_index, transition, rng,
                                 reached_index);
            }
            if (st == ExtendStatus::reached) {
                join_a = cur_is_a ? grown : reached_index;
                join_b = cur_is_a ? reached_index : grown;
                return PassOutcome::solved;
            }
        }
        cur_is_a = !cur_is_a;
    }
    return PassOutcome::stage_done;
}

std::vector<Configuration> join_paths(const Tree& tree_a, const Tree& tree_b, int join_a,
                                      int join_b) {
    std::vector<Configuration> path = tree_a.path_from_root(join_a);
    const auto tail = tree_b.path_from_root(join_b);  // q_goal .. q_join
    for (std::size_t k = tail.size() - 1; k-- > 0;) path.push_back(tail[k]);
    return path;
}

std::vector<std::size_t> random_permutation(std::size_t n, RngStream& rng) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_int(i));
        std::swap(order[i - 1], order[j]);
    }
    return order;
}

bool immediate_connect(const ProblemDef& problem, const PlannerParams& params,
                       const MotionOracle& motion, PlanResult& result) {
    if (distance(problem.q_init, problem.q_goal) <= params.goal_threshold &&
        motion(problem.q_init, problem.q_goal)) {
        result.status = PlanStatus::solved;
        result.path = {problem.q_init, problem.q_goal};
        return true;
    }
    return false;
}

PlanStatus status_from(PassOutcome outcome) {
    switch (outcome) {
        case PassOutcome::out_of_time: return PlanStatus::timeout;
        default: return PlanStatus::budget_exhausted;
    }
}

}  // namespace

std::vector<Configuration> Tree::path_from_root(int index) const {
    std::vector<Configuration> path;
    for (int i = index; i >= 0; i = nodes[i].parent) path.push_back(nodes[i].q);
    std::reverse(path.begin(), path.end());
    return path;
}

PlannerParams PlannerParams::defaults_for(const CSpaceBounds& bounds) {
    PlannerParams params;
    params.step = 0.15 * bounds.mean_extent();
    params.goal_threshold = params.step;
    params.edge_resolution = params.step / 20.0;
    return params;
}

std::string to_string(PlanStatus status) {
    switch (status) {
        case PlanStatus::solved: return "solved";
        case PlanStatus::timeout: return "timeout";
        case PlanStatus::budget_exhausted: return "budget-exhausted";
    }
    return "unknown";
}

std::size_t nearest_vertex(const Tree& tree, const Configuration& q) {
    if (tree.nodes.empty()) throw std::invalid_argument("nearest_vertex: empty tree");
    std::size_t best = 0;
    double best_sq = std::numeric_limits<double>::infinity();
    const std::size_t dim = q.size();
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const double* v = tree.nodes[i].q.data();
        double sq = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double d = v[k] - q[k];
            sq += d * d;
            if (sq >= best_sq) break;  // cannot beat the current (lowest-index) min
        }
        if (sq < best_sq) {
            best_sq = sq;
            best = i;
        }
    }
    return best;
}

bool validate_motion(const ProblemDef& problem, const Configuration& a, const Configuration& b,
                     double resolution) {
    if (a.size() != b.size())
        throw std::invalid_argument("validate_motion: dimension mismatch");
    const double d = distance(a, b);
    const long long steps = (d == 0.0) ? 0 : static_cast<long long>(std::ceil(d / resolution));
    for (long long k = 0; k <= steps; ++k) {
        const double t = (steps == 0) ? 0.0 : static_cast<double>(k) / static_cast<double>(steps);
        if (!problem.valid(interpolate(a, b, t))) return false;
    }
    return true;
}

SampleFn uniform_sampler(const CSpaceBounds& bounds) {
    return [bounds](RngStream& rng) { return sample_uniform(bounds, rng); };
}

PlanResult plan_rrt(const ProblemDef& problem, const PlannerParams& params,
                    const SampleFn& sampler, RngStream& rng) {
    const auto t0 = Clock::now();
    PlanResult result;
    MotionOracle motion{&problem, params.edge_resolution};

    Tree tree;
    tree.add(problem.q_init, -1, 1);

    if (immediate_connect(problem, params, motion, result)) {
        result.tree_sizes = {tree.size()};
        result.wall_time = seconds_since(t0);
        return result;
    }

    RunLimits limits{t0, params.max_time, params.max_samples};
    int goal_node = -1;
    long long stage_used = 0;
    const PassOutcome outcome = rrt_pass(
        tree, goal_node, problem, params, motion, always(sampler), rng, 1,
        std::numeric_limits<long long>::max(), std::nullopt, limits, result.samples_used,
        stage_used);

    if (outcome == PassOutcome::solved) {
        result.status = PlanStatus::solved;
        result.path = tree.path_from_root(goal_node);
    } else {
        result.status = status_from(outcome);
    }
    result.tree_sizes = {tree.size()};
    result.wall_time = seconds_since(t0);
    return result;
}

namespace {

PlanResult plan_bidirectional(const ProblemDef& problem, const PlannerParams& params,
                              const SampleFn& sampler, TransitionCtx* transition,
                              RngStream& rng) {
    const auto t0 = Clock::now();
    PlanResult result;
    MotionOracle motion{&problem, params.edge_resolution};

    Tree tree_a, tree_b;
    tree_a.add(problem.q_init, -1, 1);
    tree_b.add(problem.q_goal, -1, 1);

    if (immediate_connect(problem, params, motion, result)) {
        result.tree_sizes = {tree_a.size(), tree_b.size()};
        result.wall_time = seconds_since(t0);
        return result;
    }

    RunLimits limits{t0, params.max_time, params.max_samples};
    bool cur_is_a = true;
    int join_a = -1, join_b = -1;
    long long stage_used = 0;
    const PassOutcome outcome = connect_pass(
        tree_a, tree_b, cur_is_a, join_a, join_b, problem, params, motion, always(sampler),
        transition, rng, 1, std::numeric_limits<long long>::max(), std::nullopt, limits,
        result.samples_used, stage_used);

    if (outcome == PassOutcome::solved) {
        result.status = PlanStatus::solved;
        result.path = join_paths(tree_a, tree_b, join_a, join_b);
    } else {
        result.status = status_from(outcome);
    }
    result.tree_sizes = {tree_a.size(), tree_b.size()};
    result.wall_time = seconds_since(t0);
    return result;
}

}  // namespace

PlanResult plan_rrt_connect(const ProblemDef& problem, const PlannerParams& params,
                            const SampleFn& sampler, RngStream& rng) {
    return plan_bidirectional(problem, params, sampler, nullptr, rng);
}

PlanResult plan_bitrrt(const ProblemDef& problem, const PlannerParams& params,
                       const CostFn& cost, const TransitionParams& transition,
                       const SampleFn& sampler, RngStream& rng) {
    TransitionCtx ctx;
    ctx.cost = &cost;
    ctx.params = transition;
    ctx.temperature = estimate_init_temperature(problem, cost, transition, rng);
    return plan_bidirectional(problem, params, sampler, &ctx, rng);
}

PlanResult plan_staged(const ProblemDef& problem, const StagedOptions& options,
                       const SampleSchedule& schedule, const PlannerParams& params,
                       RngStream& rng) {
    const auto t0 = Clock::now();
    const std::size_t n = problem.bounds.dim();
    if (options.source != StageSource::full_c && schedule.stages() != n)
        throw std::invalid_argument("plan_staged: schedule needs one stage per DoF");
    if (schedule.stages() == 0)
        throw std::invalid_argument("plan_staged: empty schedule");

    PlanResult result;
    MotionOracle motion{&problem, params.edge_resolution};

    const bool bidirectional = options.base != BaseKind::rrt;
    Tree tree_a, tree_b;
    tree_a.add(problem.q_init, -1, 1);
    if (bidirectional) tree_b.add(problem.q_goal, -1, 1);

    CostFn zero_cost;
    TransitionCtx transition_ctx;
    TransitionCtx* transition = nullptr;
    if (options.base == BaseKind::bitrrt) {
        zero_cost = options.cost ? options.cost : [](const Configuration&) { return 0.0; };
        transition_ctx.cost = &zero_cost;
        transition_ctx.params = options.transition;
        transition_ctx.temperature =
            estimate_init_temperature(problem, zero_cost, options.transition, rng);
        transition = &transition_ctx;
    }

    if (immediate_connect(problem, params, motion, result)) {
        result.stage_solved_in = 1;
        result.tree_sizes = bidirectional ? std::vector<std::size_t>{tree_a.size(), tree_b.size()}
                                          : std::vector<std::size_t>{tree_a.size()};
        result.wall_time = seconds_since(t0);
        return result;
    }

    // Prioritized source: the release order is fixed for the whole run,
    // drawn from the planning stream unless the caller pinned one.
    PrioritizedStage pstage;
    if (options.source == StageSource::prioritized) {
        auto order = options.release_order ? *options.release_order : random_permutation(n, rng);
        pstage = make_prioritized_stage(problem.q_init, problem.q_goal, problem.bounds,
                                        std::move(order));
    }

    RunLimits limits{t0, params.max_time, params.max_samples};
    const bool time_mode = schedule.mode == SampleSchedule::Mode::wall_time;

    bool cur_is_a = true;
    int goal_node = -1, join_a = -1, join_b = -1;
    PassOutcome outcome = PassOutcome::stage_done;

    const std::size_t stages = schedule.stages();
    for (std::size_t s = 1; s <= stages; ++s) {
        MaybeSampleFn stage_sampler;
        switch (options.source) {
            case StageSource::full_c:
                stage_sampler = always(uniform_sampler(problem.bounds));
                break;
            case StageSource::prioritized: {
                if (s > 1) pstage = release_next(pstage);
                if (s == stages)  // final subsearch covers the entire box
                    while (pstage.num_constrained() > 0) pstage = release_next(pstage);
                stage_sampler = [&problem, pstage](RngStream& r) -> std::optional<Configuration> {
                    return prioritized_sample(problem.q_init, problem.q_goal, pstage,
                                              problem.bounds, r);
                };
                break;
            }
            case StageSource::affine: {
                if (s == stages) {
                    stage_sampler = always(uniform_sampler(problem.bounds));
                } else {
                    auto astage = make_affine_stage(problem.q_init, problem.q_goal, s, rng);
                    stage_sampler = [&problem,
                                     astage](RngStream& r) -> std::optional<Configuration> {
                        return affine_sample(astage, problem.bounds, r);
                    };
                }
                break;
            }
        }

        const long long budget =
            time_mode ? std::numeric_limits<long long>::max() : schedule.budgets[s - 1];
        const std::optional<double> quota =
            time_mode ? std::optional<double>(schedule.time_quota(s - 1)) : std::nullopt;

        long long stage_used = 0;
        if (bidirectional) {
            outcome = connect_pass(tree_a, tree_b, cur_is_a, join_a, join_b, problem, params,
                                   motion, stage_sampler, transition, rng, static_cast<int>(s),
                                   budget, quota, limits, result.samples_used, stage_used);
        } else {
            outcome = rrt_pass(tree_a, goal_node, problem, params, motion, stage_sampler, rng,
                               static_cast<int>(s), budget, quota, limits, result.samples_used,
                               stage_used);
        }
        result.samples_per_stage.push_back(stage_used);

        if (outcome == PassOutcome::solved) {
            result.status = PlanStatus::solved;
            result.stage_solved_in = static_cast<int>(s);
            result.path = bidirectional ? join_paths(tree_a, tree_b, join_a, join_b)
                                        : tree_a.path_from_root(goal_node);
            break;
        }
        if (outcome == PassOutcome::out_of_time || outcome == PassOutcome::out_of_samples) {
            result.status = status_from(outcome);
            break;
        }
        result.status = PlanStatus::budget_exhausted;  // schedule consumed
    }

    result.tree_sizes = bidirectional ? std::vector<std::size_t>{tree_a.size(), tree_b.size()}
                                      : std::vector<std::size_t>{tree_a.size()};
    result.wall_time = seconds_since(t0);
    return result;
}

}  // namespace rrtplus
