#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rrtplus/cspace.hpp"
#include "rrtplus/rng.hpp"
#include "rrtplus/subspace.hpp"

namespace rrtplus {

/// RRT graph. Nodes are append-only; node 0 is the root, every other
/// node points at an earlier node, so the structure is acyclic by
/// construction. Edges are validated before insertion by the planners.
struct Tree {
    struct Node {
        Configuration q;
        int parent;  // -1 for the root
        int stage;   // subsearch index the node was created in (1-based)
    };

    std::vector<Node> nodes;

    int add(Configuration q, int parent, int stage) {
        nodes.push_back({std::move(q), parent, stage});
        return static_cast<int>(nodes.size()) - 1;
    }
    std::size_t size() const { return nodes.size(); }

    /// Root-to-node configuration sequence.
    std::vector<Configuration> path_from_root(int index) const;
};

/// Planning problem: box bounds, endpoints, and the collision oracles.
/// `valid` answers single-configuration queries. `motion`, when set,
/// answers segment queries directly (e.g. a conservative clearance
/// walker); otherwise segments are checked by discretizing `valid` at
/// the planner's edge resolution.
struct ProblemDef {
    CSpaceBounds bounds;
    Configuration q_init;
    Configuration q_goal;
    std::function<bool(const Configuration&)> valid;
    std::function<bool(const Configuration&, const Configuration&)> motion;
};

struct PlannerParams {
    double step = 0.5;
    double goal_bias = 0.5;
    double goal_threshold = 0.5;
    double edge_resolution = 0.025;
    double max_time = std::numeric_limits<double>::infinity();  // seconds
    long long max_samples = std::numeric_limits<long long>::max();

    /// step = 0.15 * mean axis extent, goal_threshold = step,
    /// edge_resolution = step / 20.
    static PlannerParams defaults_for(const CSpaceBounds& bounds);
};

enum class PlanStatus { solved, timeout, budget_exhausted };

std::string to_string(PlanStatus status);

struct PlanResult {
    PlanStatus status = PlanStatus::budget_exhausted;
    std::vector<Configuration> path;  // q_init..q_goal when solved, else empty
    long long samples_used = 0;
    std::vector<long long> samples_per_stage;
    std::vector<std::size_t> tree_sizes;  // one entry per tree grown
    double wall_time = 0.0;               // seconds
    std::optional<int> stage_solved_in;   // 1-based; staged planners only

    bool solved() const { return status == PlanStatus::solved; }
};

/// Index of the tree node closest to q; ties resolve to the lowest
/// index. Deliberately a plain linear scan so results are exact and
/// reproducible.
std::size_t nearest_vertex(const Tree& tree, const Configuration& q);

/// Discretized segment check: every interpolated configuration at
/// spacing <= resolution (endpoints included) must pass `problem.valid`.
bool validate_motion(const ProblemDef& problem, const Configuration& a,
                     const Configuration& b, double resolution);

using SampleFn = std::function<Configuration(RngStream&)>;
using CostFn = std::function<double(const Configuration&)>;

/// Uniform sampler over the problem bounds.
SampleFn uniform_sampler(const CSpaceBounds& bounds);

/// Transition-test tuning for the T-RRT variants. A non-finite
/// init_temp means "estimate from sampled costs at planner start".
struct TransitionParams {
    double cost_scale = 1.0;  // the K in exp(-dc / (K T))
    double init_temp = std::numeric_limits<double>::quiet_NaN();
    double heat_factor = 2.0;       // temperature multiplier on rejection
    double cool_base = 2.0;         // T /= cool_base^(1/n_fail_max) on uphill acceptance
    int n_fail_max = 10;
};

/// Goal-biased unidirectional RRT.
PlanResult plan_rrt(const ProblemDef& problem, const PlannerParams& params,
                    const SampleFn& sampler, RngStream& rng);

/// Two trees grown from q_init and q_goal; Extend on one then greedy
/// Connect on the other, alternating.
PlanResult plan_rrt_connect(const ProblemDef& problem, const PlannerParams& params,
                            const SampleFn& sampler, RngStream& rng);

/// Bidirectional T-RRT: RRT-Connect plumbing with a Metropolis
/// transition test per extension against `cost`.
PlanResult plan_bitrrt(const ProblemDef& problem, const PlannerParams& params,
                       const CostFn& cost, const TransitionParams& transition,
                       const SampleFn& sampler, RngStream& rng);

enum class BaseKind { rrt, rrt_connect, bitrrt };
enum class StageSource { prioritized, affine, full_c };

struct StagedOptions {
    BaseKind base = BaseKind::rrt;
    StageSource source = StageSource::prioritized;
    /// Fixed release order (0-based DoF indices); when absent a random
    /// permutation is drawn from the planning RNG at start, one per run.
    std::optional<std::vector<std::size_t>> release_order;
    CostFn cost;                    // bitrrt only; default zero cost
    TransitionParams transition{};  // bitrrt only
};

/// The staged wrapper: runs the base planner's loop on one growing tree
/// (pair), one subsearch per schedule stage, expanding the sampled
/// subspace by one dimension between stages. The final stage samples
/// the whole box.
PlanResult plan_staged(const ProblemDef& problem, const StagedOptions& options,
                       const SampleSchedule& schedule, const PlannerParams& params,
                       RngStream& rng);

}  // namespace rrtplus
