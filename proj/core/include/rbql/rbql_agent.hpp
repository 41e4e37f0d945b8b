#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rbql/maze.hpp"
#include "rbql/qlearn.hpp"
#include "rbql/qtable.hpp"
#include "rbql/rng.hpp"
#include "rbql/world_model.hpp"

namespace rbql {

enum class EpisodeKind { Exploitation, Exploration };

/// Probes every still-unexplored direction of `s` with one step() call
/// each (up to max_probes), recording only wall hits. Every probe counts
/// against the step budget regardless of outcome. Returns the number of
/// probes made.
int look_ahead(MazeEnv& env, WorldModel& model, GridPos s, int max_probes = 4);

/// Uniform random frontier pair, or nullopt when exploration is complete
/// (every known state fully explored).
std::optional<std::pair<GridPos, Action>> select_frontier(const WorldModel& model, Rng& rng);

/// Minimum-hop action sequence from `from` to `to` through the explored
/// directed graph (wall self-loops excluded), A* with the Manhattan
/// heuristic; equal-f nodes pop in insertion order so paths are
/// deterministic. nullopt when `to` is unreachable.
std::optional<std::vector<Action>> astar_path(const WorldModel& model, GridPos from, GridPos to);

/// Backward value propagation: every recorded terminal is pinned to 0,
/// then states are processed in breadth-first order over the reversed
/// explored graph, assigning to each explored slot
///   Q(s,a) = reward[s][a] + gamma * max over explored slots of Q(successor).
/// After the pass, the same assignment is swept to a fixed point so the
/// whole table is self-consistent; the greedy policy is already final
/// after the single pass. Unexplored slots stay at -infinity. Throws
/// std::logic_error when no terminal is known yet.
QTable propagate_values(const WorldModel& model, double gamma);

/// The breadth-first pass alone, without the fixed-point sweeps.
QTable propagate_values_single_pass(const WorldModel& model, double gamma);

struct StochasticOutcome {
    std::array<double, 4> successor_q;
    double reward = 0.0;
    double probability = 1.0;
};

/// Generalized backup over a distribution of outcomes:
///   sum_s (R_s + gamma * max_a Q(s,a)) * p_s.
/// With a single outcome at p = 1 this equals the deterministic backup
/// bit for bit. Probabilities must be nonnegative and sum to 1 (+-1e-9).
double rbql_update_stochastic(std::span<const StochasticOutcome> outcomes, double gamma);

struct RbqlOptions {
    std::optional<int> step_cap;
    /// Stop after the episode in which the frontier empties.
    bool stop_when_fully_explored = false;
};

struct RbqlResult {
    QTable q;
    WorldModel model;
    std::vector<EpisodeResult> episodes;
    std::vector<EpisodeKind> kinds;

    RbqlResult() : q(0.0) {}
};

/// The model-building agent. Within an episode the move priority is:
/// take an unexplored (never-wall) action if the current state has one,
/// else follow the greedy action when the state has evaluated values,
/// else backtrack along the trail. Episodes end at the goal (or the step
/// cap); then the whole model is re-evaluated by propagate_values and the
/// next episode is an exploration episode with probability epsilon. An
/// exploration episode first navigates (A*) to a random frontier pair,
/// takes it, and explores on until a known path leads it home. Look-ahead
/// probes fire on every arrival; every step() call counts.
RbqlResult train_rbql(MazeEnv& env, int episodes, const Hyperparams& hp, std::uint64_t seed,
                      const RbqlOptions& options = {});
RbqlResult train_rbql(const Maze& maze, int episodes, const Hyperparams& hp, std::uint64_t seed,
                      const RbqlOptions& options = {});

} // namespace rbql
