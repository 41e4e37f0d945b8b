#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rbql/maze.hpp"
#include "rbql/qtable.hpp"
#include "rbql/rng.hpp"

namespace rbql {

/// Shared agent hyperparameters. decay_rate is used by magnitude, so the
/// schedule always decays from max_epsilon towards min_epsilon.
struct Hyperparams {
    double gamma = 0.9;
    double alpha = 0.1;
    double min_epsilon = 0.01;
    double max_epsilon = 1.0;
    double decay_rate = 0.01;
    double q_init = -1.0;
};

struct EpisodeResult {
    int episode = 0;
    int steps = 0;
    bool reached_goal = false;
};

/// min_eps + (max_eps - min_eps) * exp(-|decay_rate| * episode).
/// Monotone nonincreasing in the episode index.
double epsilon_at(int episode, const Hyperparams& hp);

/// One-step temporal-difference backup:
/// Q(s,a) += alpha * (r + gamma * max_a' Q(s',a') - Q(s,a)).
/// Pinned terminal rows contribute max 0 and are never written.
void q_update(QTable& q, GridPos s, Action a, double reward, GridPos next,
              const Hyperparams& hp);

/// Epsilon-greedy: uniform random action with probability epsilon,
/// otherwise argmax with uniform tie-breaking.
Action select_action(const QTable& q, GridPos s, double epsilon, Rng& rng);

/// Steps at which an episode is cut off when the agent fails to finish.
int default_step_cap(const Maze& maze);

struct QTrainResult {
    QTable q{0.0};
    std::vector<EpisodeResult> episodes;
};

/// Tabular Q-learning: epsilon-greedy action selection with the epsilon
/// schedule evaluated at each episode start, one backup per step, restart
/// at the start tile after reaching the goal. Episodes that hit the step
/// cap report the cap and reached_goal = false.
QTrainResult train_q(MazeEnv& env, int episodes, const Hyperparams& hp, std::uint64_t seed,
                     std::optional<int> step_cap = {});
QTrainResult train_q(const Maze& maze, int episodes, const Hyperparams& hp, std::uint64_t seed,
                     std::optional<int> step_cap = {});

/// Greedy walk from `from` using q; returns the number of steps to the
/// goal, or nullopt if the cap is hit first.
std::optional<int> greedy_rollout_steps(const Maze& maze, const QTable& q, GridPos from,
                                        int step_cap);

} // namespace rbql
