#include "rbql/qlearn.hpp"

#include <cmath>
#include <stdexcept>

namespace rbql {

double epsilon_at(int episode, const Hyperparams& hp) {
    if (episode < 0) throw std::invalid_argument("epsilon_at: negative episode index");
    if (hp.min_epsilon > hp.max_epsilon) {
        throw std::invalid_argument("epsilon_at: min_epsilon exceeds max_epsilon");
    }
    return hp.min_epsilon +
           (hp.max_epsilon - hp.min_epsilon) * std::exp(-std::abs(hp.decay_rate) * episode);
}

void q_update(QTable& q, GridPos s, Action a, double reward, GridPos next,
              const Hyperparams& hp) {
    const double current = q.value(s, a);
    const double target = reward + hp.gamma * q.max_value(next);
    q.set(s, a, current + hp.alpha * (target - current));
}

Action select_action(const QTable& q, GridPos s, double epsilon, Rng& rng) {
    if (rng.next_double() < epsilon) {
        return action_from_ordinal(static_cast<int>(rng.next_below(4)));
    }
    const auto best = q.argmax_actions(s);
    if (best.empty()) {
        // Nothing evaluated at this state; fall back to uniform random.
        return action_from_ordinal(static_cast<int>(rng.next_below(4)));
    }
    if (best.size() == 1) return best[0];
    return best[rng.next_below(static_cast<std::uint32_t>(best.size()))];
}

int default_step_cap(const Maze& maze) { return 10 * maze.width() * maze.height() * 4; }

QTrainResult train_q(MazeEnv& env, int episodes, const Hyperparams& hp, std::uint64_t seed,
                     std::optional<int> step_cap) {
    if (episodes < 1) throw std::invalid_argument("train_q: episodes must be >= 1");
    const Maze& maze = env.maze();
    const int cap = step_cap.value_or(default_step_cap(maze));

    QTrainResult result;
    result.q = QTable(hp.q_init);
    result.q.pin_zero(maze.goal());
    Rng rng = Rng(seed).derive("qlearn/policy");

    for (int ep = 0; ep < episodes; ++ep) {
        const double epsilon = epsilon_at(ep, hp);
        GridPos s = maze.start();
        int steps = 0;
        bool reached = false;
        while (steps < cap) {
            const Action a = select_action(result.q, s, epsilon, rng);
            const StepOutcome out = env.step(s, a);
            ++steps;
            q_update(result.q, s, a, out.reward, out.next_state, hp);
            s = out.next_state;
            if (out.terminal) {
                reached = true;
                break;
            }
        }
        result.episodes.push_back({ep, steps, reached});
    }
    return result;
}

QTrainResult train_q(const Maze& maze, int episodes, const Hyperparams& hp, std::uint64_t seed,
                     std::optional<int> step_cap) {
    MazeEnv env(maze);
    return train_q(env, episodes, hp, seed, step_cap);
}

std::optional<int> greedy_rollout_steps(const Maze& maze, const QTable& q, GridPos from,
                                        int step_cap) {
    GridPos s = from;
    for (int steps = 1; steps <= step_cap; ++steps) {
        const auto best = q.argmax_actions(s);
        if (best.empty()) return std::nullopt;
        const StepOutcome out = step(maze, s, best[0]);
        if (out.terminal) return steps;
        if (out.wall_hit || out.next_state == s) return std::nullopt;
        s = out.next_state;
    }
    return std::nullopt;
}

} // namespace rbql
