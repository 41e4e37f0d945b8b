#include "rbql/rbql_agent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace rbql {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Max over the explored slots of a successor row; kNegInf when nothing
/// there has been evaluated yet.
double successor_max(const QTable& q, GridPos s) { return q.max_value(s); }

void apply_backup_sweep_slot(QTable& q, GridPos s, Action a, const WorldModel::Slot& slot,
                             double gamma, double& max_change) {
    const double succ_max = successor_max(q, slot.successor);
    const double old_v = q.value(s, a);
    const double new_v = succ_max == kNegInf ? kNegInf : slot.reward + gamma * succ_max;
    if (new_v != old_v) {
        const double change = std::abs(new_v - old_v);
        if (change > max_change) max_change = change;
        q.set(s, a, new_v);
    }
}

QTable propagate_pass(const WorldModel& model, double gamma) {
    if (model.terminals().empty()) {
        throw std::logic_error("propagate_values: no terminal state recorded yet");
    }

    QTable q(kNegInf);
    for (const GridPos t : model.terminals()) q.pin_zero(t);

    // Reversed explored graph, lists in state-discovery order.
    std::unordered_map<GridPos, std::vector<GridPos>> predecessors;
    for (const GridPos s : model.states()) {
        const WorldModel::Row& row = *model.row(s);
        for (const Action a : kAllActions) {
            const auto& slot = row[ordinal(a)];
            if (slot.has_value() && slot->successor != s) {
                predecessors[slot->successor].push_back(s);
            }
        }
    }

    std::queue<GridPos> queue;
    std::unordered_set<GridPos> enqueued;
    for (const GridPos t : model.terminals()) {
        queue.push(t);
        enqueued.insert(t);
    }

    while (!queue.empty()) {
        const GridPos s = queue.front();
        queue.pop();

        if (!q.pinned(s)) {
            const WorldModel::Row* row = model.row(s);
            if (row != nullptr) {
                // Ordinary slots first, then wall self-loops, which read
                // this row's own fresh maximum.
                for (const Action a : kAllActions) {
                    const auto& slot = (*row)[ordinal(a)];
                    if (!slot.has_value() || slot->successor == s) continue;
                    const double succ_max = successor_max(q, slot->successor);
                    if (succ_max != kNegInf) q.set(s, a, slot->reward + gamma * succ_max);
                }
                for (const Action a : kAllActions) {
                    const auto& slot = (*row)[ordinal(a)];
                    if (!slot.has_value() || slot->successor != s) continue;
                    const double self_max = q.max_value(s);
                    if (self_max != kNegInf) q.set(s, a, slot->reward + gamma * self_max);
                }
            }
        }

        const auto it = predecessors.find(s);
        if (it == predecessors.end()) continue;
        for (const GridPos p : it->second) {
            if (enqueued.insert(p).second) queue.push(p);
        }
    }

    return q;
}

} // namespace

int look_ahead(MazeEnv& env, WorldModel& model, GridPos s, int max_probes) {
    model.discover(s);
    int probes = 0;
    for (const Action a : kAllActions) {
        if (probes >= max_probes) break;
        if (model.slot_explored(s, a)) continue;
        const StepOutcome out = env.step(s, a);
        ++probes;
        if (out.wall_hit) model.record_transition(s, a, out);
    }
    return probes;
}

std::optional<std::pair<GridPos, Action>> select_frontier(const WorldModel& model, Rng& rng) {
    const auto pairs = model.frontier();
    if (pairs.empty()) return std::nullopt;
    return pairs[rng.next_below(static_cast<std::uint32_t>(pairs.size()))];
}

std::optional<std::vector<Action>> astar_path(const WorldModel& model, GridPos from, GridPos to) {
    if (from == to) return std::vector<Action>{};

    struct OpenEntry {
        int f;
        std::uint64_t order;
        GridPos state;
    };
    const auto worse = [](const OpenEntry& a, const OpenEntry& b) {
        return a.f != b.f ? a.f > b.f : a.order > b.order;
    };
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, decltype(worse)> open(worse);

    std::unordered_map<GridPos, int> g_cost;
    std::unordered_map<GridPos, std::pair<GridPos, Action>> came_from;
    std::uint64_t counter = 0;

    g_cost[from] = 0;
    open.push({manhattan(from, to), counter++, from});

    while (!open.empty()) {
        const OpenEntry top = open.top();
        open.pop();
        const GridPos s = top.state;
        if (s == to) {
            std::vector<Action> actions;
            GridPos walk = to;
            while (walk != from) {
                const auto& [prev, act] = came_from.at(walk);
                actions.push_back(act);
                walk = prev;
            }
            std::reverse(actions.begin(), actions.end());
            return actions;
        }
        const int g = g_cost.at(s);
        if (top.f > g + manhattan(s, to)) continue; // stale entry

        const WorldModel::Row* row = model.row(s);
        if (row == nullptr) continue;
        for (const Action a : kAllActions) {
            const auto& slot = (*row)[ordinal(a)];
            if (!slot.has_value() || slot->successor == s) continue;
            const GridPos next = slot->successor;
            const int tentative = g + 1;
            const auto it = g_cost.find(next);
            if (it != g_cost.end() && it->second <= tentative) continue;
            g_cost[next] = tentative;
            came_from[next] = {s, a};
            open.push({tentative + manhattan(next, to), counter++, next});
        }
    }
    return std::nullopt;
}

QTable propagate_values_single_pass(const WorldModel& model, double gamma) {
    return propagate_pass(model, gamma);
}

QTable propagate_values(const WorldModel& model, double gamma) {
    QTable q = propagate_pass(model, gamma);

    // Sweep the backup to a fixed point. The breadth-first pass already
    // finalizes every goal-directed slot, so this settles the remaining
    // (away-pointing and self-loop) slots in a couple of iterations.
    constexpr double kTolerance = 1e-13;
    constexpr int kMaxSweeps = 100000;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double max_change = 0.0;
        for (const GridPos s : model.states()) {
            if (q.pinned(s)) continue;
            const WorldModel::Row& row = *model.row(s);
            for (const Action a : kAllActions) {
                const auto& slot = row[ordinal(a)];
                if (!slot.has_value()) continue;
                apply_backup_sweep_slot(q, s, a, *slot, gamma, max_change);
            }
        }
        if (max_change <= kTolerance) break;
    }
    return q;
}

double rbql_update_stochastic(std::span<const StochasticOutcome> outcomes, double gamma) {
    double probability_sum = 0.0;
    for (const StochasticOutcome& o : outcomes) {
        if (o.probability < 0.0) {
            throw std::invalid_argument("rbql_update_stochastic: negative probability");
        }
        probability_sum += o.probability;
    }
    if (std::abs(probability_sum - 1.0) > 1e-9) {
        throw std::invalid_argument("rbql_update_stochastic: probabilities must sum to 1");
    }

    double value = 0.0;
    for (const StochasticOutcome& o : outcomes) {
        const double best = *std::max_element(o.successor_q.begin(), o.successor_q.end());
        value += (o.reward + gamma * best) * o.probability;
    }
    return value;
}

RbqlResult train_rbql(MazeEnv& env, int episodes, const Hyperparams& hp, std::uint64_t seed,
                      const RbqlOptions& options) {
    if (episodes < 1) throw std::invalid_argument("train_rbql: episodes must be >= 1");
    const Maze& maze = env.maze();
    const int cap = options.step_cap.value_or(default_step_cap(maze));
    if (cap < 1) throw std::invalid_argument("train_rbql: step cap must be >= 1");

    Rng rng = Rng(seed).derive("rbql/policy");

    RbqlResult result;
    result.q = QTable(kNegInf);
    WorldModel& model = result.model;
    bool exploration_episode = false;

    for (int ep = 0; ep < episodes; ++ep) {
        model.clear_trail();
        const long long episode_base = env.steps_taken();
        const auto steps_used = [&] { return static_cast<int>(env.steps_taken() - episode_base); };
        const auto budget_left = [&] { return cap - steps_used(); };

        GridPos s = maze.start();
        bool reached = false;

        const auto arrive = [&](GridPos pos) {
            model.discover(pos);
            const int remaining = budget_left();
            if (remaining > 0) look_ahead(env, model, pos, std::min(4, remaining));
        };

        arrive(s);

        if (exploration_episode) {
            // Navigate to a random frontier pair and take it; unreachable
            // picks (which the walk structure should never produce) fall
            // back to another pair.
            auto pick = select_frontier(model, rng);
            std::optional<std::vector<Action>> transit;
            if (pick) transit = astar_path(model, s, pick->first);
            if (pick && !transit) {
                auto pairs = model.frontier();
                std::erase(pairs, *pick);
                while (!pairs.empty() && !transit) {
                    const auto idx = rng.next_below(static_cast<std::uint32_t>(pairs.size()));
                    pick = pairs[idx];
                    transit = astar_path(model, s, pick->first);
                    pairs.erase(pairs.begin() + idx);
                }
            }
            if (pick && transit) {
                for (const Action a : *transit) {
                    if (budget_left() <= 0) break;
                    const StepOutcome out = env.step(s, a);
                    s = out.next_state;
                    if (out.terminal) {
                        reached = true;
                        break;
                    }
                    arrive(s);
                }
                if (!reached && s == pick->first && budget_left() > 0 &&
                    !model.slot_explored(s, pick->second)) {
                    const Action a = pick->second;
                    const StepOutcome out = env.step(s, a);
                    model.record_transition(s, a, out);
                    if (!out.wall_hit) {
                        model.push_trail(a);
                        s = out.next_state;
                        if (out.terminal) {
                            reached = true;
                        } else {
                            arrive(s);
                        }
                    }
                }
            }
        }

        while (!reached && budget_left() > 0) {
            const auto unexplored = model.unexplored_actions(s);
            if (!unexplored.empty()) {
                const Action a =
                    unexplored[rng.next_below(static_cast<std::uint32_t>(unexplored.size()))];
                const StepOutcome out = env.step(s, a);
                model.record_transition(s, a, out);
                if (out.wall_hit) continue; // cannot happen after look-ahead
                model.push_trail(a);
                s = out.next_state;
                if (out.terminal) {
                    reached = true;
                    break;
                }
                arrive(s);
            } else if (result.q.has_evaluated_values(s)) {
                const auto best = result.q.argmax_actions(s);
                const Action a =
                    best.size() == 1
                        ? best[0]
                        : best[rng.next_below(static_cast<std::uint32_t>(best.size()))];
                const StepOutcome out = env.step(s, a);
                s = out.next_state;
                if (out.terminal) {
                    reached = true;
                    break;
                }
                arrive(s);
            } else if (!model.trail_empty()) {
                const Action a = model.pop_backtrack();
                const StepOutcome out = env.step(s, a);
                s = out.next_state;
                arrive(s);
            } else {
                // Stranded without values or trail; only reachable when a
                // tiny step cap truncated discovery. Wander the explored
                // graph until something opens up or the cap ends the
                // episode.
                std::vector<Action> explored;
                for (const Action a : kAllActions) {
                    const auto* slot = model.slot(s, a);
                    if (slot != nullptr && slot->successor != s) explored.push_back(a);
                }
                if (explored.empty()) break;
                const Action a =
                    explored[rng.next_below(static_cast<std::uint32_t>(explored.size()))];
                const StepOutcome out = env.step(s, a);
                s = out.next_state;
                if (out.terminal) {
                    reached = true;
                    break;
                }
                arrive(s);
            }
        }

        result.episodes.push_back({ep, steps_used(), reached});
        result.kinds.push_back(exploration_episode ? EpisodeKind::Exploration
                                                   : EpisodeKind::Exploitation);

        if (!model.terminals().empty()) {
            result.q = propagate_values(model, hp.gamma);
        }

        if (options.stop_when_fully_explored && model.frontier_empty()) break;

        // Next episode kind, per the epsilon schedule of the upcoming
        // index. Exploration needs both a frontier to visit and values to
        // come home on.
        const double epsilon = epsilon_at(ep + 1, hp);
        const bool explore_next = rng.next_double() <= epsilon;
        exploration_episode =
            explore_next && !model.frontier_empty() && !model.terminals().empty();
    }

    return result;
}

RbqlResult train_rbql(const Maze& maze, int episodes, const Hyperparams& hp, std::uint64_t seed,
                      const RbqlOptions& options) {
    MazeEnv env(maze);
    return train_rbql(env, episodes, hp, seed, options);
}

} // namespace rbql
