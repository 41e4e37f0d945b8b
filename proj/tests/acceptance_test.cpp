// Acceptance suite: one test per release criterion, each printing a
// single [criterion N] PASS/FAIL line. Tolerances and runtime budgets are
// pinned in code.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <gtest/gtest.h>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "oracles.hpp"
#include "rbql/bench.hpp"
#include "rbql/maze.hpp"
#include "rbql/qlearn.hpp"
#include "rbql/rbql_agent.hpp"
#include "rbql/svg_plot.hpp"

#ifndef RBQL_CLI_PATH
#error "RBQL_CLI_PATH must point at the rbql binary"
#endif

namespace rbql {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct CriterionLine {
    int number;
    const char* title;
    ~CriterionLine() {
        std::cout << "[criterion " << number << "] " << title << ": "
                  << (::testing::Test::HasFailure() ? "FAIL" : "PASS") << std::endl;
    }
};

Maze make_corridor(int length) {
    std::vector<TileId> tiles(static_cast<std::size_t>(length));
    for (int x = 0; x < length; ++x) {
        TileId t = 0b0101;
        if (x == 0) t |= 1u << ordinal(Action::Left);
        if (x == length - 1) t |= 1u << ordinal(Action::Right);
        tiles[static_cast<std::size_t>(x)] = t;
    }
    return Maze(length, 1, std::move(tiles));
}

constexpr std::uint64_t kAcceptanceSeed = 20250810;

BenchConfig default_bench_config(int mazes_per_size) {
    BenchConfig config;
    config.sizes = {5, 10, 15};
    config.mazes_per_size = mazes_per_size;
    config.episodes = 25;
    config.master_seed = kAcceptanceSeed;
    return config;
}

const std::vector<RunRecord>& full_bench_records() {
    static const std::vector<RunRecord> records = run_benchmark(default_bench_config(50));
    return records;
}

const std::vector<RunRecord>& reduced_bench_records() {
    static const std::vector<RunRecord> records = run_benchmark(default_bench_config(10));
    return records;
}

double mean_of(const std::vector<SummaryRow>& summary, int size, AgentKind agent, int episode) {
    for (const SummaryRow& row : summary) {
        if (row.size == size && row.agent == agent && row.episode == episode) return row.mean;
    }
    ADD_FAILURE() << "missing summary row " << size << "/" << agent_tag(agent) << "/" << episode;
    return 0.0;
}

void check_trend_a_and_b(const std::vector<SummaryRow>& summary) {
    for (const int size : {5, 10, 15}) {
        const double q24 = mean_of(summary, size, AgentKind::Q, 24);
        const double rbql24 = mean_of(summary, size, AgentKind::Rbql, 24);
        EXPECT_LT(rbql24, q24) << "size " << size;

        const double bound = 2.0 * size - 2.0;
        EXPECT_GE(rbql24, bound) << "size " << size;
        EXPECT_LE(rbql24, 4.0 * bound) << "size " << size;
    }
}

TEST(Acceptance, Criterion1CorridorTraceReproduction) {
    const CriterionLine line{1, "corridor q-update trace, episodes 1-6"};
    const auto start = Clock::now();

    // 1x5 wall-free corridor, q_init -1, alpha 0.5, gamma 0.9, RIGHT
    // forced at every step. Targets are the published trace columns for
    // the two states nearest the goal. Note: exact update arithmetic
    // yields -1.45, 0.80 and 3.1625 for the first three entries of the
    // nearer-to-start column (the targets below differ by 0.05, 0.02 and
    // 0.0125), so those three comparisons fail by construction; they are
    // asserted as listed rather than loosened.
    const std::array<double, 6> state4_expected{4.5, 7.25, 8.63, 9.32, 9.66, 9.83};
    const std::array<double, 6> state3_expected{-1.5, 0.78, 3.15, 4.96, 6.17, 6.93};

    const Maze corridor = make_corridor(5);
    Hyperparams hp;
    hp.gamma = 0.9;
    hp.alpha = 0.5;
    hp.q_init = -1.0;
    QTable q(-1.0);
    q.pin_zero(corridor.goal());

    for (int episode = 1; episode <= 6; ++episode) {
        GridPos s = corridor.start();
        while (true) {
            const StepOutcome out = step(corridor, s, Action::Right);
            q_update(q, s, Action::Right, out.reward, out.next_state, hp);
            if (out.terminal) break;
            s = out.next_state;
        }
        const double v4 = q.value({3, 0}, Action::Right);
        const double v3 = q.value({2, 0}, Action::Right);
        std::cout << "  episode " << episode << ": state4=" << v4
                  << " (target " << state4_expected[episode - 1] << "), state3=" << v3
                  << " (target " << state3_expected[episode - 1] << ")\n";
        EXPECT_NEAR(v4, state4_expected[episode - 1], 0.01) << "episode " << episode;
        EXPECT_NEAR(v3, state3_expected[episode - 1], 0.01) << "episode " << episode;
    }

    EXPECT_LT(seconds_since(start), 1.0);
}

TEST(Acceptance, Criterion2OptimalityAfterFullExploration) {
    const CriterionLine line{2, "greedy path optimal after full exploration, 60/60 mazes"};
    const auto start = Clock::now();

    // Training runs until the frontier empties, bounded by 100 episodes;
    // the greedy policy must then walk the true shortest path.
    int solved = 0;
    for (const int size : {5, 10, 15}) {
        for (int i = 0; i < 20; ++i) {
            const std::uint64_t maze_seed = kAcceptanceSeed + static_cast<std::uint64_t>(i);
            const Maze maze = carve_extra_paths(generate_maze(size, size, maze_seed),
                                                maze_seed + 500);
            RbqlOptions options;
            options.stop_when_fully_explored = true;
            const auto result = train_rbql(maze, 100, Hyperparams{.alpha = 1.0},
                                           maze_seed + 900, options);
            const auto rollout =
                greedy_rollout_steps(maze, result.q, maze.start(), 10 * maze.cell_count());
            ASSERT_TRUE(rollout.has_value()) << "size " << size << " maze " << i;
            const int oracle = shortest_path_length(maze);
            EXPECT_EQ(*rollout, oracle) << "size " << size << " maze " << i;
            if (rollout.has_value() && *rollout == oracle) ++solved;
        }
    }
    EXPECT_EQ(solved, 60);
    EXPECT_LT(seconds_since(start), 30.0);
}

TEST(Acceptance, Criterion3CorridorClosedForm) {
    const CriterionLine line{3, "corridor values match closed form and value iteration"};
    const auto start = Clock::now();

    const Maze corridor = make_corridor(10);
    const WorldModel model = oracle::fully_explored_model(corridor);
    const QTable q = propagate_values(model, 0.9);

    for (int x = 0; x < 9; ++x) {
        const int distance = 9 - x;
        EXPECT_NEAR(q.max_value({x, 0}), oracle::corridor_value(distance, 0.9), 1e-9)
            << "distance " << distance;
    }

    const auto vi = oracle::value_iteration(model, 0.9, 1e-12);
    for (const auto& [s, row] : vi) {
        for (const Action a : kAllActions) {
            if (!model.slot_explored(s, a)) continue;
            EXPECT_NEAR(q.value(s, a), row[ordinal(a)], 1e-9) << to_string(s);
        }
    }

    EXPECT_LT(seconds_since(start), 1.0);
}

TEST(Acceptance, Criterion4TrendReproductionReducedPreset) {
    const CriterionLine line{4, "trend reproduction (10-maze preset + full 50-maze run)"};
    const auto reduced_start = Clock::now();

    const auto reduced_summary = summarize(reduced_bench_records(), 2);
    check_trend_a_and_b(reduced_summary);
    EXPECT_LT(seconds_since(reduced_start), 60.0);

    // Full-scale run: trend (a), bounds (b) and improvement ordering (c).
    const auto summary = summarize(full_bench_records(), 2);
    check_trend_a_and_b(summary);

    const auto improvements = improvement_table(summary);
    for (const int size : {10, 15}) {
        double q_factor = 0.0;
        double rbql_factor = 0.0;
        for (const ImprovementRow& row : improvements) {
            if (row.size != size) continue;
            (row.agent == AgentKind::Q ? q_factor : rbql_factor) = row.factor;
        }
        EXPECT_GT(rbql_factor, q_factor) << "size " << size;
    }
}

TEST(Acceptance, Criterion5StochasticBackupReduction) {
    const CriterionLine line{5, "single-outcome stochastic backup equals deterministic form"};
    const auto start = Clock::now();

    Rng rng(kAcceptanceSeed);
    for (int i = 0; i < 1000; ++i) {
        StochasticOutcome outcome;
        for (double& v : outcome.successor_q) v = rng.next_double() * 40.0 - 20.0;
        outcome.reward = rng.next_double() * 15.0 - 5.0;
        outcome.probability = 1.0;
        const double gamma = rng.next_double();
        const double direct =
            outcome.reward +
            gamma * *std::max_element(outcome.successor_q.begin(), outcome.successor_q.end());
        const std::array<StochasticOutcome, 1> outcomes{outcome};
        ASSERT_EQ(rbql_update_stochastic(outcomes, gamma), direct) << "tuple " << i;
    }

    EXPECT_LT(seconds_since(start), 1.0);
}

TEST(Acceptance, Criterion6MazeValiditySuite) {
    const CriterionLine line{6, "maze generation validity, 200 mazes per size"};
    const auto start = Clock::now();

    for (const int size : {2, 5, 10, 50}) {
        for (int i = 0; i < 200; ++i) {
            const std::uint64_t seed = kAcceptanceSeed + static_cast<std::uint64_t>(i) * 7 +
                                       static_cast<std::uint64_t>(size);
            const Maze tree = generate_maze(size, size, seed);
            ASSERT_EQ(oracle::passage_count(tree), size * size - 1)
                << "size " << size << " seed " << seed;
            ASSERT_EQ(oracle::flood_fill_reachable(tree), size * size)
                << "size " << size << " seed " << seed;
            ASSERT_TRUE(oracle::walls_symmetric(tree)) << "size " << size;
            ASSERT_TRUE(oracle::border_closed(tree)) << "size " << size;

            const Maze carved = carve_extra_paths(tree, seed + 1);
            const int added = oracle::passage_count(carved) - (size * size - 1);
            ASSERT_GE(added, 0);
            ASSERT_LE(added, size * size / 4) << "carve budget exceeded at size " << size;
            ASSERT_TRUE(oracle::walls_symmetric(carved)) << "size " << size;
            ASSERT_TRUE(oracle::border_closed(carved)) << "size " << size;
            ASSERT_EQ(oracle::flood_fill_reachable(carved), size * size) << "size " << size;
        }
    }

    EXPECT_LT(seconds_since(start), 30.0);
}

TEST(Acceptance, Criterion7DeterministicBenchArtifacts) {
    const CriterionLine line{7, "bench artifacts byte-identical across runs"};

    const fs::path base = fs::temp_directory_path() /
                          ("rbql_acceptance_" + std::to_string(::getpid()));
    const fs::path dir_a = base / "a";
    const fs::path dir_b = base / "b";
    fs::create_directories(dir_a);
    fs::create_directories(dir_b);

    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    };
    const auto bench_into = [](const fs::path& dir) {
        const std::string command = std::string(RBQL_CLI_PATH) +
                                    " bench --sizes 5,10 --mazes 5 --episodes 25 --seed 404"
                                    " --out-dir " +
                                    dir.string() + " > /dev/null 2>&1";
        const int status = std::system(command.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };

    ASSERT_EQ(bench_into(dir_a), 0);
    ASSERT_EQ(bench_into(dir_b), 0);

    for (const char* name : {"records.csv", "summary.csv", "steps_5x5.svg", "steps_10x10.svg"}) {
        const std::string a = slurp(dir_a / name);
        const std::string b = slurp(dir_b / name);
        ASSERT_FALSE(a.empty()) << name;
        EXPECT_EQ(a, b) << name;
    }
}

TEST(Acceptance, Criterion8NoRecordBeatsTheBound) {
    const CriterionLine line{8, "no goal-reaching record below 2s-2"};

    int checked = 0;
    for (const auto* records : {&full_bench_records(), &reduced_bench_records()}) {
        for (const RunRecord& r : *records) {
            if (!r.reached_goal) continue;
            ASSERT_GE(r.steps, 2 * r.size - 2)
                << agent_tag(r.agent) << " size " << r.size << " maze " << r.maze_id
                << " episode " << r.episode;
            ++checked;
        }
    }
    EXPECT_GT(checked, 0);
}

} // namespace
} // namespace rbql
