#include <benchmark/benchmark.h>

#include "rbql/maze.hpp"
#include "rbql/qlearn.hpp"
#include "rbql/rbql_agent.hpp"

namespace {

rbql::Maze benched_maze(int size) {
    return rbql::carve_extra_paths(rbql::generate_maze(size, size, 42), 43);
}

void BM_GenerateMaze(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbql::generate_maze(size, size, seed++));
    }
    state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_GenerateMaze)->Arg(5)->Arg(10)->Arg(15)->Arg(50)->Complexity();

void BM_CarveExtraPaths(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    const rbql::Maze tree = rbql::generate_maze(size, size, 7);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbql::carve_extra_paths(tree, seed++));
    }
}
BENCHMARK(BM_CarveExtraPaths)->Arg(10)->Arg(50);

void BM_ShortestPath(benchmark::State& state) {
    const rbql::Maze maze = benched_maze(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbql::shortest_path_length(maze));
    }
}
BENCHMARK(BM_ShortestPath)->Arg(10)->Arg(50);

void BM_PropagateValues(benchmark::State& state) {
    const rbql::Maze maze = benched_maze(static_cast<int>(state.range(0)));
    rbql::WorldModel model;
    for (int y = 0; y < maze.height(); ++y) {
        for (int x = 0; x < maze.width(); ++x) {
            const rbql::GridPos s{x, y};
            if (s == maze.goal()) continue;
            for (const rbql::Action a : rbql::kAllActions) {
                model.record_transition(s, a, rbql::step(maze, s, a));
            }
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbql::propagate_values(model, 0.9));
    }
    state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_PropagateValues)->Arg(5)->Arg(10)->Arg(15)->Arg(50)->Complexity();

void BM_TrainRbql(benchmark::State& state) {
    const rbql::Maze maze = benched_maze(static_cast<int>(state.range(0)));
    rbql::Hyperparams hp;
    hp.alpha = 1.0;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbql::train_rbql(maze, 25, hp, seed++));
    }
}
BENCHMARK(BM_TrainRbql)->Arg(5)->Arg(10)->Arg(15);

void BM_TrainQ(benchmark::State& state) {
    const rbql::Maze maze = benched_maze(static_cast<int>(state.range(0)));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbql::train_q(maze, 25, rbql::Hyperparams{}, seed++));
    }
}
BENCHMARK(BM_TrainQ)->Arg(5)->Arg(10)->Arg(15);

} // namespace

BENCHMARK_MAIN();
