#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rbql/bench.hpp"
#include "rbql/maze.hpp"
#include "rbql/qlearn.hpp"
#include "rbql/rbql_agent.hpp"
#include "rbql/rng.hpp"
#include "rbql/svg_plot.hpp"

namespace {

namespace fs = std::filesystem;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    std::random_device device;
    return (static_cast<std::uint64_t>(device()) << 32) | device();
}

rbql::Maze load_maze(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open maze file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return rbql::decode_maze(text);
}

void write_file(const std::string& text, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

rbql::Maze build_maze(int width, int height, std::uint64_t seed) {
    const rbql::Rng rng(seed);
    const rbql::Maze tree = rbql::generate_maze(width, height, rng.derive_seed("maze/gen"));
    return rbql::carve_extra_paths(tree, rng.derive_seed("maze/carve"));
}

struct GenArgs {
    int width = 0;
    int height = 0;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int cmd_gen(const GenArgs& args) {
    const std::uint64_t seed = resolve_seed(args.seed);
    const rbql::Maze maze = build_maze(args.width, args.height, seed);
    write_file(rbql::encode_maze(maze), args.out);
    std::cout << "seed=" << seed << "\n";
    std::cout << "shortest_path_length=" << rbql::shortest_path_length(maze) << "\n";
    return 0;
}

struct RunArgs {
    std::string agent;
    std::string maze_path;
    int width = 0;
    int height = 0;
    int episodes = 25;
    rbql::Hyperparams hp;
    std::optional<int> step_cap;
    std::optional<std::uint64_t> seed;
    std::string csv_path;
};

int cmd_run(const RunArgs& args) {
    const std::uint64_t seed = resolve_seed(args.seed);
    const rbql::Rng rng(seed);

    const rbql::Maze maze = args.maze_path.empty()
                                ? build_maze(args.width, args.height, seed)
                                : load_maze(args.maze_path);

    std::vector<rbql::EpisodeResult> episodes;
    if (args.agent == "q") {
        episodes = rbql::train_q(maze, args.episodes, args.hp, rng.derive_seed("agent/q"),
                                 args.step_cap)
                       .episodes;
    } else {
        rbql::Hyperparams hp = args.hp;
        hp.alpha = 1.0;
        rbql::RbqlOptions options;
        options.step_cap = args.step_cap;
        episodes =
            rbql::train_rbql(maze, args.episodes, hp, rng.derive_seed("agent/rbql"), options)
                .episodes;
    }

    std::string report = "episode,steps,reached_goal\n";
    for (const rbql::EpisodeResult& er : episodes) {
        report += std::to_string(er.episode) + "," + std::to_string(er.steps) + "," +
                  (er.reached_goal ? "true" : "false") + "\n";
    }
    std::cout << "seed=" << seed << "\n" << report;
    if (!args.csv_path.empty()) write_file(report, args.csv_path);
    return 0;
}

struct BenchArgs {
    std::vector<int> sizes = {5, 10, 15};
    int mazes = 50;
    int episodes = 25;
    std::string agents = "both";
    double gamma = 0.9;
    double alpha_q = 0.1;
    int trim = 2;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
};

int cmd_bench(const BenchArgs& args) {
    rbql::BenchConfig config;
    config.sizes = args.sizes;
    config.mazes_per_size = args.mazes;
    config.episodes = args.episodes;
    config.master_seed = resolve_seed(args.seed);
    config.run_q = args.agents == "both" || args.agents == "q";
    config.run_rbql = args.agents == "both" || args.agents == "rbql";
    config.hp_q.gamma = args.gamma;
    config.hp_q.alpha = args.alpha_q;
    config.hp_rbql.gamma = args.gamma;

    std::cout << "seed=" << config.master_seed << "\n";

    const auto records = rbql::run_benchmark(config);
    const auto summary = rbql::summarize(records, args.trim);

    fs::create_directories(args.out_dir);
    const fs::path dir(args.out_dir);
    rbql::write_csv(records, dir / "records.csv");
    rbql::write_csv(summary, dir / "summary.csv");
    std::cout << "wrote " << (dir / "records.csv").string() << "\n";
    std::cout << "wrote " << (dir / "summary.csv").string() << "\n";
    for (const int size : args.sizes) {
        const fs::path svg =
            dir / ("steps_" + std::to_string(size) + "x" + std::to_string(size) + ".svg");
        rbql::render_plot(summary, size, svg);
        std::cout << "wrote " << svg.string() << "\n";
    }

    if (args.episodes >= 25) {
        if (config.run_q && config.run_rbql) {
            std::cout << "\ndifference (q steps / rbql steps)\n"
                      << rbql::format_difference_table(rbql::difference_table(summary));
        }
        std::cout << "\nimprovement (episode 0 steps / episode 24 steps)\n"
                  << rbql::format_improvement_table(rbql::improvement_table(summary));
    }
    return 0;
}

struct PlotArgs {
    std::string summary_path;
    int size = 0;
    std::string out;
};

int cmd_plot(const PlotArgs& args) {
    const auto summary = rbql::read_summary_csv(args.summary_path);
    rbql::render_plot(summary, args.size, args.out);
    std::cout << "wrote " << args.out << "\n";
    return 0;
}

void add_hp_flags(CLI::App* cmd, rbql::Hyperparams& hp) {
    cmd->add_option("--gamma", hp.gamma, "Discount factor")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--alpha", hp.alpha, "Learning rate (q agent only)")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--min-epsilon", hp.min_epsilon, "Exploration floor")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--max-epsilon", hp.max_epsilon, "Exploration ceiling")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--decay-rate", hp.decay_rate, "Epsilon decay rate (used by magnitude)");
    cmd->add_option("--q-init", hp.q_init, "Initial action value");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maze benchmark for model-based backwards value propagation vs. tabular "
                 "Q-learning"};
    app.require_subcommand(1);

    GenArgs gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a maze file");
    gen_cmd->add_option("--width", gen.width, "Maze width in tiles")
        ->required()
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--height", gen.height, "Maze height in tiles")
        ->required()
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", gen.seed, "Master seed (random if omitted, always printed)");
    gen_cmd->add_option("--out", gen.out, "Output maze file")->required();

    RunArgs run;
    CLI::App* run_cmd = app.add_subcommand("run", "Train one agent on one maze");
    run_cmd->add_option("--agent", run.agent, "Agent: q or rbql")
        ->required()
        ->check(CLI::IsMember({"q", "rbql"}));
    auto* maze_opt = run_cmd->add_option("--maze", run.maze_path, "Maze file to load");
    auto* width_opt = run_cmd->add_option("--width", run.width, "Generated maze width")
                          ->check(CLI::PositiveNumber)
                          ->excludes(maze_opt);
    run_cmd->add_option("--height", run.height, "Generated maze height")
        ->check(CLI::PositiveNumber)
        ->needs(width_opt)
        ->excludes(maze_opt);
    run_cmd->add_option("--episodes", run.episodes, "Episode count")->check(CLI::PositiveNumber);
    run_cmd->add_option("--step-cap", run.step_cap, "Episode step cap (default 40*w*h)")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", run.seed, "Master seed (random if omitted, always printed)");
    run_cmd->add_option("--csv", run.csv_path, "Also write the per-episode report here");
    add_hp_flags(run_cmd, run.hp);

    BenchArgs bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Batched benchmark over random mazes");
    bench_cmd->add_option("--sizes", bench.sizes, "Square maze sizes")
        ->delimiter(',')
        ->check(CLI::Range(2, 1000));
    bench_cmd->add_option("--mazes", bench.mazes, "Mazes per size")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--episodes", bench.episodes, "Episodes per maze")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--agents", bench.agents, "Agents to run")
        ->check(CLI::IsMember({"both", "q", "rbql"}));
    bench_cmd->add_option("--gamma", bench.gamma, "Discount factor")->check(CLI::Range(0.0, 1.0));
    bench_cmd->add_option("--alpha-q", bench.alpha_q, "Q-learning learning rate")
        ->check(CLI::Range(0.0, 1.0));
    bench_cmd->add_option("--trim", bench.trim, "Values trimmed from each end of the range")
        ->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--seed", bench.seed, "Master seed (random if omitted, always printed)");
    bench_cmd->add_option("--out-dir", bench.out_dir, "Directory for CSV/SVG artifacts");

    PlotArgs plot;
    CLI::App* plot_cmd = app.add_subcommand("plot", "Render an SVG chart from a summary CSV");
    plot_cmd->add_option("--summary", plot.summary_path, "Summary CSV path")->required();
    plot_cmd->add_option("--size", plot.size, "Maze size to plot")
        ->required()
        ->check(CLI::PositiveNumber);
    plot_cmd->add_option("--out", plot.out, "Output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "Run with --help for usage.\n";
        return 2;
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen);
        if (run_cmd->parsed()) {
            if (run.maze_path.empty() && (run.width == 0 || run.height == 0)) {
                std::cerr << "run: provide --maze or both --width and --height\n";
                return 2;
            }
            return cmd_run(run);
        }
        if (bench_cmd->parsed()) return cmd_bench(bench);
        if (plot_cmd->parsed()) return cmd_plot(plot);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
