#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rbql/maze.hpp"
#include "rbql/qlearn.hpp"

namespace rbql {

enum class AgentKind { Q, Rbql };

const char* agent_tag(AgentKind agent);

struct BenchConfig {
    std::vector<int> sizes = {5, 10, 15};
    int mazes_per_size = 50;
    int episodes = 25;
    Hyperparams hp_q = {};                 // alpha 0.1
    Hyperparams hp_rbql = {.alpha = 1.0};  // backup fully overwrites
    std::uint64_t master_seed = 0;
    bool run_q = true;
    bool run_rbql = true;
};

struct RunRecord {
    int size = 0;
    int maze_id = 0;
    AgentKind agent = AgentKind::Q;
    int episode = 0;
    int steps = 0;
    bool reached_goal = false;
};

struct SummaryRow {
    int size = 0;
    AgentKind agent = AgentKind::Q;
    int episode = 0;
    double mean = 0.0;
    int trimmed_min = 0;
    int trimmed_max = 0;
};

struct DifferenceRow {
    int size = 0;
    int episode = 0;
    double q_mean = 0.0;
    double rbql_mean = 0.0;
    double ratio = 0.0; // q_mean / rbql_mean; display with 2 decimals
};

struct ImprovementRow {
    int size = 0;
    AgentKind agent = AgentKind::Q;
    double ep0_mean = 0.0;
    double ep24_mean = 0.0;
    double factor = 0.0; // ep0_mean / ep24_mean; display with 2 decimals
};

/// The maze both agents run on for a given (master seed, size, id):
/// backtracker output plus extra carved paths, from labeled sub-seeds.
Maze make_bench_maze(std::uint64_t master_seed, int size, int maze_id);

/// Runs every selected agent over the identical per-size maze sets with
/// deterministic per-run sub-seeds. One record per (size, maze, agent,
/// episode), sorted by (size, agent, maze_id, episode).
std::vector<RunRecord> run_benchmark(const BenchConfig& config);

/// Per (size, agent, episode): mean over all step values, and min/max of
/// the group after discarding the `trim` largest and smallest values.
/// Groups must hold more than 2*trim values.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records, int trim = 2);

/// Mean-step ratios q/rbql at episodes 0 and 24; requires both agents.
std::vector<DifferenceRow> difference_table(const std::vector<SummaryRow>& summary);

/// Per-agent factor by which mean steps shrink from episode 0 to 24.
std::vector<ImprovementRow> improvement_table(const std::vector<SummaryRow>& summary);

std::string format_difference_table(const std::vector<DifferenceRow>& rows);
std::string format_improvement_table(const std::vector<ImprovementRow>& rows);

/// CSV schemas (LF endings, shortest round-trip float form):
///   records:   size,maze_id,agent,episode,steps
///   summaries: size,agent,episode,mean,trimmed_min,trimmed_max
std::string records_csv(const std::vector<RunRecord>& records);
std::string summary_csv(const std::vector<SummaryRow>& summary);

void write_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path);
void write_csv(const std::vector<SummaryRow>& summary, const std::filesystem::path& path);

std::vector<RunRecord> read_records_csv(const std::filesystem::path& path);
std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path);

} // namespace rbql
