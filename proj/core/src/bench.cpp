#include "rbql/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <tuple>

#include "rbql/rbql_agent.hpp"
#include "rbql/rng.hpp"

namespace rbql {
namespace {

std::string shortest(double v) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, result.ptr);
}

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = line.find(sep, pos);
        if (next == std::string::npos) {
            parts.push_back(line.substr(pos));
            return parts;
        }
        parts.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
}

int parse_int(const std::string& text, const std::string& context) {
    int value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
        throw std::runtime_error(context + ": bad integer '" + text + "'");
    }
    return value;
}

double parse_double(const std::string& text, const std::string& context) {
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
        throw std::runtime_error(context + ": bad number '" + text + "'");
    }
    return value;
}

AgentKind parse_agent(const std::string& tag, const std::string& context) {
    if (tag == "q") return AgentKind::Q;
    if (tag == "rbql") return AgentKind::Rbql;
    throw std::runtime_error(context + ": unknown agent tag '" + tag + "'");
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

const SummaryRow* find_row(const std::vector<SummaryRow>& summary, int size, AgentKind agent,
                           int episode) {
    for (const SummaryRow& row : summary) {
        if (row.size == size && row.agent == agent && row.episode == episode) return &row;
    }
    return nullptr;
}

std::vector<int> summary_sizes(const std::vector<SummaryRow>& summary) {
    std::vector<int> sizes;
    for (const SummaryRow& row : summary) {
        if (std::find(sizes.begin(), sizes.end(), row.size) == sizes.end()) {
            sizes.push_back(row.size);
        }
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

} // namespace

const char* agent_tag(AgentKind agent) { return agent == AgentKind::Q ? "q" : "rbql"; }

Maze make_bench_maze(std::uint64_t master_seed, int size, int maze_id) {
    const Rng master(master_seed);
    const std::string key = std::to_string(size) + "/" + std::to_string(maze_id);
    const Maze tree = generate_maze(size, size, master.derive_seed("maze/gen/" + key));
    return carve_extra_paths(tree, master.derive_seed("maze/carve/" + key));
}

std::vector<RunRecord> run_benchmark(const BenchConfig& config) {
    if (config.mazes_per_size < 1) {
        throw std::invalid_argument("run_benchmark: mazes_per_size must be >= 1");
    }
    if (config.episodes < 1) throw std::invalid_argument("run_benchmark: episodes must be >= 1");
    if (!config.run_q && !config.run_rbql) {
        throw std::invalid_argument("run_benchmark: no agent selected");
    }

    const Rng master(config.master_seed);
    std::vector<RunRecord> records;

    for (const int size : config.sizes) {
        if (size < 2) throw std::invalid_argument("run_benchmark: sizes must be >= 2");
        for (int id = 0; id < config.mazes_per_size; ++id) {
            const Maze maze = make_bench_maze(config.master_seed, size, id);
            const std::string key = std::to_string(size) + "/" + std::to_string(id);
            if (config.run_q) {
                const auto run = train_q(maze, config.episodes, config.hp_q,
                                         master.derive_seed("run/q/" + key));
                for (const EpisodeResult& er : run.episodes) {
                    records.push_back(
                        {size, id, AgentKind::Q, er.episode, er.steps, er.reached_goal});
                }
            }
            if (config.run_rbql) {
                const auto run = train_rbql(maze, config.episodes, config.hp_rbql,
                                            master.derive_seed("run/rbql/" + key));
                for (const EpisodeResult& er : run.episodes) {
                    records.push_back(
                        {size, id, AgentKind::Rbql, er.episode, er.steps, er.reached_goal});
                }
            }
        }
    }

    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tuple(a.size, static_cast<int>(a.agent), a.maze_id, a.episode) <
               std::tuple(b.size, static_cast<int>(b.agent), b.maze_id, b.episode);
    });
    return records;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records, int trim) {
    if (trim < 0) throw std::invalid_argument("summarize: trim must be nonnegative");

    std::map<std::tuple<int, int, int>, std::vector<int>> groups;
    for (const RunRecord& r : records) {
        groups[{r.size, static_cast<int>(r.agent), r.episode}].push_back(r.steps);
    }

    std::vector<SummaryRow> summary;
    for (auto& [key, steps] : groups) {
        const auto [size, agent, episode] = key;
        if (steps.size() <= static_cast<std::size_t>(2 * trim)) {
            throw std::invalid_argument("summarize: group of " + std::to_string(steps.size()) +
                                        " values cannot be trimmed by " + std::to_string(trim));
        }
        double sum = 0.0;
        for (const int v : steps) sum += v;
        std::sort(steps.begin(), steps.end());
        summary.push_back({size, static_cast<AgentKind>(agent), episode,
                           sum / static_cast<double>(steps.size()), steps[trim],
                           steps[steps.size() - 1 - trim]});
    }
    return summary; // map order == (size, agent, episode)
}

std::vector<DifferenceRow> difference_table(const std::vector<SummaryRow>& summary) {
    std::vector<DifferenceRow> rows;
    for (const int episode : {0, 24}) {
        for (const int size : summary_sizes(summary)) {
            const SummaryRow* q = find_row(summary, size, AgentKind::Q, episode);
            const SummaryRow* rbql = find_row(summary, size, AgentKind::Rbql, episode);
            if (q == nullptr || rbql == nullptr) {
                throw std::invalid_argument(
                    "difference_table: both agents with episodes 0 and 24 required");
            }
            rows.push_back({size, episode, q->mean, rbql->mean, q->mean / rbql->mean});
        }
    }
    return rows;
}

std::vector<ImprovementRow> improvement_table(const std::vector<SummaryRow>& summary) {
    std::vector<ImprovementRow> rows;
    for (const AgentKind agent : {AgentKind::Q, AgentKind::Rbql}) {
        for (const int size : summary_sizes(summary)) {
            const SummaryRow* ep0 = find_row(summary, size, agent, 0);
            const SummaryRow* ep24 = find_row(summary, size, agent, 24);
            if (ep0 == nullptr) continue; // agent absent from this run
            if (ep24 == nullptr) {
                throw std::invalid_argument("improvement_table: episodes 0..24 required");
            }
            rows.push_back({size, agent, ep0->mean, ep24->mean, ep0->mean / ep24->mean});
        }
    }
    return rows;
}

std::string format_difference_table(const std::vector<DifferenceRow>& rows) {
    std::string out = "size,episode,q_mean,rbql_mean,difference\n";
    for (const DifferenceRow& r : rows) {
        out += std::to_string(r.size) + "," + std::to_string(r.episode) + "," + fixed2(r.q_mean) +
               "," + fixed2(r.rbql_mean) + "," + fixed2(r.ratio) + "\n";
    }
    return out;
}

std::string format_improvement_table(const std::vector<ImprovementRow>& rows) {
    std::string out = "size,agent,ep0_mean,ep24_mean,improvement\n";
    for (const ImprovementRow& r : rows) {
        out += std::to_string(r.size) + "," + agent_tag(r.agent) + "," + fixed2(r.ep0_mean) + "," +
               fixed2(r.ep24_mean) + "," + fixed2(r.factor) + "\n";
    }
    return out;
}

std::string records_csv(const std::vector<RunRecord>& records) {
    std::string out = "size,maze_id,agent,episode,steps\n";
    for (const RunRecord& r : records) {
        out += std::to_string(r.size) + "," + std::to_string(r.maze_id) + "," +
               agent_tag(r.agent) + "," + std::to_string(r.episode) + "," +
               std::to_string(r.steps) + "\n";
    }
    return out;
}

std::string summary_csv(const std::vector<SummaryRow>& summary) {
    std::string out = "size,agent,episode,mean,trimmed_min,trimmed_max\n";
    for (const SummaryRow& r : summary) {
        out += std::to_string(r.size) + "," + agent_tag(r.agent) + "," +
               std::to_string(r.episode) + "," + shortest(r.mean) + "," +
               std::to_string(r.trimmed_min) + "," + std::to_string(r.trimmed_max) + "\n";
    }
    return out;
}

void write_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
    write_text(records_csv(records), path);
}

void write_csv(const std::vector<SummaryRow>& summary, const std::filesystem::path& path) {
    write_text(summary_csv(summary), path);
}

std::vector<RunRecord> read_records_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    const std::string context = path.string();
    if (lines.empty() || lines[0] != "size,maze_id,agent,episode,steps") {
        throw std::runtime_error(context + ": missing records header");
    }
    std::vector<RunRecord> records;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = split(lines[i], ',');
        if (f.size() != 5) throw std::runtime_error(context + ": malformed row " + lines[i]);
        RunRecord r;
        r.size = parse_int(f[0], context);
        r.maze_id = parse_int(f[1], context);
        r.agent = parse_agent(f[2], context);
        r.episode = parse_int(f[3], context);
        r.steps = parse_int(f[4], context);
        records.push_back(r);
    }
    return records;
}

std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    const std::string context = path.string();
    if (lines.empty() || lines[0] != "size,agent,episode,mean,trimmed_min,trimmed_max") {
        throw std::runtime_error(context + ": missing summary header");
    }
    std::vector<SummaryRow> summary;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = split(lines[i], ',');
        if (f.size() != 6) throw std::runtime_error(context + ": malformed row " + lines[i]);
        SummaryRow r;
        r.size = parse_int(f[0], context);
        r.agent = parse_agent(f[1], context);
        r.episode = parse_int(f[2], context);
        r.mean = parse_double(f[3], context);
        r.trimmed_min = parse_int(f[4], context);
        r.trimmed_max = parse_int(f[5], context);
        summary.push_back(r);
    }
    return summary;
}

} // namespace rbql
