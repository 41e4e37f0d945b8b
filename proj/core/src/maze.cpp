#include "rbql/maze.hpp"

#include <queue>
#include <stdexcept>
#include <utility>

#include "rbql/errors.hpp"
#include "rbql/rng.hpp"

namespace rbql {
namespace {

constexpr const char* kHexDigits = "0123456789ABCDEF";

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

std::size_t cell_index(int width, GridPos p) {
    return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(p.x);
}

void remove_wall(std::vector<TileId>& tiles, int width, GridPos p, Action dir) {
    const GridPos q = neighbor(p, dir);
    tiles[cell_index(width, p)] &= static_cast<TileId>(~(1u << ordinal(dir)));
    tiles[cell_index(width, q)] &= static_cast<TileId>(~(1u << ordinal(opposite(dir))));
}

} // namespace

Maze::Maze(int width, int height, std::vector<TileId> tiles)
    : width_(width), height_(height), tiles_(std::move(tiles)) {
    if (width_ < 1 || height_ < 1) {
        throw std::invalid_argument("maze dimensions must be at least 1x1");
    }
    if (tiles_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_)) {
        throw std::invalid_argument("tile array does not match maze dimensions");
    }
    for (const TileId t : tiles_) {
        if (t > kAllWalls) throw std::invalid_argument("tile id out of range [0, 15]");
    }
}

Maze generate_maze(int width, int height, std::uint64_t seed) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("maze dimensions must be at least 1x1");
    }

    std::vector<TileId> tiles(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                              kAllWalls);
    std::vector<char> visited(tiles.size(), 0);

    // Iterative backtracker; an explicit stack keeps 50x50 grids well away
    // from any call-depth limit.
    Rng rng = Rng(seed).derive("maze/backtracker");
    std::vector<GridPos> stack;
    stack.push_back({0, 0});
    visited[0] = 1;

    const auto in_bounds = [&](GridPos p) {
        return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height;
    };

    while (!stack.empty()) {
        const GridPos current = stack.back();
        std::array<Action, 4> open{};
        int open_count = 0;
        for (const Action a : kAllActions) {
            const GridPos next = neighbor(current, a);
            if (in_bounds(next) && !visited[cell_index(width, next)]) {
                open[static_cast<std::size_t>(open_count++)] = a;
            }
        }
        if (open_count == 0) {
            stack.pop_back();
            continue;
        }
        const Action a = open[rng.next_below(static_cast<std::uint32_t>(open_count))];
        const GridPos next = neighbor(current, a);
        remove_wall(tiles, width, current, a);
        visited[cell_index(width, next)] = 1;
        stack.push_back(next);
    }

    return Maze(width, height, std::move(tiles));
}

Maze carve_extra_paths(const Maze& maze, std::uint64_t seed) {
    const int width = maze.width();
    const int height = maze.height();
    std::vector<TileId> tiles = maze.tiles();

    Rng rng = Rng(seed).derive("maze/carve");
    const int attempts = width * height / 4;
    for (int i = 0; i < attempts; ++i) {
        const auto cell = rng.next_below(static_cast<std::uint32_t>(width * height));
        const GridPos p{static_cast<int>(cell) % width, static_cast<int>(cell) / width};
        const Action dir = action_from_ordinal(static_cast<int>(rng.next_below(4)));
        const GridPos q = neighbor(p, dir);
        const bool neighbor_in_bounds = maze.in_bounds(q);
        if (neighbor_in_bounds && has_wall(tiles[cell_index(width, p)], dir)) {
            remove_wall(tiles, width, p, dir);
        }
        // Otherwise the attempt is consumed without effect; off-grid
        // directions never open border walls.
    }

    return Maze(width, height, std::move(tiles));
}

bool can_move(const Maze& maze, GridPos pos, Action dir) {
    if (!maze.in_bounds(pos)) {
        throw std::invalid_argument("can_move: position " + to_string(pos) + " out of bounds");
    }
    return ((~maze.tile(pos) & kAllWalls) & (1u << ordinal(dir))) != 0;
}

StepOutcome step(const Maze& maze, GridPos state, Action action) {
    if (!maze.in_bounds(state)) {
        throw std::invalid_argument("step: state " + to_string(state) + " out of bounds");
    }
    if (state == maze.goal()) {
        throw std::logic_error("step: the terminal state has no outgoing steps");
    }
    if (!can_move(maze, state, action)) {
        return {state, kWallReward, false, true};
    }
    const GridPos next = neighbor(state, action);
    if (next == maze.goal()) {
        return {next, kGoalReward, true, false};
    }
    return {next, kStepReward, false, false};
}

int shortest_path_length(const Maze& maze) {
    std::vector<int> distance(static_cast<std::size_t>(maze.cell_count()), -1);
    std::queue<GridPos> queue;
    distance[cell_index(maze.width(), maze.start())] = 0;
    queue.push(maze.start());

    while (!queue.empty()) {
        const GridPos p = queue.front();
        queue.pop();
        const int d = distance[cell_index(maze.width(), p)];
        if (p == maze.goal()) return d;
        for (const Action a : kAllActions) {
            if (!can_move(maze, p, a)) continue;
            const GridPos q = neighbor(p, a);
            auto& dq = distance[cell_index(maze.width(), q)];
            if (dq < 0) {
                dq = d + 1;
                queue.push(q);
            }
        }
    }
    throw std::runtime_error("shortest_path_length: goal unreachable");
}

std::string encode_maze(const Maze& maze) {
    std::string out = std::to_string(maze.width()) + " " + std::to_string(maze.height()) + "\n";
    out.reserve(out.size() +
                static_cast<std::size_t>(maze.height()) *
                    (static_cast<std::size_t>(maze.width()) + 1));
    for (int y = 0; y < maze.height(); ++y) {
        for (int x = 0; x < maze.width(); ++x) {
            out += kHexDigits[maze.tile({x, y})];
        }
        out += '\n';
    }
    return out;
}

Maze decode_maze(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            if (pos < text.size()) lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }

    if (lines.empty()) throw ParseError(1, 1, "missing header line");

    const std::string& header = lines[0];
    const std::size_t space = header.find(' ');
    if (space == std::string::npos) {
        throw ParseError(1, static_cast<int>(header.size()) + 1,
                         "expected \"width height\"");
    }
    int width = 0;
    int height = 0;
    try {
        std::size_t used = 0;
        width = std::stoi(header.substr(0, space), &used);
        if (used != space) throw std::invalid_argument("");
        const std::string rest = header.substr(space + 1);
        height = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw ParseError(1, 1, "malformed header, expected \"width height\"");
    }
    if (width < 1 || height < 1) throw ParseError(1, 1, "dimensions must be at least 1");

    if (lines.size() < static_cast<std::size_t>(height) + 1) {
        throw ParseError(static_cast<int>(lines.size()) + 1, 1,
                         "expected " + std::to_string(height) + " tile rows, found " +
                             std::to_string(lines.size() - 1));
    }
    for (std::size_t i = static_cast<std::size_t>(height) + 1; i < lines.size(); ++i) {
        if (!lines[i].empty()) {
            throw ParseError(static_cast<int>(i) + 1, 1, "unexpected content after tile rows");
        }
    }

    std::vector<TileId> tiles(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y) {
        const std::string& row = lines[static_cast<std::size_t>(y) + 1];
        const int line_no = y + 2;
        if (row.size() != static_cast<std::size_t>(width)) {
            throw ParseError(line_no, static_cast<int>(row.size()) + 1,
                             "expected " + std::to_string(width) + " tiles, found " +
                                 std::to_string(row.size()));
        }
        for (int x = 0; x < width; ++x) {
            const int v = hex_value(row[static_cast<std::size_t>(x)]);
            if (v < 0) {
                throw ParseError(line_no, x + 1, "invalid tile digit '" +
                                                     std::string(1, row[static_cast<std::size_t>(x)]) +
                                                     "'");
            }
            tiles[cell_index(width, {x, y})] = static_cast<TileId>(v);
        }
    }

    // Structural checks: border walls present, interior walls symmetric.
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const GridPos p{x, y};
            const TileId t = tiles[cell_index(width, p)];
            for (const Action a : kAllActions) {
                const GridPos q = neighbor(p, a);
                if (q.x < 0 || q.x >= width || q.y < 0 || q.y >= height) {
                    if (!has_wall(t, a)) {
                        throw ParseError(y + 2, x + 1,
                                         "missing border wall on side " +
                                             std::string(1, action_letter(a)));
                    }
                    continue;
                }
                const TileId u = tiles[cell_index(width, q)];
                if (has_wall(t, a) != has_wall(u, opposite(a))) {
                    throw ParseError(y + 2, x + 1,
                                     "asymmetric wall between " + to_string(p) + " and " +
                                         to_string(q));
                }
            }
        }
    }

    return Maze(width, height, std::move(tiles));
}

} // namespace rbql
