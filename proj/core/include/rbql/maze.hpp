#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rbql/grid.hpp"

namespace rbql {

/// Wall flags of one cell. Bit d set <=> wall in the direction with
/// ordinal d, e.g. walls DOWN and LEFT give 2^2 + 2^3 = 12.
using TileId = std::uint8_t;

inline constexpr TileId kAllWalls = 0xF;

constexpr bool has_wall(TileId tile, Action dir) { return (tile >> ordinal(dir)) & 1; }

/// Step rewards of the environment.
inline constexpr int kStepReward = -1;
inline constexpr int kWallReward = -5;
inline constexpr int kGoalReward = 10;

struct StepOutcome {
    GridPos next_state;
    int reward = kStepReward;
    bool terminal = false;
    bool wall_hit = false;

    friend bool operator==(const StepOutcome&, const StepOutcome&) = default;
};

/// Immutable rectangular grid of wall-flag tiles. The start is always
/// (0,0) and the goal (the only terminal state) is (width-1, height-1).
/// Safe to share across threads once constructed.
class Maze {
  public:
    Maze(int width, int height, std::vector<TileId> tiles);

    int width() const { return width_; }
    int height() const { return height_; }
    int cell_count() const { return width_ * height_; }

    GridPos start() const { return {0, 0}; }
    GridPos goal() const { return {width_ - 1, height_ - 1}; }

    bool in_bounds(GridPos p) const {
        return p.x >= 0 && p.x < width_ && p.y >= 0 && p.y < height_;
    }

    TileId tile(GridPos p) const { return tiles_[index(p)]; }
    const std::vector<TileId>& tiles() const { return tiles_; }

    friend bool operator==(const Maze&, const Maze&) = default;

  private:
    std::size_t index(GridPos p) const {
        return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(p.x);
    }

    int width_;
    int height_;
    std::vector<TileId> tiles_;
};

/// Perfect maze (spanning-tree passage graph) over width x height cells,
/// carved with an iterative recursive backtracker. Deterministic in
/// (width, height, seed). Throws std::invalid_argument for non-positive
/// dimensions.
Maze generate_maze(int width, int height, std::uint64_t seed);

/// Makes floor(width*height/4) carve attempts: each picks a uniform
/// random cell and direction and removes that wall (symmetrically on both
/// sides) if it exists and the neighbor is in bounds; otherwise the
/// attempt is a no-op. Border walls are never removed.
Maze carve_extra_paths(const Maze& maze, std::uint64_t seed);

/// True iff the tile at pos has no wall towards dir, computed as
/// (~tile & 2^dir) != 0 on the 4 flag bits. Throws std::invalid_argument
/// for out-of-bounds pos.
bool can_move(const Maze& maze, GridPos pos, Action dir);

/// One environment transition. Wall hits keep the state and reward -5;
/// reaching the goal rewards 10 and ends the episode; every other move
/// rewards -1. Pure and deterministic. Stepping from the goal is a
/// contract violation (std::logic_error).
StepOutcome step(const Maze& maze, GridPos state, Action action);

/// Number of moves on a minimum-length start->goal path (breadth-first
/// search over the passage graph). Throws std::runtime_error if the goal
/// is unreachable, which generated mazes never are.
int shortest_path_length(const Maze& maze);

/// Text form: "width height\n" then height rows of width uppercase hex
/// tile digits, LF line endings. decode(encode(m)) == m.
std::string encode_maze(const Maze& maze);

/// Parses the text form; rejects dimension mismatches, non-hex digits and
/// wall-symmetry/border violations with a ParseError naming line and
/// column (1-based).
Maze decode_maze(const std::string& text);

/// step() veneer that counts invocations; the per-episode step totals
/// reported by the agents are exactly this counter's increments.
class MazeEnv {
  public:
    explicit MazeEnv(const Maze& maze) : maze_(&maze) {}

    StepOutcome step(GridPos state, Action action) {
        ++steps_;
        return rbql::step(*maze_, state, action);
    }

    long long steps_taken() const { return steps_; }
    const Maze& maze() const { return *maze_; }

  private:
    const Maze* maze_;
    long long steps_ = 0;
};

} // namespace rbql
