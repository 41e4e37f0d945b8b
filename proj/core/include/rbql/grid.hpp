#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

namespace rbql {

/// Column/row coordinate of a grid cell. (0,0) is the top-left cell;
/// x grows rightwards, y grows downwards.
struct GridPos {
    int x = 0;
    int y = 0;

    friend auto operator<=>(const GridPos&, const GridPos&) = default;
};

/// The four grid actions with their fixed ordinals:
/// UP = 0, RIGHT = 1, DOWN = 2, LEFT = 3.
enum class Action : std::uint8_t {
    Up = 0,
    Right = 1,
    Down = 2,
    Left = 3,
};

inline constexpr std::array<Action, 4> kAllActions = {Action::Up, Action::Right, Action::Down,
                                                      Action::Left};

constexpr int ordinal(Action a) { return static_cast<int>(a); }

constexpr Action action_from_ordinal(int d) { return static_cast<Action>(d & 3); }

/// Up<->Down, Right<->Left. An involution: opposite(opposite(a)) == a.
constexpr Action opposite(Action a) { return static_cast<Action>(static_cast<int>(a) ^ 2); }

/// Neighbor cell in the action's direction (may be out of bounds).
constexpr GridPos neighbor(GridPos p, Action a) {
    switch (a) {
    case Action::Up: return {p.x, p.y - 1};
    case Action::Right: return {p.x + 1, p.y};
    case Action::Down: return {p.x, p.y + 1};
    case Action::Left: return {p.x - 1, p.y};
    }
    return p;
}

constexpr int manhattan(GridPos a, GridPos b) {
    const int dx = a.x >= b.x ? a.x - b.x : b.x - a.x;
    const int dy = a.y >= b.y ? a.y - b.y : b.y - a.y;
    return dx + dy;
}

constexpr char action_letter(Action a) {
    switch (a) {
    case Action::Up: return 'U';
    case Action::Right: return 'R';
    case Action::Down: return 'D';
    case Action::Left: return 'L';
    }
    return '?';
}

inline std::string to_string(GridPos p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

} // namespace rbql

template <>
struct std::hash<rbql::GridPos> {
    std::size_t operator()(const rbql::GridPos& p) const noexcept {
        const auto ux = static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x));
        const auto uy = static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.y));
        return std::hash<std::uint64_t>{}((ux << 32) | uy);
    }
};
