#pragma once

#include <array>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rbql/grid.hpp"
#include "rbql/maze.hpp"

namespace rbql {

/// The directed environment model a learning run builds up: per
/// state-action slot the observed successor and reward, the set of
/// terminal states seen, and the trail of actions taken in the current
/// episode (wall hits excluded) for backtracking out of dead ends.
///
/// Edges are directed: recording a transition A -> B says nothing about
/// B -> A. Wall hits record the state itself as successor with reward -5.
class WorldModel {
  public:
    struct Slot {
        GridPos successor;
        int reward = 0;

        friend bool operator==(const Slot&, const Slot&) = default;
    };

    using Row = std::array<std::optional<Slot>, 4>;

    /// Creates an (empty) row for a newly seen state.
    void discover(GridPos s);

    bool known(GridPos s) const { return rows_.find(s) != rows_.end(); }

    /// Stores the outcome of taking `a` from `s`. Terminal successors are
    /// added to the terminal set. Re-recording a slot with a different
    /// outcome throws ModelInconsistencyError.
    void record_transition(GridPos s, Action a, const StepOutcome& outcome);

    bool slot_explored(GridPos s, Action a) const;

    const Slot* slot(GridPos s, Action a) const;

    const Row* row(GridPos s) const;

    /// Unexplored actions of a known state, in ordinal order.
    std::vector<Action> unexplored_actions(GridPos s) const;

    bool has_unexplored_action(GridPos s) const;

    /// All (state, action) pairs with a known state and an unexplored
    /// slot, in state-discovery order. Empty exactly when every known
    /// state has all four slots filled.
    std::vector<std::pair<GridPos, Action>> frontier() const;

    bool frontier_empty() const;

    const std::vector<GridPos>& states() const { return order_; }

    const std::vector<GridPos>& terminals() const { return terminals_; }
    bool is_terminal(GridPos s) const;

    // Episode trail. push_trail records a non-wall move; pop_backtrack
    // returns the action undoing the latest move and removes it.
    void push_trail(Action a) { trail_.push_back(a); }
    Action pop_backtrack();
    void clear_trail() { trail_.clear(); }
    bool trail_empty() const { return trail_.empty(); }
    std::size_t trail_size() const { return trail_.size(); }

  private:
    std::unordered_map<GridPos, Row> rows_;
    std::vector<GridPos> order_;
    std::vector<GridPos> terminals_;
    std::vector<Action> trail_;
};

} // namespace rbql
