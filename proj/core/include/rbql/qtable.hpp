#pragma once

#include <array>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "rbql/grid.hpp"

namespace rbql {

/// Per-state array of four action values. States absent from the table
/// read as the default value for all four actions; terminal states can be
/// pinned to exactly 0 and are never written afterwards.
///
/// The baseline learner uses a finite default (q_init). The model-based
/// learner uses -infinity so that unevaluated slots lose every argmax and
/// never attract a greedy rollout.
class QTable {
  public:
    explicit QTable(double default_value = 0.0) : default_value_(default_value) {}

    double default_value() const { return default_value_; }

    bool contains(GridPos s) const { return rows_.find(s) != rows_.end(); }

    bool pinned(GridPos s) const {
        const auto it = rows_.find(s);
        return it != rows_.end() && it->second.pinned;
    }

    std::array<double, 4> row(GridPos s) const {
        const auto it = rows_.find(s);
        if (it == rows_.end()) {
            return {default_value_, default_value_, default_value_, default_value_};
        }
        return it->second.values;
    }

    double value(GridPos s, Action a) const {
        const auto it = rows_.find(s);
        return it == rows_.end() ? default_value_ : it->second.values[ordinal(a)];
    }

    void set(GridPos s, Action a, double v) {
        Row& r = ensure_row(s);
        if (r.pinned) throw std::logic_error("QTable: terminal state values are pinned");
        r.values[ordinal(a)] = v;
    }

    /// Fixes the state's four values to exactly 0 forever.
    void pin_zero(GridPos s) {
        Row& r = ensure_row(s);
        r.values = {0.0, 0.0, 0.0, 0.0};
        r.pinned = true;
    }

    double max_value(GridPos s) const {
        const auto values = row(s);
        double best = values[0];
        for (int d = 1; d < 4; ++d) best = values[d] > best ? values[d] : best;
        return best;
    }

    /// All actions attaining the row maximum; empty when the maximum is
    /// -infinity (nothing evaluated).
    std::vector<Action> argmax_actions(GridPos s) const {
        const auto values = row(s);
        const double best = max_value(s);
        std::vector<Action> out;
        if (best == -std::numeric_limits<double>::infinity()) return out;
        for (const Action a : kAllActions) {
            if (values[ordinal(a)] == best) out.push_back(a);
        }
        return out;
    }

    /// True when the state has at least one finite value to act on.
    bool has_evaluated_values(GridPos s) const {
        if (!contains(s)) return false;
        return max_value(s) > -std::numeric_limits<double>::infinity();
    }

    /// States in first-touch order (stable across runs).
    const std::vector<GridPos>& states() const { return order_; }

  private:
    struct Row {
        std::array<double, 4> values;
        bool pinned = false;
    };

    Row& ensure_row(GridPos s) {
        const auto [it, inserted] = rows_.try_emplace(
            s, Row{{default_value_, default_value_, default_value_, default_value_}, false});
        if (inserted) order_.push_back(s);
        return it->second;
    }

    double default_value_;
    std::unordered_map<GridPos, Row> rows_;
    std::vector<GridPos> order_;
};

} // namespace rbql
