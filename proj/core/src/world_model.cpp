#include "rbql/world_model.hpp"

#include <algorithm>
#include <stdexcept>

#include "rbql/errors.hpp"

namespace rbql {

void WorldModel::discover(GridPos s) {
    const auto [it, inserted] = rows_.try_emplace(s);
    (void)it;
    if (inserted) order_.push_back(s);
}

void WorldModel::record_transition(GridPos s, Action a, const StepOutcome& outcome) {
    discover(s);
    Row& row = rows_[s];
    auto& slot = row[ordinal(a)];
    const Slot incoming{outcome.next_state, outcome.reward};
    if (slot.has_value()) {
        if (*slot != incoming) {
            throw ModelInconsistencyError("record_transition: slot " + to_string(s) + "/" +
                                          action_letter(a) +
                                          " re-recorded with a different outcome");
        }
        return;
    }
    slot = incoming;
    if (outcome.terminal && !is_terminal(outcome.next_state)) {
        terminals_.push_back(outcome.next_state);
    }
}

bool WorldModel::slot_explored(GridPos s, Action a) const {
    const Row* row = this->row(s);
    return row != nullptr && (*row)[ordinal(a)].has_value();
}

const WorldModel::Slot* WorldModel::slot(GridPos s, Action a) const {
    const Row* row = this->row(s);
    if (row == nullptr) return nullptr;
    const auto& opt = (*row)[ordinal(a)];
    return opt.has_value() ? &*opt : nullptr;
}

const WorldModel::Row* WorldModel::row(GridPos s) const {
    const auto it = rows_.find(s);
    return it == rows_.end() ? nullptr : &it->second;
}

std::vector<Action> WorldModel::unexplored_actions(GridPos s) const {
    std::vector<Action> out;
    const Row* row = this->row(s);
    if (row == nullptr) return out;
    for (const Action a : kAllActions) {
        if (!(*row)[ordinal(a)].has_value()) out.push_back(a);
    }
    return out;
}

bool WorldModel::has_unexplored_action(GridPos s) const {
    const Row* row = this->row(s);
    if (row == nullptr) return false;
    return std::any_of(row->begin(), row->end(),
                       [](const std::optional<Slot>& slot) { return !slot.has_value(); });
}

std::vector<std::pair<GridPos, Action>> WorldModel::frontier() const {
    std::vector<std::pair<GridPos, Action>> out;
    for (const GridPos s : order_) {
        for (const Action a : unexplored_actions(s)) out.emplace_back(s, a);
    }
    return out;
}

bool WorldModel::frontier_empty() const {
    return std::none_of(order_.begin(), order_.end(),
                        [this](GridPos s) { return has_unexplored_action(s); });
}

bool WorldModel::is_terminal(GridPos s) const {
    return std::find(terminals_.begin(), terminals_.end(), s) != terminals_.end();
}

Action WorldModel::pop_backtrack() {
    if (trail_.empty()) {
        throw std::logic_error("pop_backtrack: empty trail (unrecoverable dead end)");
    }
    const Action last = trail_.back();
    trail_.pop_back();
    return opposite(last);
}

} // namespace rbql
