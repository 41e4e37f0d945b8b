#include "rbql/world_model.hpp"

#include <gtest/gtest.h>

#include "rbql/errors.hpp"
#include "rbql/rbql_agent.hpp"

namespace rbql {
namespace {

StepOutcome wall_at(GridPos s) { return {s, -5, false, true}; }
StepOutcome move_to(GridPos next) { return {next, -1, false, false}; }
StepOutcome goal_at(GridPos next) { return {next, 10, true, false}; }

TEST(WorldModel, WallHitRecordsSelfLoop) {
    WorldModel model;
    model.record_transition({0, 0}, Action::Up, wall_at({0, 0}));
    const auto* slot = model.slot({0, 0}, Action::Up);
    ASSERT_NE(slot, nullptr);
    EXPECT_EQ(slot->successor, (GridPos{0, 0}));
    EXPECT_EQ(slot->reward, -5);
}

TEST(WorldModel, TerminalOutcomeJoinsTerminalSet) {
    WorldModel model;
    model.record_transition({3, 4}, Action::Right, goal_at({4, 4}));
    ASSERT_EQ(model.terminals().size(), 1u);
    EXPECT_EQ(model.terminals()[0], (GridPos{4, 4}));
    EXPECT_EQ(model.slot({3, 4}, Action::Right)->reward, 10);
}

TEST(WorldModel, EdgesAreDirected) {
    WorldModel model;
    model.record_transition({0, 0}, Action::Right, move_to({1, 0}));
    EXPECT_TRUE(model.slot_explored({0, 0}, Action::Right));
    EXPECT_FALSE(model.slot_explored({1, 0}, Action::Left));
}

TEST(WorldModel, InconsistentReRecordingThrows) {
    WorldModel model;
    model.record_transition({0, 0}, Action::Right, move_to({1, 0}));
    // Same outcome is a harmless no-op.
    EXPECT_NO_THROW(model.record_transition({0, 0}, Action::Right, move_to({1, 0})));
    EXPECT_THROW(model.record_transition({0, 0}, Action::Right, wall_at({0, 0})),
                 ModelInconsistencyError);
}

TEST(WorldModel, FrontierTracksUnexploredSlots) {
    WorldModel model;
    model.discover({0, 0});
    EXPECT_EQ(model.frontier().size(), 4u);
    EXPECT_FALSE(model.frontier_empty());

    model.record_transition({0, 0}, Action::Up, wall_at({0, 0}));
    model.record_transition({0, 0}, Action::Left, wall_at({0, 0}));
    model.record_transition({0, 0}, Action::Right, move_to({1, 0}));
    // Only DOWN of (0,0) remains; (1,0) has no row until discovered.
    EXPECT_EQ(model.frontier().size(), 1u);
    model.discover({1, 0});
    EXPECT_EQ(model.frontier().size(), 5u);

    model.record_transition({0, 0}, Action::Down, wall_at({0, 0}));
    for (const Action a : kAllActions) {
        model.record_transition({1, 0}, a, wall_at({1, 0}));
    }
    EXPECT_TRUE(model.frontier_empty());
}

TEST(WorldModel, BacktrackReturnsOppositesInReverse) {
    WorldModel model;
    model.push_trail(Action::Right);
    model.push_trail(Action::Up);
    EXPECT_EQ(model.pop_backtrack(), Action::Down);
    EXPECT_EQ(model.trail_size(), 1u);
    EXPECT_EQ(model.pop_backtrack(), Action::Left);
    EXPECT_TRUE(model.trail_empty());
    EXPECT_THROW(model.pop_backtrack(), std::logic_error);
}

TEST(WorldModel, DeadEndWalkUnwindsInExactlyKSteps) {
    // Walk a dead-end corridor of length 4, then unwind.
    WorldModel model;
    const std::array<Action, 4> walk{Action::Right, Action::Right, Action::Down, Action::Down};
    for (const Action a : walk) model.push_trail(a);
    std::vector<Action> unwound;
    while (!model.trail_empty()) unwound.push_back(model.pop_backtrack());
    const std::vector<Action> expected{Action::Up, Action::Up, Action::Left, Action::Left};
    EXPECT_EQ(unwound, expected);
}

TEST(SelectFrontier, SinglePairIsAlwaysChosen) {
    WorldModel model;
    model.discover({2, 2});
    model.record_transition({2, 2}, Action::Up, wall_at({2, 2}));
    model.record_transition({2, 2}, Action::Right, wall_at({2, 2}));
    model.record_transition({2, 2}, Action::Down, wall_at({2, 2}));
    Rng rng(3);
    const auto pick = select_frontier(model, rng);
    ASSERT_TRUE(pick.has_value());
    EXPECT_EQ(pick->first, (GridPos{2, 2}));
    EXPECT_EQ(pick->second, Action::Left);
}

TEST(SelectFrontier, TwoPairsAreNearUniform) {
    WorldModel model;
    model.discover({0, 0});
    model.discover({1, 0});
    for (const Action a : {Action::Right, Action::Down, Action::Left}) {
        model.record_transition({0, 0}, a, wall_at({0, 0}));
    }
    for (const Action a : {Action::Up, Action::Right, Action::Down}) {
        model.record_transition({1, 0}, a, wall_at({1, 0}));
    }
    Rng rng(11);
    int first = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto pick = select_frontier(model, rng);
        ASSERT_TRUE(pick.has_value());
        if (pick->first == (GridPos{0, 0})) ++first;
    }
    EXPECT_NEAR(first, 5000, 300);
}

TEST(SelectFrontier, FullyExploredSignalsCompletion) {
    WorldModel model;
    model.discover({0, 0});
    for (const Action a : kAllActions) model.record_transition({0, 0}, a, wall_at({0, 0}));
    Rng rng(5);
    EXPECT_FALSE(select_frontier(model, rng).has_value());
}

TEST(LookAhead, FullyExploredStateNeedsNoProbes) {
    const Maze m = generate_maze(3, 3, 6);
    MazeEnv env(m);
    WorldModel model;
    for (const Action a : kAllActions) {
        model.record_transition({1, 1}, a, step(m, {1, 1}, a));
    }
    EXPECT_EQ(look_ahead(env, model, {1, 1}), 0);
    EXPECT_EQ(env.steps_taken(), 0);
}

TEST(LookAhead, RecordsOnlyWallHitsButCountsEveryProbe) {
    // 2x2 tree maze: the start corner has exactly two border walls plus
    // at most one interior wall.
    const Maze m = generate_maze(2, 2, 1);
    MazeEnv env(m);
    WorldModel model;
    const int probes = look_ahead(env, model, m.start());
    EXPECT_EQ(probes, 4);
    EXPECT_EQ(env.steps_taken(), 4);

    int wall_slots = 0;
    int open_slots = 0;
    for (const Action a : kAllActions) {
        if (model.slot_explored(m.start(), a)) {
            ++wall_slots;
        } else {
            ++open_slots;
        }
        if (!can_move(m, m.start(), a)) {
            EXPECT_TRUE(model.slot_explored(m.start(), a));
        } else {
            EXPECT_FALSE(model.slot_explored(m.start(), a));
        }
    }
    EXPECT_GE(wall_slots, 2);
    EXPECT_GE(open_slots, 1);

    // A second pass only probes what is still unexplored.
    const int again = look_ahead(env, model, m.start());
    EXPECT_EQ(again, open_slots);
}

} // namespace
} // namespace rbql
