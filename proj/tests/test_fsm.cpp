#include "palmgazer/fsm.hpp"

#include "support/log_scan.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

using namespace palmgazer;
using palmgazer::testing_support::LogScanner;

namespace
{
    constexpr double kDt = 1.0 / 90.0;

    FsmInput open_hand(double t, std::optional<std::string> hover = std::nullopt)
    {
        FsmInput in;
        in.t = t;
        in.palm = PalmState::Open;
        in.hover = std::move(hover);
        return in;
    }

    std::vector<std::string> names(const std::vector<UiEvent> &events)
    {
        std::vector<std::string> out;
        for (const auto &e : events)
        {
            out.emplace_back(e.name());
        }
        return out;
    }

    struct Runner
    {
        InteractionState state;
        std::vector<UiEvent> log;

        std::vector<UiEvent> feed(const FsmInput &in)
        {
            FsmStep s = step(state, in);
            state = s.state;
            log.insert(log.end(), s.events.begin(), s.events.end());
            return s.events;
        }
    };

    FsmInput random_input(std::mt19937_64 &rng, double t)
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        FsmInput in;
        in.t = t;
        in.palm = u(rng) < 0.8 ? PalmState::Open : PalmState::Closed;
        in.pinch = u(rng) < 0.5 ? PinchPhase::Down : PinchPhase::Up;
        in.pinch_cancelled = in.pinch == PinchPhase::Up && u(rng) < 0.1;
        in.hand_lost = u(rng) < 0.02;
        const double h = u(rng);
        if (h < 0.6)
        {
            in.hover = "e" + std::to_string(static_cast<int>(h * 10));
        }
        in.palm_position = {u(rng) * 0.1, 1.2 + u(rng) * 0.1, -0.3 + u(rng) * 0.1};
        return in;
    }

    // Stream with sticky segments so pinches and drags actually complete.
    std::vector<FsmInput> random_stream(std::uint64_t seed, int frames)
    {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> seg(1, 40);
        std::vector<FsmInput> out;
        FsmInput current = random_input(rng, 0.0);
        int left = seg(rng);
        for (int i = 0; i < frames; ++i)
        {
            if (--left <= 0)
            {
                current = random_input(rng, 0.0);
                left = seg(rng);
            }
            FsmInput in = current;
            in.t = i * kDt;
            in.palm_position += Vec3{0.001 * (i % 7), 0.0, 0.0};
            out.push_back(in);
        }
        return out;
    }
} // namespace

TEST(Fsm, LookAndPinchSelectsSong)
{
    Runner r;
    int i = 0;
    for (; i * kDt < 0.25 - 1e-9; ++i)
    {
        r.feed(open_hand(i * kDt, "song4"));
    }
    const double t_down = i * kDt;
    const Vec3 start{0.0, 1.2, -0.3};
    for (; i * kDt < t_down + 0.15 - 1e-9; ++i)
    {
        FsmInput in = open_hand(i * kDt, "song4");
        in.pinch = PinchPhase::Down;
        in.palm_position = start + Vec3{0.003 * (i * kDt - t_down) / 0.15, 0, 0};
        r.feed(in);
    }
    FsmInput up = open_hand(i * kDt, "song4");
    up.palm_position = start + Vec3{0.003, 0, 0};
    r.feed(up);

    EXPECT_EQ(names(r.log), (std::vector<std::string>{"UiSummoned", "HoverChanged", "Selected"}));
    EXPECT_EQ(std::get<HoverChanged>(r.log[1].payload).current, "song4");
    EXPECT_EQ(std::get<Selected>(r.log[2].payload).id, "song4");
    EXPECT_TRUE(std::holds_alternative<Idle>(r.state.phase));
}

TEST(Fsm, SummonProgressReachesIdle)
{
    Runner r;
    r.feed(open_hand(0.0));
    EXPECT_TRUE(std::holds_alternative<Summoning>(r.state.phase));
    r.feed(open_hand(0.125));
    EXPECT_DOUBLE_EQ(r.state.summon_progress, 0.5);
    EXPECT_TRUE(std::holds_alternative<Summoning>(r.state.phase));
    r.feed(open_hand(0.25));
    EXPECT_TRUE(std::holds_alternative<Idle>(r.state.phase));
}

TEST(Fsm, SelectableDuringSummoning)
{
    Runner r;
    r.feed(open_hand(0.0, "a"));
    FsmInput down = open_hand(kDt, "a");
    down.pinch = PinchPhase::Down;
    r.feed(down);
    const auto ev = r.feed(open_hand(2 * kDt, "a"));
    ASSERT_EQ(ev.size(), 1u);
    EXPECT_EQ(std::get<Selected>(ev[0].payload).id, "a");
}

TEST(Fsm, PalmCloseWhileDraggingCommitsThenDismisses)
{
    Runner r;
    r.feed(open_hand(0.0));
    r.feed(open_hand(0.3));
    FsmInput in = open_hand(0.31);
    in.pinch = PinchPhase::Down;
    r.feed(in);
    in.t = 0.32;
    in.palm_position = {0.05, 0, 0};
    r.feed(in);
    ASSERT_TRUE(std::holds_alternative<Dragging>(r.state.phase));

    FsmInput close = in;
    close.t = 0.33;
    close.palm = PalmState::Closed;
    const auto ev = r.feed(close);
    ASSERT_EQ(ev.size(), 2u);
    EXPECT_EQ(ev[0].payload, UiEventPayload{DragEnded{true}});
    EXPECT_EQ(ev[1].payload, UiEventPayload{UiDismissed{}});
    EXPECT_TRUE(std::holds_alternative<UiOff>(r.state.phase));
}

TEST(Fsm, PalmCloseWhilePendingGivesNoSelection)
{
    Runner r;
    r.feed(open_hand(0.0, "a"));
    FsmInput down = open_hand(0.3, "a");
    down.pinch = PinchPhase::Down;
    r.feed(down);
    FsmInput close = down;
    close.t = 0.31;
    close.palm = PalmState::Closed;
    close.pinch = PinchPhase::Up;
    EXPECT_EQ(names(r.feed(close)), std::vector<std::string>{"UiDismissed"});
}

TEST(Fsm, SelectionUsesTargetCapturedAtPinchDown)
{
    Runner r;
    r.feed(open_hand(0.0, "a"));
    r.feed(open_hand(0.3, "a"));
    FsmInput down = open_hand(0.31, "a");
    down.pinch = PinchPhase::Down;
    r.feed(down);
    down.t = 0.32;
    down.hover = "b"; // gaze drifts before release
    r.feed(down);
    const auto ev = r.feed(open_hand(0.33, "b"));
    ASSERT_EQ(ev.size(), 1u);
    EXPECT_EQ(std::get<Selected>(ev[0].payload).id, "a");
}

TEST(Fsm, PinchOnNothingSelectsNothing)
{
    Runner r;
    r.feed(open_hand(0.0));
    FsmInput down = open_hand(0.3);
    down.pinch = PinchPhase::Down;
    r.feed(down);
    EXPECT_TRUE(r.feed(open_hand(0.35)).empty());
}

TEST(Fsm, CancelledReleaseSelectsNothingAndCancelsDrag)
{
    Runner r;
    r.feed(open_hand(0.0, "a"));
    FsmInput down = open_hand(0.3, "a");
    down.pinch = PinchPhase::Down;
    r.feed(down);
    FsmInput cancel = open_hand(0.31, "a");
    cancel.pinch_cancelled = true;
    EXPECT_TRUE(r.feed(cancel).empty());

    down.t = 0.4;
    r.feed(down);
    down.t = 0.8; // held past the duration bound
    r.feed(down);
    ASSERT_TRUE(std::holds_alternative<Dragging>(r.state.phase));
    cancel.t = 0.81;
    const auto ev = r.feed(cancel);
    ASSERT_EQ(ev.size(), 1u);
    EXPECT_EQ(ev[0].payload, UiEventPayload{DragEnded{false}});
}

TEST(Fsm, DragDeltasSumToTotalDisplacement)
{
    Runner r;
    r.feed(open_hand(0.0));
    FsmInput in = open_hand(0.3);
    in.pinch = PinchPhase::Down;
    r.feed(in);
    for (int i = 1; i <= 30; ++i)
    {
        in.t = 0.3 + i * kDt;
        in.palm_position = {0.004 * i, -0.001 * i, 0.0};
        r.feed(in);
    }
    DragDelta sum;
    for (const auto &e : r.log)
    {
        if (const auto *u = std::get_if<DragUpdated>(&e.payload))
        {
            sum += u->delta;
        }
    }
    EXPECT_NEAR(sum.right, 0.12, 1e-12);
    EXPECT_NEAR(sum.up, -0.03, 1e-12);
}

TEST(Fsm, EventTimestampsMatchFrame)
{
    InteractionState state;
    for (const auto &in : random_stream(3, 2000))
    {
        const FsmStep s = step(state, in);
        for (const auto &e : s.events)
        {
            ASSERT_EQ(e.t, in.t);
        }
        state = s.state;
    }
}

TEST(FsmProperty, NoSelectionOrDragWhileOff)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        Runner r;
        for (const auto &in : random_stream(seed, 10000))
        {
            r.feed(in);
        }
        LogScanner scan;
        for (const auto &e : r.log)
        {
            scan.feed(e);
        }
        ASSERT_EQ(scan.result().violations, 0) << "seed " << seed << ": " << scan.result().first;
        ASSERT_GT(scan.result().events, 100);
    }
}

TEST(FsmProperty, PalmCloseReachesOffInOneStep)
{
    InteractionState state;
    for (const auto &in : random_stream(5, 10000))
    {
        FsmInput close = in;
        close.palm = PalmState::Closed;
        close.hand_lost = false;
        const FsmStep off = step(state, close);
        ASSERT_TRUE(std::holds_alternative<UiOff>(off.state.phase));
        ASSERT_EQ(off.events.empty(), !state.ui_on());
        state = step(state, in).state;
    }
}

TEST(FsmProperty, SameInputsSameEvents)
{
    const auto stream = random_stream(9, 5000);
    Runner a;
    Runner b;
    for (const auto &in : stream)
    {
        a.feed(in);
        b.feed(in);
    }
    EXPECT_EQ(a.log, b.log);
    EXPECT_EQ(a.state, b.state);
}

TEST(FsmProperty, SelectedOnlyForCapturedNonEmptyTargets)
{
    Runner r;
    for (const auto &in : random_stream(11, 10000))
    {
        const InteractionState before = r.state;
        for (const auto &e : r.feed(in))
        {
            if (const auto *sel = std::get_if<Selected>(&e.payload))
            {
                const auto *pending = std::get_if<PinchPending>(&before.phase);
                ASSERT_NE(pending, nullptr);
                ASSERT_EQ(pending->captured, sel->id);
            }
        }
    }
}
