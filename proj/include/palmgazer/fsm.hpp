#pragma once

#include "palmgazer/geometry.hpp"
#include "palmgazer/input.hpp"
#include "palmgazer/navigation.hpp"
#include "palmgazer/targeting.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace palmgazer
{
    // ---- events ----------------------------------------------------------

    struct UiSummoned
    {
        friend bool operator==(const UiSummoned &, const UiSummoned &) = default;
    };
    struct UiDismissed
    {
        friend bool operator==(const UiDismissed &, const UiDismissed &) = default;
    };
    struct HoverChanged
    {
        std::optional<std::string> previous;
        std::optional<std::string> current;
        friend bool operator==(const HoverChanged &, const HoverChanged &) = default;
    };
    struct Selected
    {
        std::string id;
        friend bool operator==(const Selected &, const Selected &) = default;
    };
    struct DragStarted
    {
        std::optional<std::string> target; // hover captured at pinch-down
        friend bool operator==(const DragStarted &, const DragStarted &) = default;
    };
    struct DragUpdated
    {
        DragDelta delta;
        friend bool operator==(const DragUpdated &, const DragUpdated &) = default;
    };
    struct DragEnded
    {
        bool committed = true;
        friend bool operator==(const DragEnded &, const DragEnded &) = default;
    };

    using UiEventPayload =
        std::variant<UiSummoned, UiDismissed, HoverChanged, Selected, DragStarted, DragUpdated, DragEnded>;

    std::string_view event_name(const UiEventPayload &payload) noexcept;

    struct UiEvent
    {
        double t = 0.0;
        UiEventPayload payload;

        std::string_view name() const noexcept { return event_name(payload); }
        template <typename T>
        bool is() const noexcept
        {
            return std::holds_alternative<T>(payload);
        }
        friend bool operator==(const UiEvent &, const UiEvent &) = default;
    };

    // ---- state -----------------------------------------------------------

    struct UiOff
    {
        friend bool operator==(const UiOff &, const UiOff &) = default;
    };
    struct Summoning
    {
        friend bool operator==(const Summoning &, const Summoning &) = default;
    };
    struct Idle
    {
        friend bool operator==(const Idle &, const Idle &) = default;
    };
    struct PinchPending
    {
        double t_down = 0.0;
        Vec3 position_down;
        std::optional<std::string> captured;
        friend bool operator==(const PinchPending &, const PinchPending &) = default;
    };
    struct Dragging
    {
        Vec3 last_position;
        std::optional<std::string> target;
        friend bool operator==(const Dragging &, const Dragging &) = default;
    };

    using FsmPhase = std::variant<UiOff, Summoning, Idle, PinchPending, Dragging>;

    std::string_view phase_name(const FsmPhase &phase) noexcept;

    struct InteractionState
    {
        FsmPhase phase = UiOff{};
        // Scale-up animation progress in [0,1]; keeps running while a pinch
        // is held during summoning.
        double summon_progress = 0.0;
        std::optional<std::string> hover;
        bool pinch_was_down = false;
        std::optional<double> last_t;

        bool ui_on() const noexcept { return !std::holds_alternative<UiOff>(phase); }
        friend bool operator==(const InteractionState &, const InteractionState &) = default;
    };

    struct FsmInput
    {
        double t = 0.0;
        PalmState palm = PalmState::Closed;
        PinchPhase pinch = PinchPhase::Up;
        bool pinch_cancelled = false;
        bool hand_lost = false;
        std::optional<std::string> hover;
        Vec3 palm_position; // smoothed
        DragBasis basis;
        DragDelta extra_drag; // e.g. head-motion scrolling, added to every DragUpdated
    };

    struct FsmParams
    {
        double summon_duration = 0.250;
        GestureThresholds gestures{};
    };

    struct FsmStep
    {
        InteractionState state;
        std::vector<UiEvent> events;
    };

    /// One frame of the interaction state machine. Pure: same state and
    /// inputs always produce the same result.
    FsmStep step(const InteractionState &state, const FsmInput &input, const FsmParams &params = {});

} // namespace palmgazer
