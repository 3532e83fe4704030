#include "palmgazer/fsm.hpp"

#include <algorithm>

namespace palmgazer
{
    namespace
    {
        template <class... Ts>
        struct overloaded : Ts...
        {
            using Ts::operator()...;
        };
        template <class... Ts>
        overloaded(Ts...) -> overloaded<Ts...>;
    } // namespace

    std::string_view event_name(const UiEventPayload &payload) noexcept
    {
        return std::visit(overloaded{
                              [](const UiSummoned &) { return std::string_view{"UiSummoned"}; },
                              [](const UiDismissed &) { return std::string_view{"UiDismissed"}; },
                              [](const HoverChanged &) { return std::string_view{"HoverChanged"}; },
                              [](const Selected &) { return std::string_view{"Selected"}; },
                              [](const DragStarted &) { return std::string_view{"DragStarted"}; },
                              [](const DragUpdated &) { return std::string_view{"DragUpdated"}; },
                              [](const DragEnded &) { return std::string_view{"DragEnded"}; },
                          },
                          payload);
    }

    std::string_view phase_name(const FsmPhase &phase) noexcept
    {
        return std::visit(overloaded{
                              [](const UiOff &) { return std::string_view{"UiOff"}; },
                              [](const Summoning &) { return std::string_view{"Summoning"}; },
                              [](const Idle &) { return std::string_view{"Idle"}; },
                              [](const PinchPending &) { return std::string_view{"PinchPending"}; },
                              [](const Dragging &) { return std::string_view{"Dragging"}; },
                          },
                          phase);
    }

    FsmStep step(const InteractionState &state, const FsmInput &in, const FsmParams &params)
    {
        FsmStep out{state, {}};
        InteractionState &s = out.state;
        auto emit = [&](UiEventPayload p) { out.events.push_back({in.t, std::move(p)}); };

        const double dt = state.last_t ? std::max(0.0, in.t - *state.last_t) : 0.0;
        const bool pinch_edge_down = in.pinch == PinchPhase::Down && !state.pinch_was_down;
        s.last_t = in.t;
        s.pinch_was_down = in.pinch == PinchPhase::Down;

        // Dismissal wins over everything else, from any active phase.
        if (in.hand_lost || in.palm == PalmState::Closed)
        {
            if (state.ui_on())
            {
                if (std::holds_alternative<Dragging>(state.phase))
                {
                    emit(DragEnded{true});
                }
                emit(UiDismissed{});
            }
            s.phase = UiOff{};
            s.summon_progress = 0.0;
            s.hover.reset();
            return out;
        }

        if (!state.ui_on())
        {
            s.phase = Summoning{};
            s.summon_progress = 0.0;
            emit(UiSummoned{});
            if (auto change = hover_transition(s.hover, in.hover))
            {
                emit(HoverChanged{change->previous, change->current});
            }
            s.hover = in.hover;
            return out;
        }

        if (params.summon_duration > 0.0)
        {
            s.summon_progress = std::min(1.0, s.summon_progress + dt / params.summon_duration);
        }
        else
        {
            s.summon_progress = 1.0;
        }

        if (auto change = hover_transition(s.hover, in.hover))
        {
            emit(HoverChanged{change->previous, change->current});
        }
        s.hover = in.hover;

        const FsmPhase resting = s.summon_progress >= 1.0 ? FsmPhase{Idle{}} : FsmPhase{Summoning{}};

        if (std::holds_alternative<Summoning>(state.phase) || std::holds_alternative<Idle>(state.phase))
        {
            if (pinch_edge_down)
            {
                s.phase = PinchPending{in.t, in.palm_position, s.hover};
            }
            else
            {
                s.phase = resting;
            }
            return out;
        }

        if (const auto *pending = std::get_if<PinchPending>(&state.phase))
        {
            const double duration = in.t - pending->t_down;
            const double displacement = distance(in.palm_position, pending->position_down);
            const GestureKind kind = classify_pinch_gesture(duration, displacement, params.gestures);
            if (in.pinch == PinchPhase::Up)
            {
                s.phase = resting;
                if (!in.pinch_cancelled && kind == GestureKind::Click && pending->captured)
                {
                    emit(Selected{*pending->captured});
                }
                return out;
            }
            if (kind == GestureKind::Drag)
            {
                s.phase = Dragging{in.palm_position, pending->captured};
                emit(DragStarted{pending->captured});
                emit(DragUpdated{in.basis.project(in.palm_position - pending->position_down) + in.extra_drag});
            }
            return out;
        }

        if (const auto *drag = std::get_if<Dragging>(&state.phase))
        {
            if (in.pinch == PinchPhase::Up)
            {
                s.phase = resting;
                emit(DragEnded{!in.pinch_cancelled});
                return out;
            }
            s.phase = Dragging{in.palm_position, drag->target};
            emit(DragUpdated{in.basis.project(in.palm_position - drag->last_position) + in.extra_drag});
        }
        return out;
    }

} // namespace palmgazer
