#include "palmgazer/engine.hpp"

#include "palmgazer/navigation.hpp"
#include "palmgazer/targeting.hpp"

#include <stdexcept>

namespace palmgazer
{
    Engine::Engine(Config config)
        : Engine(config, make_default_session(config.initial_app, config.initial_frame, config.apps))
    {
    }

    Engine::Engine(Config config, SessionState initial)
        : m_config(std::move(config)), m_input(m_config.gestures), m_session(std::move(initial))
    {
        m_config.apps.extent = m_config.placement.extent;
        m_view = build_view_model(m_session, m_config.apps);
        m_placement.extent = m_config.placement.extent;
    }

    FrameResult Engine::step(const TrackingFrame &frame)
    {
        if (m_last_t && !(frame.t > *m_last_t))
        {
            throw std::invalid_argument("Engine::step: frame timestamps must strictly increase");
        }
        m_last_t = frame.t;

        const InputSnapshot in = m_input.consume(frame);

        m_placement.pose = resolve_ui_pose(m_session.reference_frame, in.smoothed_palm, in.head, m_config.placement);
        m_placement.extent = m_config.placement.extent;
        m_gaze_point = in.gaze_valid ? ray_panel_intersection(in.gaze, m_placement.pose, m_placement.extent)
                                     : std::nullopt;

        FsmInput fsm_in;
        fsm_in.t = in.t;
        fsm_in.palm = in.palm;
        fsm_in.pinch = in.pinch;
        fsm_in.pinch_cancelled = in.pinch_cancelled;
        fsm_in.hand_lost = in.hand_lost;
        fsm_in.hover = resolve_hover(m_gaze_point, m_view.elements);
        fsm_in.palm_position = in.smoothed_palm.position;
        fsm_in.basis = drag_basis_for(m_placement.pose);
        if (m_config.head_motion_scroll && m_previous_head && std::holds_alternative<Dragging>(m_fsm.phase))
        {
            const double panel_distance = distance(m_placement.pose.position, in.head.position);
            fsm_in.extra_drag = head_motion_delta(*m_previous_head, in.head, panel_distance, fsm_in.basis);
        }
        m_previous_head = in.head;

        FsmStep next = palmgazer::step(m_fsm, fsm_in, m_config.fsm_params());
        m_fsm = std::move(next.state);

        FrameResult result;
        const GazeContext gaze{m_gaze_point, m_fsm.hover};
        for (const UiEvent &event : next.events)
        {
            result.records.push_back({event.t, event.payload});
            RouteResult routed = route_event(m_session, event, gaze, m_config.apps);
            for (AppEvent &app_event : routed.events)
            {
                result.records.push_back({event.t, std::move(app_event)});
            }
            for (std::string &d : routed.diagnostics)
            {
                result.diagnostics.push_back(std::move(d));
            }
        }
        if (!next.events.empty())
        {
            m_view = build_view_model(m_session, m_config.apps);
        }
        return result;
    }

} // namespace palmgazer
