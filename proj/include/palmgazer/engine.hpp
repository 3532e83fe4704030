#pragma once

#include "palmgazer/apps.hpp"
#include "palmgazer/config.hpp"
#include "palmgazer/event_log.hpp"
#include "palmgazer/fsm.hpp"
#include "palmgazer/input.hpp"
#include "palmgazer/reference_frames.hpp"

#include <optional>
#include <string>
#include <vector>

namespace palmgazer
{
    struct FrameResult
    {
        EventLog records;
        std::vector<std::string> diagnostics;
    };

    /// One interaction session: tracking frames in, log records out.
    ///
    /// Per frame: smooth and classify the hand, place the panel under the
    /// active reference frame, project the gaze onto it, resolve the hover
    /// against the current view, advance the state machine, then route every
    /// resulting event to the applications.
    ///
    /// Single-threaded; copyable, so callers may fork a session to look ahead.
    class Engine
    {
    public:
        explicit Engine(Config config = {});
        Engine(Config config, SessionState initial);

        /// Throws std::invalid_argument when `frame.t` does not increase.
        FrameResult step(const TrackingFrame &frame);

        const Config &config() const noexcept { return m_config; }
        const InteractionState &interaction() const noexcept { return m_fsm; }
        const SessionState &session() const noexcept { return m_session; }
        const AppViewModel &view_model() const noexcept { return m_view; }
        const UiPlacement &placement() const noexcept { return m_placement; }
        const std::optional<PanelPoint> &gaze_point() const noexcept { return m_gaze_point; }
        const std::optional<double> &last_t() const noexcept { return m_last_t; }

    private:
        Config m_config;
        InputAccumulator m_input;
        InteractionState m_fsm;
        SessionState m_session;
        AppViewModel m_view;
        UiPlacement m_placement;
        std::optional<PanelPoint> m_gaze_point;
        std::optional<Pose> m_previous_head;
        std::optional<double> m_last_t;
    };

} // namespace palmgazer
