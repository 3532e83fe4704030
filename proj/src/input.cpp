#include "palmgazer/input.hpp"

#include <algorithm>
#include <stdexcept>

namespace palmgazer
{
    namespace
    {
        // Absorbs rounding in t_latest - window so frames that sit exactly on
        // the window edge (e.g. 9 periods at 90 Hz vs 100 ms) are kept.
        constexpr double kWindowSlack = 1e-9;
    }

    Vec3 smooth_position(std::span<const TimedPosition> history, double window)
    {
        if (history.empty())
        {
            throw std::invalid_argument("smooth_position: empty history");
        }
        const double cutoff = history.back().t - window - kWindowSlack;
        Vec3 sum;
        std::size_t count = 0;
        for (auto it = history.rbegin(); it != history.rend() && it->t >= cutoff; ++it)
        {
            sum += it->position;
            ++count;
        }
        return sum / static_cast<double>(count);
    }

    PalmState classify_palm(const HandSample &sample, PalmState previous, const GestureThresholds &th) noexcept
    {
        const auto [lo, hi] = std::minmax_element(sample.finger_extension.begin(), sample.finger_extension.end());
        if (*lo >= th.palm_open)
        {
            return PalmState::Open;
        }
        if (*hi <= th.palm_close)
        {
            return PalmState::Closed;
        }
        return previous;
    }

    PinchResult detect_pinch(const HandSample &sample, bool hand_valid, PinchPhase previous,
                             const GestureThresholds &th) noexcept
    {
        if (!hand_valid)
        {
            return {PinchPhase::Up, previous == PinchPhase::Down};
        }
        if (sample.pinch_gap < th.pinch_down_gap)
        {
            return {PinchPhase::Down, false};
        }
        if (sample.pinch_gap > th.pinch_up_gap)
        {
            return {PinchPhase::Up, false};
        }
        return {previous, false};
    }

    GestureKind classify_pinch_gesture(double duration, double palm_displacement, const GestureThresholds &th) noexcept
    {
        if (palm_displacement >= th.drag_min_displacement || duration >= th.drag_min_duration)
        {
            return GestureKind::Drag;
        }
        return GestureKind::Click;
    }

    InputSnapshot InputAccumulator::consume(const TrackingFrame &frame)
    {
        InputSnapshot snap;
        snap.t = frame.t;
        snap.head = frame.head;
        snap.gaze = frame.gaze;
        snap.gaze_valid = frame.gaze_valid;
        snap.hand_valid = frame.hand_valid;

        if (frame.hand_valid)
        {
            m_history.push_back({frame.t, frame.hand.palm.position});
            const double cutoff = frame.t - m_th.smoothing_window - kWindowSlack;
            std::erase_if(m_history, [cutoff](const TimedPosition &p) { return p.t < cutoff; });
            m_palm = classify_palm(frame.hand, m_palm, m_th);
            m_last_valid_hand_t = frame.t;
            m_last_palm = frame.hand.palm;
        }

        const PinchResult pinch = detect_pinch(frame.hand, frame.hand_valid, m_pinch, m_th);
        m_pinch = pinch.phase;

        snap.palm = m_palm;
        snap.pinch = m_pinch;
        snap.pinch_cancelled = pinch.cancelled;
        snap.hand_lost = !frame.hand_valid &&
                         (!m_last_valid_hand_t || frame.t - *m_last_valid_hand_t > m_th.tracking_loss_timeout);

        if (!m_history.empty())
        {
            snap.smoothed_palm = {smooth_position(m_history, m_th.smoothing_window), m_last_palm.orientation};
        }
        else
        {
            snap.smoothed_palm = frame.hand.palm;
        }
        return snap;
    }

} // namespace palmgazer
