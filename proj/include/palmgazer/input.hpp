#pragma once

#include "palmgazer/geometry.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace palmgazer
{
    struct HandSample
    {
        Pose palm; // +Z of the palm pose is the palm normal
        std::array<double, 4> finger_extension{}; // index, middle, ring, pinky in [0,1]
        double pinch_gap = 0.05;                   // thumb-index distance, meters

        friend bool operator==(const HandSample &, const HandSample &) = default;
    };

    /// One timestamped tracker sample. Invalid gaze/hand carry their last
    /// known values with the flag cleared.
    struct TrackingFrame
    {
        double t = 0.0;
        Pose head;
        Ray gaze;
        bool gaze_valid = true;
        HandSample hand;
        bool hand_valid = true;

        friend bool operator==(const TrackingFrame &, const TrackingFrame &) = default;
    };

    enum class PalmState
    {
        Closed,
        Open,
    };

    enum class PinchPhase
    {
        Up,
        Down,
    };

    enum class GestureKind
    {
        Click,
        Drag,
    };

    struct GestureThresholds
    {
        double palm_open = 0.7;
        double palm_close = 0.3;
        double pinch_down_gap = 0.020;
        double pinch_up_gap = 0.030;
        double smoothing_window = 0.100;
        double drag_min_displacement = 0.015;
        double drag_min_duration = 0.300;
        double tracking_loss_timeout = 0.250;

        friend bool operator==(const GestureThresholds &, const GestureThresholds &) = default;
    };

    struct TimedPosition
    {
        double t = 0.0;
        Vec3 position;
    };

    /// Mean of every sample whose timestamp lies in [t_latest - window, t_latest].
    /// `history` must be non-empty and ascending in time.
    Vec3 smooth_position(std::span<const TimedPosition> history, double window = 0.100);

    PalmState classify_palm(const HandSample &sample, PalmState previous, const GestureThresholds &th = {}) noexcept;

    struct PinchResult
    {
        PinchPhase phase = PinchPhase::Up;
        bool cancelled = false; // forced release because tracking dropped mid-pinch
    };

    PinchResult detect_pinch(const HandSample &sample, bool hand_valid, PinchPhase previous,
                             const GestureThresholds &th = {}) noexcept;

    GestureKind classify_pinch_gesture(double duration, double palm_displacement,
                                       const GestureThresholds &th = {}) noexcept;

    /// Everything the interaction state machine needs from one frame.
    struct InputSnapshot
    {
        double t = 0.0;
        PalmState palm = PalmState::Closed;
        PinchPhase pinch = PinchPhase::Up;
        bool pinch_cancelled = false;
        bool hand_valid = false;
        bool hand_lost = true; // hand invalid for longer than the loss timeout (or never seen)
        Pose smoothed_palm;
        Pose head;
        Ray gaze;
        bool gaze_valid = false;
    };

    /// Per-session accumulator: keeps the smoothing window and the
    /// hysteresis state between frames. Not thread-safe; move it between
    /// threads if needed but never share it.
    class InputAccumulator
    {
    public:
        explicit InputAccumulator(GestureThresholds thresholds = {}) : m_th(thresholds) {}

        InputSnapshot consume(const TrackingFrame &frame);

        PalmState palm() const noexcept { return m_palm; }
        PinchPhase pinch() const noexcept { return m_pinch; }

    private:
        GestureThresholds m_th;
        std::vector<TimedPosition> m_history; // valid-hand samples inside the window
        PalmState m_palm = PalmState::Closed;
        PinchPhase m_pinch = PinchPhase::Up;
        std::optional<double> m_last_valid_hand_t;
        Pose m_last_palm;
    };

} // namespace palmgazer
