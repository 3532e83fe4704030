#pragma once

#include "palmgazer/geometry.hpp"

#include <optional>
#include <string_view>

namespace palmgazer
{
    enum class ReferenceFrame
    {
        OnHand,
        AboveHand,
        HeadReferenced,
    };

    std::string_view to_string(ReferenceFrame frame) noexcept;
    std::optional<ReferenceFrame> reference_frame_from_string(std::string_view s) noexcept;

    /// OnHand -> AboveHand -> HeadReferenced -> OnHand.
    constexpr ReferenceFrame toggle_reference_frame(ReferenceFrame current) noexcept
    {
        switch (current)
        {
        case ReferenceFrame::OnHand:
            return ReferenceFrame::AboveHand;
        case ReferenceFrame::AboveHand:
            return ReferenceFrame::HeadReferenced;
        case ReferenceFrame::HeadReferenced:
            break;
        }
        return ReferenceFrame::OnHand;
    }

    constexpr bool is_hand_attached(ReferenceFrame frame) noexcept
    {
        return frame != ReferenceFrame::HeadReferenced;
    }

    struct PlacementParams
    {
        double on_hand_offset = 0.045;  // along the palm normal
        double above_hand_rise = 0.30;  // world up
        double above_hand_away = 0.15;  // horizontally away from the head
        double head_distance = 0.55;    // along head forward
        PanelExtent extent{};

        friend bool operator==(const PlacementParams &, const PlacementParams &) = default;
    };

    struct UiPlacement
    {
        Pose pose;
        PanelExtent extent{};
    };

    /// World pose of the menu panel. `palm` is the smoothed palm pose.
    Pose resolve_ui_pose(ReferenceFrame frame, const Pose &palm, const Pose &head, const PlacementParams &params = {});

} // namespace palmgazer
