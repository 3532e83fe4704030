#include "palmgazer/reference_frames.hpp"

namespace palmgazer
{
    std::string_view to_string(ReferenceFrame frame) noexcept
    {
        switch (frame)
        {
        case ReferenceFrame::OnHand:
            return "OnHand";
        case ReferenceFrame::AboveHand:
            return "AboveHand";
        case ReferenceFrame::HeadReferenced:
            return "HeadReferenced";
        }
        return "OnHand";
    }

    std::optional<ReferenceFrame> reference_frame_from_string(std::string_view s) noexcept
    {
        for (auto f : {ReferenceFrame::OnHand, ReferenceFrame::AboveHand, ReferenceFrame::HeadReferenced})
        {
            if (to_string(f) == s)
            {
                return f;
            }
        }
        return std::nullopt;
    }

    Pose resolve_ui_pose(ReferenceFrame frame, const Pose &palm, const Pose &head, const PlacementParams &params)
    {
        switch (frame)
        {
        case ReferenceFrame::OnHand:
            return {palm.position + palm.orientation.z_axis() * params.on_hand_offset, palm.orientation};
        case ReferenceFrame::AboveHand:
        {
            const Vec3 away = horizontal_away_direction(head.position, palm.position, head.forward());
            const Vec3 position = palm.position + world_up * params.above_hand_rise + away * params.above_hand_away;
            return {position, billboard_toward(position, head.position)};
        }
        case ReferenceFrame::HeadReferenced:
            break;
        }
        const Vec3 position = head.position + head.forward() * params.head_distance;
        return {position, billboard_toward(position, head.position)};
    }

} // namespace palmgazer
