#pragma once

#include "palmgazer/geometry.hpp"
#include "palmgazer/reference_frames.hpp"

#include <optional>
#include <string_view>

namespace palmgazer
{
    enum class PeepholeMode
    {
        Static,  // panel fixed, content follows the hand
        Dynamic, // panel follows the hand, content stays put in world space
    };

    std::string_view to_string(PeepholeMode mode) noexcept;

    constexpr PeepholeMode peephole_mode_for(ReferenceFrame frame) noexcept
    {
        return is_hand_attached(frame) ? PeepholeMode::Dynamic : PeepholeMode::Static;
    }

    /// Hand motion in the panel's local frame: `right`/`up` in the panel plane,
    /// `forward` into the panel (against its front normal, away from the user).
    struct DragDelta
    {
        double right = 0.0;
        double up = 0.0;
        double forward = 0.0;

        friend constexpr DragDelta operator+(DragDelta a, DragDelta b) noexcept
        {
            return {a.right + b.right, a.up + b.up, a.forward + b.forward};
        }
        DragDelta &operator+=(DragDelta b) noexcept { return *this = *this + b; }
        friend constexpr bool operator==(DragDelta, DragDelta) = default;
    };

    struct DragBasis
    {
        Vec3 right{1.0, 0.0, 0.0};
        Vec3 up{0.0, 1.0, 0.0};
        Vec3 forward{0.0, 0.0, -1.0};

        DragDelta project(Vec3 world_delta) const noexcept
        {
            return {dot(world_delta, right), dot(world_delta, up), dot(world_delta, forward)};
        }
    };

    /// Local axes of the panel: +X, +Y and -Z.
    DragBasis drag_basis_for(const Pose &panel) noexcept;

    /// Equivalent hand delta for a change of view direction while pinching:
    /// the gaze sweep at the panel distance, gain 1:1.
    DragDelta head_motion_delta(const Pose &previous_head, const Pose &current_head, double panel_distance,
                                const DragBasis &basis) noexcept;

    struct ScrollState
    {
        Vec2 offset; // content coordinate under the viewport center, meters
        Vec2 min;
        Vec2 max;

        friend constexpr bool operator==(const ScrollState &, const ScrollState &) = default;
    };

    ScrollState clamp_scroll(ScrollState s) noexcept;

    /// Static: content follows the hand (offset -= delta). Dynamic: the
    /// window moves over fixed content (offset += delta). Result is clamped.
    ScrollState scroll_update(PeepholeMode mode, ScrollState s, Vec2 hand_delta, double gain = 1.0) noexcept;

    struct DepthNavState
    {
        int layer = 0;
        int layer_count = 1;
        int start_layer = 0;  // layer when the current drag began
        double travel = 0.0;  // forward displacement since the drag began, meters

        friend constexpr bool operator==(const DepthNavState &, const DepthNavState &) = default;
    };

    /// clamp(start + floor(displacement / spacing + 0.5), 0, layer_count - 1)
    int depth_target_layer(int start_layer, int layer_count, double displacement, double layer_spacing = 0.05) noexcept;

    /// Sets `travel` and moves `layer` to the target for that displacement.
    DepthNavState depth_layer_update(DepthNavState d, double hand_forward_displacement,
                                     double layer_spacing = 0.05) noexcept;

    /// Map content is the unit square; `scale` is content units per panel width.
    struct MapView
    {
        Vec2 center{0.5, 0.5};
        double scale = 1.0;

        friend constexpr bool operator==(const MapView &, const MapView &) = default;
    };

    struct MapParams
    {
        PanelExtent extent{};
        double pan_gain = 1.0;
        double zoom_distance_per_doubling = 0.05;
        double min_scale = 0.01;
        double max_scale = 1.0;
    };

    /// Visible content size (width, height) in content units.
    Vec2 map_visible_size(const MapView &view, const MapParams &params) noexcept;
    Vec2 map_panel_to_content(const MapView &view, PanelPoint p, const MapParams &params) noexcept;
    PanelPoint map_content_to_panel(const MapView &view, Vec2 c, const MapParams &params) noexcept;

    /// Scale into bounds, then keep the visible rectangle inside the content.
    MapView clamp_map_view(MapView view, const MapParams &params) noexcept;

    /// Sets the scale while keeping the content under `pivot` fixed. No clamping.
    MapView zoom_map_about(const MapView &view, double new_scale, PanelPoint pivot, const MapParams &params) noexcept;

    /// Per-frame pan then zoom. Pan shifts the center by the in-plane delta in
    /// content units (sign per peephole mode). Forward motion zooms in about
    /// the gaze pivot (panel center when absent); backward motion zooms out
    /// about the panel center. One doubling per `zoom_distance_per_doubling`.
    MapView map_pan_zoom_update(const MapView &view, DragDelta hand_delta, std::optional<PanelPoint> gaze_pivot,
                                PeepholeMode mode, const MapParams &params = {});

} // namespace palmgazer
