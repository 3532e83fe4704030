#include "palmgazer/navigation.hpp"

#include <algorithm>
#include <cmath>

namespace palmgazer
{
    std::string_view to_string(PeepholeMode mode) noexcept
    {
        return mode == PeepholeMode::Static ? "Static" : "Dynamic";
    }

    DragBasis drag_basis_for(const Pose &panel) noexcept
    {
        return {panel.orientation.x_axis(), panel.orientation.y_axis(), -panel.orientation.z_axis()};
    }

    DragDelta head_motion_delta(const Pose &previous_head, const Pose &current_head, double panel_distance,
                                const DragBasis &basis) noexcept
    {
        const Vec3 sweep = (current_head.forward() - previous_head.forward()) * panel_distance;
        return {dot(sweep, basis.right), dot(sweep, basis.up), 0.0};
    }

    ScrollState clamp_scroll(ScrollState s) noexcept
    {
        s.offset.x = std::clamp(s.offset.x, s.min.x, std::max(s.min.x, s.max.x));
        s.offset.y = std::clamp(s.offset.y, s.min.y, std::max(s.min.y, s.max.y));
        return s;
    }

    ScrollState scroll_update(PeepholeMode mode, ScrollState s, Vec2 hand_delta, double gain) noexcept
    {
        const double sign = mode == PeepholeMode::Dynamic ? 1.0 : -1.0;
        s.offset = s.offset + hand_delta * (sign * gain);
        return clamp_scroll(s);
    }

    int depth_target_layer(int start_layer, int layer_count, double displacement, double layer_spacing) noexcept
    {
        const double steps = std::floor(displacement / layer_spacing + 0.5);
        const double target = static_cast<double>(start_layer) + steps;
        const double top = static_cast<double>(std::max(layer_count - 1, 0));
        return static_cast<int>(std::clamp(target, 0.0, top));
    }

    DepthNavState depth_layer_update(DepthNavState d, double hand_forward_displacement, double layer_spacing) noexcept
    {
        d.travel = hand_forward_displacement;
        d.layer = depth_target_layer(d.start_layer, d.layer_count, hand_forward_displacement, layer_spacing);
        return d;
    }

    Vec2 map_visible_size(const MapView &view, const MapParams &params) noexcept
    {
        return {view.scale, view.scale * params.extent.height / params.extent.width};
    }

    Vec2 map_panel_to_content(const MapView &view, PanelPoint p, const MapParams &params) noexcept
    {
        const Vec2 size = map_visible_size(view, params);
        return {view.center.x + (p.u - 0.5) * size.x, view.center.y + (p.v - 0.5) * size.y};
    }

    PanelPoint map_content_to_panel(const MapView &view, Vec2 c, const MapParams &params) noexcept
    {
        const Vec2 size = map_visible_size(view, params);
        return {0.5 + (c.x - view.center.x) / size.x, 0.5 + (c.y - view.center.y) / size.y};
    }

    MapView clamp_map_view(MapView view, const MapParams &params) noexcept
    {
        view.scale = std::clamp(view.scale, params.min_scale, params.max_scale);
        const Vec2 size = map_visible_size(view, params);
        const auto clamp_axis = [](double c, double extent) {
            return extent >= 1.0 ? 0.5 : std::clamp(c, extent * 0.5, 1.0 - extent * 0.5);
        };
        view.center = {clamp_axis(view.center.x, size.x), clamp_axis(view.center.y, size.y)};
        return view;
    }

    MapView zoom_map_about(const MapView &view, double new_scale, PanelPoint pivot, const MapParams &params) noexcept
    {
        const Vec2 anchor = map_panel_to_content(view, pivot, params);
        MapView out{view.center, new_scale};
        const Vec2 size = map_visible_size(out, params);
        out.center = {anchor.x - (pivot.u - 0.5) * size.x, anchor.y - (pivot.v - 0.5) * size.y};
        return out;
    }

    MapView map_pan_zoom_update(const MapView &view, DragDelta hand_delta, std::optional<PanelPoint> gaze_pivot,
                                PeepholeMode mode, const MapParams &params)
    {
        MapView out = view;

        const double sign = mode == PeepholeMode::Dynamic ? 1.0 : -1.0;
        const double content_per_meter = params.pan_gain * out.scale / params.extent.width;
        out.center = out.center + Vec2{hand_delta.right, hand_delta.up} * (sign * content_per_meter);

        if (hand_delta.forward != 0.0)
        {
            const double factor = std::exp2(-hand_delta.forward / params.zoom_distance_per_doubling);
            const double target = std::clamp(out.scale * factor, params.min_scale, params.max_scale);
            const PanelPoint center_pivot{0.5, 0.5};
            const PanelPoint pivot = hand_delta.forward > 0.0 ? gaze_pivot.value_or(center_pivot) : center_pivot;
            out = zoom_map_about(out, target, pivot, params);
        }
        return clamp_map_view(out, params);
    }

} // namespace palmgazer
