#pragma once

#include "palmgazer/geometry.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace palmgazer
{
    /// Axis-aligned rectangle in normalized panel coordinates.
    struct PanelRect
    {
        double u_min = 0.0;
        double v_min = 0.0;
        double u_max = 0.0;
        double v_max = 0.0;

        bool contains(PanelPoint p) const noexcept
        {
            return p.u >= u_min && p.u <= u_max && p.v >= v_min && p.v <= v_max;
        }
        PanelPoint center() const noexcept { return {(u_min + u_max) * 0.5, (v_min + v_max) * 0.5}; }
        bool degenerate() const noexcept { return !(u_max > u_min && v_max > v_min); }

        friend constexpr bool operator==(const PanelRect &, const PanelRect &) = default;
    };

    /// Euclidean distance from the point to the rectangle (0 inside).
    double distance_to_rect(PanelPoint p, const PanelRect &r) noexcept;

    enum class ElementKind
    {
        Button,
        ListItem,
        GridItem,
        Region,
    };

    std::string_view to_string(ElementKind kind) noexcept;
    std::optional<ElementKind> element_kind_from_string(std::string_view s) noexcept;

    struct Element
    {
        std::string id;
        PanelRect rect;
        ElementKind kind = ElementKind::Button;
        bool snap_exempt = false; // non-interactive: never hovered, and gaze resting on it does not snap
        std::string label;

        friend bool operator==(const Element &, const Element &) = default;
    };

    /// Hovered element for a gaze point on the panel.
    ///
    /// A point inside a selectable element picks it (lowest index wins on
    /// overlap). A point resting on a snap-exempt element and no selectable
    /// one picks nothing. Otherwise the point snaps to the selectable element
    /// with the smallest point-to-rectangle distance, ties going to the lowest
    /// index. Gaze off the panel, or a view without selectable elements,
    /// yields nothing.
    std::optional<std::string> resolve_hover(std::optional<PanelPoint> point, std::span<const Element> elements);

    struct HoverChange
    {
        std::optional<std::string> previous;
        std::optional<std::string> current;
        friend bool operator==(const HoverChange &, const HoverChange &) = default;
    };

    std::optional<HoverChange> hover_transition(const std::optional<std::string> &previous,
                                                const std::optional<std::string> &current);

} // namespace palmgazer
