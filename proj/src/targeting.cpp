#include "palmgazer/targeting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace palmgazer
{
    double distance_to_rect(PanelPoint p, const PanelRect &r) noexcept
    {
        const double du = std::max({r.u_min - p.u, 0.0, p.u - r.u_max});
        const double dv = std::max({r.v_min - p.v, 0.0, p.v - r.v_max});
        return std::hypot(du, dv);
    }

    namespace
    {
        constexpr std::array<std::pair<ElementKind, std::string_view>, 4> kKindNames{{
            {ElementKind::Button, "Button"},
            {ElementKind::ListItem, "ListItem"},
            {ElementKind::GridItem, "GridItem"},
            {ElementKind::Region, "Region"},
        }};
    }

    std::string_view to_string(ElementKind kind) noexcept
    {
        for (const auto &[k, name] : kKindNames)
        {
            if (k == kind)
            {
                return name;
            }
        }
        return "Button";
    }

    std::optional<ElementKind> element_kind_from_string(std::string_view s) noexcept
    {
        for (const auto &[k, name] : kKindNames)
        {
            if (name == s)
            {
                return k;
            }
        }
        return std::nullopt;
    }

    std::optional<std::string> resolve_hover(std::optional<PanelPoint> point, std::span<const Element> elements)
    {
        if (!point)
        {
            return std::nullopt;
        }
        const Element *best = nullptr;
        double best_distance = std::numeric_limits<double>::infinity();
        bool on_exempt = false;
        for (const Element &e : elements)
        {
            if (e.snap_exempt)
            {
                on_exempt = on_exempt || e.rect.contains(*point);
                continue;
            }
            const double d = distance_to_rect(*point, e.rect);
            if (d < best_distance)
            {
                best = &e;
                best_distance = d;
            }
        }
        if (best == nullptr || (best_distance > 0.0 && on_exempt))
        {
            return std::nullopt;
        }
        return best->id;
    }

    std::optional<HoverChange> hover_transition(const std::optional<std::string> &previous,
                                                const std::optional<std::string> &current)
    {
        if (previous == current)
        {
            return std::nullopt;
        }
        return HoverChange{previous, current};
    }

} // namespace palmgazer
