#include "palmgazer/geometry.hpp"

#include <stdexcept>

namespace palmgazer
{
    namespace
    {
        constexpr double kDegenerate = 1e-6;
    }

    Vec3 normalize(Vec3 a)
    {
        const double n = norm(a);
        if (!(n > 0.0) || !std::isfinite(n))
        {
            throw std::invalid_argument("normalize: zero-length or non-finite vector");
        }
        return a / n;
    }

    bool is_finite(Vec3 a) noexcept
    {
        return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
    }

    Orientation Orientation::from_axis_angle(Vec3 axis, double radians)
    {
        const Vec3 n = normalize(axis);
        const double s = std::sin(radians * 0.5);
        return {std::cos(radians * 0.5), n.x * s, n.y * s, n.z * s};
    }

    Orientation Orientation::from_basis(Vec3 xa, Vec3 ya, Vec3 za) noexcept
    {
        // Rotation matrix columns are xa, ya, za; m[row][col].
        const double m00 = xa.x, m01 = ya.x, m02 = za.x;
        const double m10 = xa.y, m11 = ya.y, m12 = za.y;
        const double m20 = xa.z, m21 = ya.z, m22 = za.z;
        const double trace = m00 + m11 + m22;
        Orientation q;
        if (trace > 0.0)
        {
            const double s = std::sqrt(trace + 1.0) * 2.0;
            q = {0.25 * s, (m21 - m12) / s, (m02 - m20) / s, (m10 - m01) / s};
        }
        else if (m00 > m11 && m00 > m22)
        {
            const double s = std::sqrt(1.0 + m00 - m11 - m22) * 2.0;
            q = {(m21 - m12) / s, 0.25 * s, (m01 + m10) / s, (m02 + m20) / s};
        }
        else if (m11 > m22)
        {
            const double s = std::sqrt(1.0 + m11 - m00 - m22) * 2.0;
            q = {(m02 - m20) / s, (m01 + m10) / s, 0.25 * s, (m12 + m21) / s};
        }
        else
        {
            const double s = std::sqrt(1.0 + m22 - m00 - m11) * 2.0;
            q = {(m10 - m01) / s, (m02 + m20) / s, (m12 + m21) / s, 0.25 * s};
        }
        const double n = q.norm();
        return {q.w / n, q.x / n, q.y / n, q.z / n};
    }

    Vec3 Orientation::rotate(Vec3 v) const noexcept
    {
        // v' = v + 2w (q x v) + 2 q x (q x v)
        const Vec3 qv{x, y, z};
        const Vec3 t = cross(qv, v) * 2.0;
        return v + t * w + cross(qv, t);
    }

    Vec3 Orientation::inverse_rotate(Vec3 v) const noexcept
    {
        return conjugate().rotate(v);
    }

    Orientation Orientation::normalized() const
    {
        const double n = norm();
        if (!(n > 0.0))
        {
            throw std::invalid_argument("Orientation::normalized: zero quaternion");
        }
        return {w / n, x / n, y / n, z / n};
    }

    Orientation operator*(const Orientation &a, const Orientation &b) noexcept
    {
        return {
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        };
    }

    std::optional<PanelPoint> ray_panel_intersection(const Ray &ray, const Pose &panel, PanelExtent extent) noexcept
    {
        const Vec3 normal = panel.orientation.z_axis();
        const double denom = dot(ray.direction, normal);
        // Only rays travelling against the front normal can hit the front face.
        if (!(denom < -1e-12))
        {
            return std::nullopt;
        }
        const double t = dot(panel.position - ray.origin, normal) / denom;
        if (t < 0.0)
        {
            return std::nullopt;
        }
        const Vec3 local = panel.orientation.inverse_rotate(ray.at(t) - panel.position);
        const double u = local.x / extent.width + 0.5;
        const double v = local.y / extent.height + 0.5;
        if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
        {
            return std::nullopt;
        }
        return PanelPoint{u, v};
    }

    Vec3 panel_point_to_world(PanelPoint point, const Pose &panel, PanelExtent extent) noexcept
    {
        return panel.to_world({(point.u - 0.5) * extent.width, (point.v - 0.5) * extent.height, 0.0});
    }

    Orientation billboard_toward(Vec3 panel_position, Vec3 head_position, Vec3 up)
    {
        const Vec3 to_head = head_position - panel_position;
        if (norm(to_head) < 1e-12)
        {
            throw std::invalid_argument("billboard_toward: panel coincides with head");
        }
        const Vec3 normal = normalize(to_head);
        Vec3 panel_up = up - normal * dot(up, normal);
        if (norm(panel_up) < kDegenerate)
        {
            const Vec3 fallback{0.0, 0.0, -1.0};
            panel_up = fallback - normal * dot(fallback, normal);
        }
        panel_up = normalize(panel_up);
        const Vec3 right = cross(panel_up, normal);
        return Orientation::from_basis(right, panel_up, normal);
    }

    Vec3 horizontal_away_direction(Vec3 from, Vec3 to, Vec3 fallback) noexcept
    {
        const Vec3 flat{to.x - from.x, 0.0, to.z - from.z};
        const double n = norm(flat);
        if (n >= kDegenerate)
        {
            return flat / n;
        }
        const Vec3 flat_fallback{fallback.x, 0.0, fallback.z};
        const double nf = norm(flat_fallback);
        if (nf >= kDegenerate)
        {
            return flat_fallback / nf;
        }
        return local_forward;
    }

} // namespace palmgazer
