#pragma once

#include <cmath>
#include <optional>

// World frame: right-handed, +Y up, meters; -Z is head-forward at identity.
// Panel local frame: +Z front normal, +X right, +Y up.

namespace palmgazer
{
    struct Vec3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        friend constexpr Vec3 operator+(Vec3 a, Vec3 b) noexcept { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
        friend constexpr Vec3 operator-(Vec3 a, Vec3 b) noexcept { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
        friend constexpr Vec3 operator-(Vec3 a) noexcept { return {-a.x, -a.y, -a.z}; }
        friend constexpr Vec3 operator*(Vec3 a, double s) noexcept { return {a.x * s, a.y * s, a.z * s}; }
        friend constexpr Vec3 operator*(double s, Vec3 a) noexcept { return a * s; }
        friend constexpr Vec3 operator/(Vec3 a, double s) noexcept { return {a.x / s, a.y / s, a.z / s}; }
        constexpr Vec3 &operator+=(Vec3 b) noexcept
        {
            x += b.x;
            y += b.y;
            z += b.z;
            return *this;
        }
        friend constexpr bool operator==(Vec3, Vec3) = default;
    };

    struct Vec2
    {
        double x = 0.0;
        double y = 0.0;

        friend constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
        friend constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
        friend constexpr Vec2 operator*(Vec2 a, double s) noexcept { return {a.x * s, a.y * s}; }
        friend constexpr Vec2 operator*(double s, Vec2 a) noexcept { return a * s; }
        friend constexpr bool operator==(Vec2, Vec2) = default;
    };

    constexpr double dot(Vec3 a, Vec3 b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }
    constexpr Vec3 cross(Vec3 a, Vec3 b) noexcept
    {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }
    inline double norm(Vec3 a) noexcept { return std::sqrt(dot(a, a)); }
    inline double distance(Vec3 a, Vec3 b) noexcept { return norm(a - b); }

    // Throws std::invalid_argument on a zero-length vector.
    Vec3 normalize(Vec3 a);

    bool is_finite(Vec3 a) noexcept;

    inline constexpr Vec3 world_up{0.0, 1.0, 0.0};
    inline constexpr Vec3 local_forward{0.0, 0.0, -1.0};

    /// Unit quaternion (w, x, y, z).
    struct Orientation
    {
        double w = 1.0;
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        static Orientation identity() noexcept { return {}; }
        static Orientation from_axis_angle(Vec3 axis, double radians);
        /// Builds the rotation whose columns are the given orthonormal right-handed basis.
        static Orientation from_basis(Vec3 x_axis, Vec3 y_axis, Vec3 z_axis) noexcept;

        Vec3 rotate(Vec3 v) const noexcept;
        Vec3 inverse_rotate(Vec3 v) const noexcept;
        Orientation conjugate() const noexcept { return {w, -x, -y, -z}; }
        double norm() const noexcept { return std::sqrt(w * w + x * x + y * y + z * z); }
        Orientation normalized() const;

        Vec3 x_axis() const noexcept { return rotate({1.0, 0.0, 0.0}); }
        Vec3 y_axis() const noexcept { return rotate({0.0, 1.0, 0.0}); }
        Vec3 z_axis() const noexcept { return rotate({0.0, 0.0, 1.0}); }

        friend Orientation operator*(const Orientation &a, const Orientation &b) noexcept;
        friend constexpr bool operator==(const Orientation &, const Orientation &) = default;
    };

    struct Pose
    {
        Vec3 position;
        Orientation orientation;

        Vec3 forward() const noexcept { return orientation.rotate(local_forward); }
        Vec3 to_world(Vec3 local) const noexcept { return position + orientation.rotate(local); }
        friend constexpr bool operator==(const Pose &, const Pose &) = default;
    };

    struct Ray
    {
        Vec3 origin;
        Vec3 direction{0.0, 0.0, -1.0};

        Vec3 at(double t) const noexcept { return origin + direction * t; }
        friend constexpr bool operator==(const Ray &, const Ray &) = default;
    };

    struct PanelExtent
    {
        double width = 0.30;
        double height = 0.22;
        friend constexpr bool operator==(const PanelExtent &, const PanelExtent &) = default;
    };

    /// Normalized panel coordinate: u left to right, v bottom to top, both in [0,1].
    struct PanelPoint
    {
        double u = 0.5;
        double v = 0.5;
        friend constexpr bool operator==(const PanelPoint &, const PanelPoint &) = default;
    };

    /// Front-face hit of the ray with the panel rectangle. Back-face hits,
    /// parallel rays and hits behind the origin yield nothing.
    std::optional<PanelPoint> ray_panel_intersection(const Ray &ray, const Pose &panel, PanelExtent extent) noexcept;

    /// World position of a panel point (inverse of the projection above).
    Vec3 panel_point_to_world(PanelPoint point, const Pose &panel, PanelExtent extent) noexcept;

    /// Orientation whose local +Z points from the panel toward the head.
    /// Local up is world_up projected off the normal; when that projection
    /// vanishes, local up falls back to world -Z.
    /// Throws std::invalid_argument when panel and head coincide.
    Orientation billboard_toward(Vec3 panel_position, Vec3 head_position, Vec3 up = world_up);

    /// Unit horizontal direction from `from` toward `to`. Falls back to the
    /// horizontal part of `fallback` (then world -Z) when the horizontal
    /// separation is below 1e-6.
    Vec3 horizontal_away_direction(Vec3 from, Vec3 to, Vec3 fallback = local_forward) noexcept;

} // namespace palmgazer
