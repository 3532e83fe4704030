#include "palmgazer/navigation.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace palmgazer;

namespace
{
    const MapParams kMap{};

    // Independent panel->content transform: visible window lower-left corner
    // plus (u, v) times its size.
    Vec2 content_under(const MapView &v, PanelPoint p)
    {
        const double w = v.scale;
        const double h = v.scale * 0.22 / 0.30;
        return {v.center.x - w / 2 + p.u * w, v.center.y - h / 2 + p.v * h};
    }

    // Nearest whole step of 5 cm; exact halves round up, as floor(x + 0.5) does.
    int layer_oracle(int start, int count, double d)
    {
        const double steps_exact = d / 0.05;
        int steps = static_cast<int>(std::lround(steps_exact));
        if (std::abs(steps_exact - std::trunc(steps_exact)) == 0.5 && steps_exact < 0)
        {
            steps += 1; // lround rounds -0.5 to -1; floor(x + 0.5) gives 0
        }
        return std::min(std::max(start + steps, 0), count - 1);
    }
} // namespace

TEST(Scroll, DynamicAddsStaticSubtracts)
{
    ScrollState s{{0, 0}, {-1, -1}, {1, 1}};
    EXPECT_EQ(scroll_update(PeepholeMode::Dynamic, s, {0.10, 0}).offset, (Vec2{0.10, 0}));
    EXPECT_EQ(scroll_update(PeepholeMode::Static, s, {0.10, 0}).offset, (Vec2{-0.10, 0}));
    EXPECT_EQ(scroll_update(PeepholeMode::Dynamic, s, {0, 0}), s);
}

TEST(Scroll, ClampsToBounds)
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(-0.2, 0.2);
    ScrollState s{{0, 0}, {-0.3, -0.1}, {0.4, 0.1}};
    for (int i = 0; i < 10000; ++i)
    {
        s = scroll_update(i % 3 ? PeepholeMode::Dynamic : PeepholeMode::Static, s, {d(rng), d(rng)});
        ASSERT_GE(s.offset.x, -0.3);
        ASSERT_LE(s.offset.x, 0.4);
        ASSERT_GE(s.offset.y, -0.1);
        ASSERT_LE(s.offset.y, 0.1);
    }
}

TEST(Peephole, ModeFollowsFrame)
{
    EXPECT_EQ(peephole_mode_for(ReferenceFrame::OnHand), PeepholeMode::Dynamic);
    EXPECT_EQ(peephole_mode_for(ReferenceFrame::AboveHand), PeepholeMode::Dynamic);
    EXPECT_EQ(peephole_mode_for(ReferenceFrame::HeadReferenced), PeepholeMode::Static);
}

TEST(Depth, Examples)
{
    EXPECT_EQ(depth_layer_update({0, 3, 0, 0}, 0.10).layer, 2);
    EXPECT_EQ(depth_layer_update({0, 3, 0, 0}, 0.024).layer, 0);
    EXPECT_EQ(depth_layer_update({1, 3, 1, 0}, -0.05).layer, 0);
    EXPECT_EQ(depth_layer_update({2, 3, 2, 0}, -0.10).layer, 0);
}

TEST(Depth, RoundingMatchesOracle)
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> d(-0.2, 0.2);
    std::uniform_int_distribution<int> start(0, 2);
    for (int i = 0; i < 1000; ++i)
    {
        const int s = start(rng);
        const double x = d(rng);
        ASSERT_EQ(depth_target_layer(s, 3, x), layer_oracle(s, 3, x)) << x;
    }
}

TEST(Depth, LayerStaysInBounds)
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int i = 0; i < 10000; ++i)
    {
        const int layer = depth_target_layer(i % 3, 3, d(rng));
        ASSERT_GE(layer, 0);
        ASSERT_LE(layer, 2);
    }
}

TEST(Map, ForwardTenCentimetersQuartersScale)
{
    const MapView v = map_pan_zoom_update({{0.5, 0.5}, 1.0}, {0, 0, 0.10}, std::nullopt, PeepholeMode::Dynamic);
    EXPECT_NEAR(v.scale, 0.25, 1e-15);
}

TEST(Map, ZoomInKeepsGazePivotContentFixed)
{
    const MapView before{{0.5, 0.5}, 1.0};
    const PanelPoint pivot{0.75, 0.5};
    const MapView after = map_pan_zoom_update(before, {0, 0, 0.05}, pivot, PeepholeMode::Dynamic);
    EXPECT_NEAR(after.scale, 0.5, 1e-15);
    const Vec2 a = content_under(before, pivot);
    const Vec2 b = content_under(after, pivot);
    EXPECT_NEAR(a.x, b.x, 1e-9);
    EXPECT_NEAR(a.y, b.y, 1e-9);
}

TEST(Map, ZoomOutPivotsOnCenter)
{
    const MapView before{{0.4, 0.45}, 0.25};
    const MapView after =
        map_pan_zoom_update(before, {0, 0, -0.05}, PanelPoint{0.9, 0.9}, PeepholeMode::Dynamic);
    EXPECT_NEAR(after.scale, 0.5, 1e-15);
    EXPECT_NEAR(after.center.x, 0.4, 1e-12);
    EXPECT_NEAR(after.center.y, 0.45, 1e-12);
}

TEST(Map, LateralPanGain)
{
    const MapView v = map_pan_zoom_update({{0.5, 0.5}, 0.5}, {0.05, 0, 0}, std::nullopt, PeepholeMode::Dynamic);
    EXPECT_NEAR(v.center.x, 0.5 + 0.05 * (0.5 / 0.30), 1e-12);
    const MapView s = map_pan_zoom_update({{0.5, 0.5}, 0.5}, {0.05, 0, 0}, std::nullopt, PeepholeMode::Static);
    EXPECT_NEAR(s.center.x, 0.5 - 0.05 * (0.5 / 0.30), 1e-12);
}

TEST(Map, DiagonalEqualsPanThenZoom)
{
    const MapView start{{0.5, 0.5}, 0.5};
    const PanelPoint pivot{0.3, 0.6};
    const MapView both = map_pan_zoom_update(start, {0.05, 0, 0.05}, pivot, PeepholeMode::Dynamic);
    const MapView pan = map_pan_zoom_update(start, {0.05, 0, 0}, pivot, PeepholeMode::Dynamic);
    const MapView composed = map_pan_zoom_update(pan, {0, 0, 0.05}, pivot, PeepholeMode::Dynamic);
    EXPECT_NEAR(both.center.x, composed.center.x, 1e-12);
    EXPECT_NEAR(both.center.y, composed.center.y, 1e-12);
    EXPECT_NEAR(both.scale, composed.scale, 1e-15);
}

TEST(Map, RoundTripAboutCenter)
{
    const MapView start{{0.4, 0.55}, 0.6};
    const MapView in = map_pan_zoom_update(start, {0, 0, 0.07}, std::nullopt, PeepholeMode::Dynamic);
    const MapView out = map_pan_zoom_update(in, {0, 0, -0.07}, std::nullopt, PeepholeMode::Dynamic);
    EXPECT_NEAR(out.scale, start.scale, 1e-9);
    EXPECT_NEAR(out.center.x, start.center.x, 1e-9);
    EXPECT_NEAR(out.center.y, start.center.y, 1e-9);
}

TEST(Map, RoundTripAboutAnyPivot)
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i)
    {
        const MapView start{{u(rng), u(rng)}, 0.02 + 0.9 * u(rng)};
        const PanelPoint pivot{u(rng), u(rng)};
        const double factor = std::exp2(-(0.2 * u(rng) - 0.1) / 0.05);
        const MapView there = zoom_map_about(start, start.scale * factor, pivot, kMap);
        const MapView back = zoom_map_about(there, start.scale, pivot, kMap);
        ASSERT_NEAR(back.scale, start.scale, 1e-9);
        ASSERT_NEAR(back.center.x, start.center.x, 1e-9);
        ASSERT_NEAR(back.center.y, start.center.y, 1e-9);
        const Vec2 a = content_under(start, pivot);
        const Vec2 b = content_under(there, pivot);
        ASSERT_NEAR(a.x, b.x, 1e-9);
        ASSERT_NEAR(a.y, b.y, 1e-9);
    }
}

TEST(Map, FuzzedDragsStayInBounds)
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> d(-0.08, 0.08);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    MapView v{{0.5, 0.5}, 1.0};
    for (int i = 0; i < 20000; ++i)
    {
        v = map_pan_zoom_update(v, {d(rng), d(rng), d(rng)}, PanelPoint{u(rng), u(rng)},
                                i % 2 ? PeepholeMode::Dynamic : PeepholeMode::Static);
        ASSERT_GE(v.scale, kMap.min_scale);
        ASSERT_LE(v.scale, kMap.max_scale);
        const Vec2 size = map_visible_size(v, kMap);
        ASSERT_GE(v.center.x - size.x / 2, -1e-12);
        ASSERT_LE(v.center.x + size.x / 2, 1 + 1e-12);
        ASSERT_GE(v.center.y - size.y / 2, -1e-12);
        ASSERT_LE(v.center.y + size.y / 2, 1 + 1e-12);
    }
}

TEST(Map, PanelContentTransformsAreInverse)
{
    const MapView v{{0.3, 0.7}, 0.2};
    const PanelPoint p{0.13, 0.77};
    const PanelPoint q = map_content_to_panel(v, map_panel_to_content(v, p, kMap), kMap);
    EXPECT_NEAR(p.u, q.u, 1e-12);
    EXPECT_NEAR(p.v, q.v, 1e-12);
    const Vec2 c = map_panel_to_content(v, p, kMap);
    const Vec2 o = content_under(v, p);
    EXPECT_NEAR(c.x, o.x, 1e-12);
    EXPECT_NEAR(c.y, o.y, 1e-12);
}

TEST(DragBasisTest, ProjectsOntoPanelAxes)
{
    const Pose panel{{0, 1, -0.5}, Orientation::from_axis_angle({0, 1, 0}, 0.3)};
    const DragBasis b = drag_basis_for(panel);
    const Vec3 world = panel.orientation.rotate({0.01, 0.02, -0.03});
    const DragDelta d = b.project(world);
    EXPECT_NEAR(d.right, 0.01, 1e-15);
    EXPECT_NEAR(d.up, 0.02, 1e-15);
    EXPECT_NEAR(d.forward, 0.03, 1e-15);
}

TEST(HeadMotion, YawSweepsRight)
{
    const Pose a{{0, 1.6, 0}, Orientation::identity()};
    const Pose b{{0, 1.6, 0}, Orientation::from_axis_angle({0, 1, 0}, -0.01)}; // turn right
    const DragDelta d = head_motion_delta(a, b, 0.5, drag_basis_for({{0, 1.6, -0.5}, Orientation::identity()}));
    EXPECT_GT(d.right, 0.0);
    EXPECT_NEAR(d.right, 0.5 * std::sin(0.01), 1e-9);
    EXPECT_EQ(d.forward, 0.0);
}
