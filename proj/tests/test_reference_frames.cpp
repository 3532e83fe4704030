#include "palmgazer/reference_frames.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace palmgazer;

namespace
{
    const Pose kHeadAtOrigin{{0, 0, 0}, Orientation::identity()};

    Orientation palm_normal_up()
    {
        // Local +Z (palm normal) onto world +Y.
        return Orientation::from_axis_angle({1, 0, 0}, -std::numbers::pi / 2.0);
    }
} // namespace

TEST(Placement, OnHandOffsetAlongPalmNormal)
{
    const Pose palm{{0.2, 1.0, -0.3}, palm_normal_up()};
    const Pose p = resolve_ui_pose(ReferenceFrame::OnHand, palm, kHeadAtOrigin);
    EXPECT_NEAR(p.position.x, 0.2, 1e-12);
    EXPECT_NEAR(p.position.y, 1.045, 1e-12);
    EXPECT_NEAR(p.position.z, -0.3, 1e-12);
    EXPECT_EQ(p.orientation, palm.orientation);
}

TEST(Placement, AboveHandRiseAndHorizontalAway)
{
    const Pose head{{0, 1.6, 0}, Orientation::identity()};
    const Pose palm{{0.3, 1.0, -0.4}, Orientation::identity()};
    const Pose p = resolve_ui_pose(ReferenceFrame::AboveHand, palm, head);
    EXPECT_NEAR(p.position.x, 0.39, 1e-12);
    EXPECT_NEAR(p.position.y, 1.30, 1e-12);
    EXPECT_NEAR(p.position.z, -0.52, 1e-12);
}

TEST(Placement, HeadReferencedInFrontOfHead)
{
    const Pose p = resolve_ui_pose(ReferenceFrame::HeadReferenced, {}, kHeadAtOrigin);
    EXPECT_NEAR(p.position.x, 0.0, 1e-12);
    EXPECT_NEAR(p.position.y, 0.0, 1e-12);
    EXPECT_NEAR(p.position.z, -0.55, 1e-12);
    const Vec3 n = p.orientation.z_axis();
    EXPECT_NEAR(n.z, 1.0, 1e-12);
}

TEST(Placement, ToggleCycle)
{
    EXPECT_EQ(toggle_reference_frame(ReferenceFrame::OnHand), ReferenceFrame::AboveHand);
    EXPECT_EQ(toggle_reference_frame(ReferenceFrame::AboveHand), ReferenceFrame::HeadReferenced);
    EXPECT_EQ(toggle_reference_frame(ReferenceFrame::HeadReferenced), ReferenceFrame::OnHand);
    for (auto f : {ReferenceFrame::OnHand, ReferenceFrame::AboveHand, ReferenceFrame::HeadReferenced})
    {
        EXPECT_EQ(toggle_reference_frame(toggle_reference_frame(toggle_reference_frame(f))), f);
    }
}

TEST(Placement, NamesRoundTrip)
{
    for (auto f : {ReferenceFrame::OnHand, ReferenceFrame::AboveHand, ReferenceFrame::HeadReferenced})
    {
        EXPECT_EQ(reference_frame_from_string(to_string(f)), f);
    }
    EXPECT_FALSE(reference_frame_from_string("Sideways"));
}

class PlacementFuzz : public ::testing::Test
{
protected:
    std::mt19937_64 rng{17};
    std::uniform_real_distribution<double> pos{-1.0, 1.0};
    std::normal_distribution<double> n;

    Orientation orientation() { return Orientation{n(rng), n(rng), n(rng), n(rng)}.normalized(); }
    Pose head() { return {{pos(rng) * 0.3, 1.6 + pos(rng) * 0.1, pos(rng) * 0.3}, orientation()}; }
    Pose palm() { return {{pos(rng) * 0.5, 1.2 + pos(rng) * 0.3, -0.4 + pos(rng) * 0.2}, orientation()}; }
};

TEST_F(PlacementFuzz, OnHandOffsetIsExact)
{
    for (int i = 0; i < 10000; ++i)
    {
        const Pose hand = palm();
        const Pose p = resolve_ui_pose(ReferenceFrame::OnHand, hand, head());
        const Vec3 expected = hand.orientation.rotate({0, 0, 1}) * 0.045;
        ASSERT_LT(norm(p.position - hand.position - expected), 1e-15);
    }
}

TEST_F(PlacementFuzz, BillboardedFramesFaceTheHead)
{
    for (int i = 0; i < 10000; ++i)
    {
        const Pose h = head();
        const Pose hand = palm();
        for (auto f : {ReferenceFrame::AboveHand, ReferenceFrame::HeadReferenced})
        {
            const Pose p = resolve_ui_pose(f, hand, h);
            const Vec3 n = p.orientation.z_axis();
            const Vec3 to_head = h.position - p.position;
            // Distance from the head to the line through the panel along its normal.
            ASSERT_LT(norm(to_head - n * dot(to_head, n)), 1e-6);
            ASSERT_GT(dot(to_head, n), 0.0);
        }
    }
}

TEST_F(PlacementFuzz, AboveHandIgnoresPalmRotation)
{
    for (int i = 0; i < 2000; ++i)
    {
        const Pose h = head();
        Pose a = palm();
        Pose b = a;
        b.orientation = orientation();
        ASSERT_EQ(resolve_ui_pose(ReferenceFrame::AboveHand, a, h), resolve_ui_pose(ReferenceFrame::AboveHand, b, h));
    }
}

TEST_F(PlacementFuzz, SmallPalmMotionGivesSmallPoseMotion)
{
    const double eps = 1e-5;
    for (int i = 0; i < 2000; ++i)
    {
        const Pose h = head();
        const Pose a = palm();
        Pose b = a;
        b.position += Vec3{pos(rng), pos(rng), pos(rng)} * eps;
        for (auto f : {ReferenceFrame::OnHand, ReferenceFrame::AboveHand, ReferenceFrame::HeadReferenced})
        {
            const Pose pa = resolve_ui_pose(f, a, h);
            const Pose pb = resolve_ui_pose(f, b, h);
            ASSERT_LT(distance(pa.position, pb.position), 10.0 * eps);
            ASSERT_LT(norm(pa.orientation.z_axis() - pb.orientation.z_axis()), 100.0 * eps);
        }
    }
}
