#include "palmgazer/apps.hpp"
#include "palmgazer/engine.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace palmgazer;

namespace
{
    UiEvent selected(std::string id) { return {0.0, Selected{std::move(id)}}; }
    UiEvent drag(DragDelta d) { return {0.0, DragUpdated{d}}; }

    const Element *find(const std::vector<Element> &els, const std::string &id)
    {
        const auto it = std::find_if(els.begin(), els.end(), [&](const Element &e) { return e.id == id; });
        return it == els.end() ? nullptr : &*it;
    }

    GazeContext gaze_on(const std::vector<Element> &els, const std::string &id)
    {
        const Element *e = find(els, id);
        EXPECT_NE(e, nullptr) << id;
        const PanelPoint c{(e->rect.u_min + e->rect.u_max) / 2, (e->rect.v_min + e->rect.v_max) / 2};
        return {c, id};
    }

    RouteResult route(SessionState &s, const UiEvent &e, const GazeContext &g = {}, const AppParams &p = {})
    {
        return route_event(s, e, g, p);
    }

    void drag_sequence(SessionState &s, const std::vector<DragDelta> &deltas, const GazeContext &g = {},
                       const AppParams &p = {}, std::optional<std::string> target = std::nullopt)
    {
        route(s, {0.0, DragStarted{std::move(target)}}, g, p);
        for (const auto &d : deltas)
        {
            route(s, drag(d), g, p);
        }
        route(s, {0.0, DragEnded{true}}, g, p);
    }

    std::vector<std::string> notification_ids(const NotificationsState &n)
    {
        std::vector<std::string> out;
        for (const auto &x : n.items)
        {
            out.push_back(x.id);
        }
        return out;
    }
} // namespace

TEST(Routing, HomeButtonKeepsMapState)
{
    SessionState s = make_default_session(AppId::Map);
    s.map.view = {{0.3, 0.4}, 0.5};
    const MapState before = s.map;
    route(s, selected(std::string(kHomeButton)));
    EXPECT_EQ(s.active_app, AppId::Home);
    EXPECT_EQ(s.map, before);
    route(s, selected("app.map"));
    EXPECT_EQ(s.active_app, AppId::Map);
    EXPECT_EQ(s.map, before);
}

TEST(Routing, FrameToggleCycles)
{
    SessionState s = make_default_session();
    const auto r = route(s, selected(std::string(kFrameToggle)));
    EXPECT_EQ(s.reference_frame, ReferenceFrame::AboveHand);
    ASSERT_EQ(r.events.size(), 1u);
    EXPECT_EQ(r.events[0], AppEvent{FrameChanged{ReferenceFrame::AboveHand}});
    route(s, selected(std::string(kFrameToggle)));
    route(s, selected(std::string(kFrameToggle)));
    EXPECT_EQ(s.reference_frame, ReferenceFrame::OnHand);
}

TEST(Routing, DepthDragInDownloadsDoesNothing)
{
    SessionState s = make_default_session(AppId::Downloads);
    const SessionState before = s;
    drag_sequence(s, {{0, 0, 0.05}, {0, 0, 0.05}});
    EXPECT_EQ(s, before);
}

TEST(Routing, UnknownSelectionIsLoggedNoOp)
{
    SessionState s = make_default_session(AppId::Music);
    const SessionState before = s;
    const auto r = route(s, selected("nonexistent"));
    EXPECT_EQ(s, before);
    EXPECT_EQ(r.diagnostics.size(), 1u);
}

TEST(ViewModel, TopBarFirstAndIdsUnique)
{
    for (AppId app : kAllApps)
    {
        const AppViewModel vm = build_view_model(make_default_session(app));
        ASSERT_GE(vm.elements.size(), 2u);
        EXPECT_EQ(vm.elements[0].id, kHomeButton);
        EXPECT_EQ(vm.elements[1].id, kFrameToggle);
        std::set<std::string> ids;
        for (const auto &e : vm.elements)
        {
            EXPECT_TRUE(ids.insert(e.id).second) << e.id;
        }
    }
}

TEST(Music, SelectTrackPlays)
{
    MusicState m = make_default_session().music;
    music_handle(m, selected("track4"));
    EXPECT_EQ(m.now_playing, 4);
    EXPECT_EQ(m.status, PlaybackStatus::Playing);
    music_handle(m, selected("music.play_pause"));
    EXPECT_EQ(m.status, PlaybackStatus::Paused);
    music_handle(m, selected("music.play_pause"));
    EXPECT_EQ(m.status, PlaybackStatus::Playing);
}

TEST(Music, NextWrapsAround)
{
    MusicState m = make_default_session().music;
    const int n = static_cast<int>(m.tracks.size());
    music_handle(m, selected("track" + std::to_string(n - 1)));
    music_handle(m, selected("music.next"));
    EXPECT_EQ(m.now_playing, 0);
}

TEST(Music, NextOnEmptyListIsNoOp)
{
    MusicState m;
    music_handle(m, selected("music.next"));
    EXPECT_EQ(m, MusicState{});
}

TEST(Notifications, ExpandThenDelete)
{
    SessionState s = make_default_session(AppId::Notifications);
    route(s, selected("n2"));
    EXPECT_EQ(s.notifications.expanded, "n2");
    const auto r = route(s, selected("n2.delete"));
    const auto ids = notification_ids(s.notifications);
    EXPECT_EQ(std::count(ids.begin(), ids.end(), "n2"), 0);
    EXPECT_NE(std::find(r.events.begin(), r.events.end(), (AppEvent{NotificationHandled{"n2", "delete"}})),
              r.events.end());
    EXPECT_TRUE(route(s, selected("n2.delete")).diagnostics.size() == 1u);
}

TEST(Notifications, PostponeMovesToEnd)
{
    NotificationsState n;
    n.items = {{"n1", "", ""}, {"n2", "", ""}, {"n3", "", ""}, {"n4", "", ""}};
    std::vector<AppEvent> out;
    notifications_handle(n, selected("n3"), PeepholeMode::Dynamic, {}, out);
    notifications_handle(n, selected("n3.postpone"), PeepholeMode::Dynamic, {}, out);
    EXPECT_EQ(notification_ids(n), (std::vector<std::string>{"n1", "n2", "n4", "n3"}));
    EXPECT_FALSE(n.expanded);
}

TEST(Notifications, ShortcutDragLeftChecks)
{
    AppParams p;
    p.notification_shortcuts = true;
    SessionState s = make_default_session(AppId::Notifications, ReferenceFrame::OnHand, p);
    route(s, {0.0, DragStarted{"n1"}}, {}, p);
    route(s, drag({-0.025, 0, 0}), {}, p);
    route(s, drag({-0.025, 0, 0}), {}, p);
    const auto r = route(s, {0.0, DragEnded{true}}, {}, p);
    const auto ids = notification_ids(s.notifications);
    EXPECT_EQ(std::count(ids.begin(), ids.end(), "n1"), 0);
    ASSERT_FALSE(r.events.empty());
    EXPECT_EQ(r.events[0], (AppEvent{NotificationHandled{"n1", "check"}}));
}

TEST(Notifications, ShortcutDragRightDeletesAndShortDragDoesNothing)
{
    AppParams p;
    p.notification_shortcuts = true;
    SessionState s = make_default_session(AppId::Notifications, ReferenceFrame::OnHand, p);
    drag_sequence(s, {{0.02, 0, 0}}, {}, p, "n1");
    EXPECT_EQ(s.notifications.items.size(), 8u);
    drag_sequence(s, {{0.02, 0, 0}, {0.02, 0, 0}}, {}, p, "n1");
    EXPECT_EQ(s.notifications.items.size(), 7u);
}

TEST(Notifications, ShortcutsOffByDefault)
{
    SessionState s = make_default_session(AppId::Notifications);
    drag_sequence(s, {{-0.05, 0, 0}}, {}, {}, "n1");
    EXPECT_EQ(s.notifications.items.size(), 8u);
}

TEST(Files, DynamicDragRightAdvancesOffset)
{
    SessionState s = make_default_session(AppId::Downloads);
    const double x0 = s.downloads.scroll.offset.x;
    drag_sequence(s, {{0.05, 0, 0}, {0.05, 0, 0}});
    EXPECT_NEAR(s.downloads.scroll.offset.x, x0 + 0.10, 1e-12);
}

TEST(Files, DetailAndBackPreserveScroll)
{
    SessionState s = make_default_session(AppId::Downloads);
    drag_sequence(s, {{0.07, 0, 0}});
    const ScrollState scroll = s.downloads.scroll;
    route(s, selected("file5"));
    EXPECT_EQ(view_key(s), "downloads/detail/file5");
    route(s, selected("back"));
    EXPECT_EQ(view_key(s), "downloads");
    EXPECT_EQ(s.downloads.scroll, scroll);
}

TEST(Files, FavoritesIgnoreDrags)
{
    SessionState s = make_default_session(AppId::Favorites);
    const SessionState before = s;
    drag_sequence(s, {{0.05, 0.05, 0.05}});
    EXPECT_EQ(s, before);
}

TEST(Gallery, ForwardDragDescendsIntoGazedItems)
{
    SessionState s = make_default_session(AppId::Gallery);
    route(s, {0.0, DragStarted{}});
    const GazeContext album = gaze_on(gallery_elements(s.gallery), "album1");
    route(s, drag({0, 0, 0.05}), album);
    EXPECT_EQ(s.gallery.depth.layer, 1);
    EXPECT_EQ(s.gallery.album, 1);
    const GazeContext image = gaze_on(gallery_elements(s.gallery), "album1.image7");
    route(s, drag({0, 0, 0.05}), image);
    EXPECT_EQ(s.gallery.depth.layer, 2);
    EXPECT_EQ(s.gallery.image, 7);
    route(s, {0.0, DragEnded{true}});

    route(s, {0.0, DragStarted{}});
    route(s, drag({0, 0, -0.10}));
    EXPECT_EQ(s.gallery.depth.layer, 0);
}

TEST(Gallery, ForwardWithoutGazeTargetIsAbsorbed)
{
    SessionState s = make_default_session(AppId::Gallery);
    drag_sequence(s, {{0, 0, 0.10}});
    EXPECT_EQ(s.gallery.depth.layer, 0);
}

TEST(Gallery, SelectionDescendsOneLayer)
{
    SessionState s = make_default_session(AppId::Gallery);
    route(s, selected("album2"));
    EXPECT_EQ(s.gallery.depth.layer, 1);
    EXPECT_EQ(view_key(s), "gallery/album/album2");
}

TEST(Gallery, ImageViewIsSnapExempt)
{
    SessionState s = make_default_session(AppId::Gallery);
    route(s, selected("album0"));
    route(s, selected("album0.image3"));
    const auto els = gallery_elements(s.gallery);
    const Element *img = find(els, "image_view");
    ASSERT_NE(img, nullptr);
    EXPECT_TRUE(img->snap_exempt);
}

TEST(MapApp, ForwardZoomsAboutGaze)
{
    SessionState s = make_default_session(AppId::Map);
    s.map.view = {{0.5, 0.5}, 1.0};
    const GazeContext g{PanelPoint{0.75, 0.5}, std::nullopt};
    const Vec2 before = map_panel_to_content(s.map.view, *g.point, AppParams{}.map_params());
    drag_sequence(s, {{0, 0, 0.05}}, g);
    EXPECT_NEAR(s.map.view.scale, 0.5, 1e-12);
    const Vec2 after = map_panel_to_content(s.map.view, *g.point, AppParams{}.map_params());
    EXPECT_NEAR(before.x, after.x, 1e-9);
    EXPECT_NEAR(before.y, after.y, 1e-9);
}

TEST(MapApp, DiagonalMatchesComposition)
{
    SessionState s = make_default_session(AppId::Map);
    s.map.view = {{0.5, 0.5}, 0.5};
    const GazeContext g{PanelPoint{0.4, 0.6}, std::nullopt};
    const MapParams mp = AppParams{}.map_params();
    MapView oracle = map_pan_zoom_update(s.map.view, {0.05, 0, 0}, g.point, PeepholeMode::Dynamic, mp);
    oracle = map_pan_zoom_update(oracle, {0, 0, 0.05}, g.point, PeepholeMode::Dynamic, mp);
    drag_sequence(s, {{0.05, 0, 0.05}}, g);
    EXPECT_NEAR(s.map.view.center.x, oracle.center.x, 1e-12);
    EXPECT_NEAR(s.map.view.center.y, oracle.center.y, 1e-12);
    EXPECT_NEAR(s.map.view.scale, oracle.scale, 1e-12);
}

TEST(MapApp, ZoomingOntoMarkerRevealsIt)
{
    SessionState s = make_default_session(AppId::Map);
    const MapMarker m = s.map.markers[0];
    s.map.view = {m.center, 1.0};
    std::vector<AppEvent> out;
    const GazeContext g{PanelPoint{0.5, 0.5}, std::nullopt};
    map_handle(s.map, drag({0, 0, 0.10}), g, PeepholeMode::Dynamic, {}, out);
    EXPECT_TRUE(marker_legible(s.map.view, m, {}));
    EXPECT_NE(std::find(out.begin(), out.end(), AppEvent{MarkerRevealed{m.id}}), out.end());
}

class AppFuzz : public ::testing::TestWithParam<AppId>
{
};

TEST_P(AppFuzz, UnmarkedAxesLeaveStateUnchanged)
{
    const AppId app = GetParam();
    const AppParams params;
    const DragAxes axes = drag_profile(app, params);
    std::mt19937_64 rng(static_cast<std::uint64_t>(app) + 40);
    std::uniform_real_distribution<double> d(-0.04, 0.04);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SessionState s = make_default_session(app);
    for (int i = 0; i < 300; ++i)
    {
        const DragDelta delta{axes.x ? 0.0 : d(rng), axes.y ? 0.0 : d(rng), axes.z ? 0.0 : d(rng)};
        const SessionState before = s;
        route(s, {0.0, DragStarted{}});
        route(s, drag(delta), {PanelPoint{u(rng), u(rng)}, std::nullopt});
        route(s, {0.0, DragEnded{true}});
        ASSERT_EQ(s, before) << to_string(app) << " step " << i;
    }
}

TEST_P(AppFuzz, HomeReachabilityInTwoSelections)
{
    for (AppId target : kAllApps)
    {
        if (target == AppId::Home)
        {
            continue;
        }
        SessionState s = make_default_session(GetParam());
        int selections = 0;
        if (s.active_app != AppId::Home)
        {
            route(s, selected(std::string(kHomeButton)));
            ++selections;
        }
        if (s.active_app != target)
        {
            route(s, selected("app." + std::string(to_string(target))));
            ++selections;
        }
        EXPECT_EQ(s.active_app, target);
        EXPECT_LE(selections, 2);
    }
}

INSTANTIATE_TEST_SUITE_P(AllApps, AppFuzz, ::testing::ValuesIn(kAllApps),
                         [](const auto &info) { return std::string(to_string(info.param)); });

TEST(GalleryProperty, LayerStaysInBoundsUnderFuzz)
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> d(-0.08, 0.08);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SessionState s = make_default_session(AppId::Gallery);
    for (int i = 0; i < 500; ++i)
    {
        route(s, {0.0, DragStarted{}});
        for (int k = 0; k < 5; ++k)
        {
            route(s, drag({0, 0, d(rng)}), {PanelPoint{u(rng), u(rng)}, std::nullopt});
            ASSERT_GE(s.gallery.depth.layer, 0);
            ASSERT_LE(s.gallery.depth.layer, 2);
            ASSERT_EQ(s.gallery.album.has_value(), s.gallery.depth.layer >= 1);
            ASSERT_EQ(s.gallery.image.has_value(), s.gallery.depth.layer == 2);
        }
        route(s, {0.0, DragEnded{true}});
    }
}

TEST(SessionProperty, SummonCyclesPreserveAppState)
{
    Config config;
    config.initial_app = AppId::Map;
    Engine engine(config);
    SessionState s = engine.session();
    s.map.view = {{0.35, 0.6}, 0.3};
    s.downloads.scroll.offset.x = 0.2;
    s.gallery.depth.layer = 1;
    s.gallery.album = 2;
    Engine e(config, s);
    double t = 0.0;
    for (int cycle = 0; cycle < 20; ++cycle)
    {
        for (int i = 0; i < 30; ++i, t += 1.0 / 90.0)
        {
            TrackingFrame f;
            f.t = t;
            const double ext = (i < 15) ? 0.95 : 0.05;
            f.hand.finger_extension = {ext, ext, ext, ext};
            f.hand.pinch_gap = 0.06;
            f.hand.palm = {{0.02, 1.3, -0.33}, Orientation::from_axis_angle({1, 0, 0}, 0.3)};
            f.head = {{0, 1.6, 0}, Orientation::identity()};
            e.step(f);
        }
    }
    EXPECT_EQ(e.session(), s);
    EXPECT_FALSE(e.interaction().ui_on());
}
