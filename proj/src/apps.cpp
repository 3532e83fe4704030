#include "palmgazer/apps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace palmgazer
{
    namespace
    {
        template <class... Ts>
        struct overloaded : Ts...
        {
            using Ts::operator()...;
        };
        template <class... Ts>
        overloaded(Ts...) -> overloaded<Ts...>;

        // Panel layout, normalized coordinates. The top bar sits above the main area.
        constexpr double kMainTop = 0.86;
        constexpr PanelRect kMainArea{0.0, 0.0, 1.0, kMainTop};
        constexpr PanelRect kHomeButtonRect{0.02, 0.89, 0.26, 0.99};
        constexpr PanelRect kFrameToggleRect{0.74, 0.89, 0.98, 0.99};

        constexpr double kNotificationPitch = 0.045; // meters per list row
        constexpr double kNotificationHalfWidth = 0.14;
        constexpr double kFileCellWidth = 0.075;

        constexpr std::array<std::pair<AppId, std::string_view>, 7> kAppNames{{
            {AppId::Home, "home"},
            {AppId::Music, "music"},
            {AppId::Notifications, "notifications"},
            {AppId::Downloads, "downloads"},
            {AppId::Favorites, "favorites"},
            {AppId::Gallery, "gallery"},
            {AppId::Map, "map"},
        }};

        std::string app_icon_id(AppId app) { return "app." + std::string(to_string(app)); }

        std::string format(const char *fmt, int value)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, fmt, value);
            return buf;
        }

        /// rows x cols cells filling `area`, row 0 at the top, each shrunk by `pad` on every side.
        std::vector<PanelRect> grid(PanelRect area, int rows, int cols, double pad)
        {
            std::vector<PanelRect> cells;
            const double w = (area.u_max - area.u_min) / cols;
            const double h = (area.v_max - area.v_min) / rows;
            for (int r = 0; r < rows; ++r)
            {
                for (int c = 0; c < cols; ++c)
                {
                    const double u0 = area.u_min + c * w;
                    const double v1 = area.v_max - r * h;
                    cells.push_back({u0 + pad, v1 - h + pad, u0 + w - pad, v1 - pad});
                }
            }
            return cells;
        }

        std::vector<Element> top_bar_elements()
        {
            return {
                {std::string(kHomeButton), kHomeButtonRect, ElementKind::Button, false, "Home"},
                {std::string(kFrameToggle), kFrameToggleRect, ElementKind::Button, false, "Frame"},
            };
        }

        double main_height(const PanelExtent &extent) { return extent.height * kMainTop; }

        /// Maps a content rectangle (meters, y up) scrolled by `offset` into the
        /// main area; nothing when it falls fully outside.
        std::optional<PanelRect> content_to_panel(double x0, double y0, double x1, double y1, Vec2 offset,
                                                  const PanelExtent &extent)
        {
            const double cu = 0.5;
            const double cv = kMainTop * 0.5;
            PanelRect r{cu + (x0 - offset.x) / extent.width, cv + (y0 - offset.y) / extent.height,
                        cu + (x1 - offset.x) / extent.width, cv + (y1 - offset.y) / extent.height};
            r.u_min = std::max(r.u_min, kMainArea.u_min);
            r.v_min = std::max(r.v_min, kMainArea.v_min);
            r.u_max = std::min(r.u_max, kMainArea.u_max);
            r.v_max = std::min(r.v_max, kMainArea.v_max);
            if (r.degenerate())
            {
                return std::nullopt;
            }
            return r;
        }

        void update_notification_bounds(NotificationsState &s, const PanelExtent &extent)
        {
            const double hm = main_height(extent);
            const double content = kNotificationPitch * static_cast<double>(s.items.size());
            s.scroll.max = {0.0, -hm * 0.5};
            s.scroll.min = {0.0, std::min(-hm * 0.5, -content + hm * 0.5)};
            s.scroll = clamp_scroll(s.scroll);
        }

        int file_columns(const FilesState &s)
        {
            const int n = static_cast<int>(s.files.size());
            return (n + s.rows - 1) / s.rows;
        }

        void update_file_bounds(FilesState &s, const PanelExtent &extent)
        {
            const double hm = main_height(extent);
            const double content = kFileCellWidth * file_columns(s);
            const double lo = extent.width * 0.5;
            s.scroll.min = {lo, -hm * 0.5};
            s.scroll.max = {std::max(lo, content - extent.width * 0.5), -hm * 0.5};
            s.scroll = clamp_scroll(s.scroll);
        }

        const Notification *find_notification(const NotificationsState &s, std::string_view id)
        {
            const auto it = std::find_if(s.items.begin(), s.items.end(), [&](const auto &n) { return n.id == id; });
            return it == s.items.end() ? nullptr : &*it;
        }

        void remove_notification(NotificationsState &s, std::string_view id)
        {
            std::erase_if(s.items, [&](const Notification &n) { return n.id == id; });
            if (s.expanded == id)
            {
                s.expanded.reset();
            }
        }

        std::vector<Element> notification_elements(const NotificationsState &s, const PanelExtent &extent)
        {
            std::vector<Element> out;
            for (std::size_t i = 0; i < s.items.size(); ++i)
            {
                const Notification &n = s.items[i];
                const double y1 = -static_cast<double>(i) * kNotificationPitch - 0.003;
                const double y0 = y1 - kNotificationPitch + 0.006;
                if (s.expanded == n.id)
                {
                    static constexpr std::array<std::string_view, 3> kActions{"check", "postpone", "delete"};
                    const double w = 2.0 * kNotificationHalfWidth / 3.0;
                    for (std::size_t a = 0; a < kActions.size(); ++a)
                    {
                        const double x0 = -kNotificationHalfWidth + w * static_cast<double>(a);
                        if (auto r = content_to_panel(x0 + 0.003, y0, x0 + w - 0.003, y1, s.scroll.offset, extent))
                        {
                            out.push_back({n.id + "." + std::string(kActions[a]), *r, ElementKind::Button, false,
                                           std::string(kActions[a])});
                        }
                    }
                    continue;
                }
                if (auto r = content_to_panel(-kNotificationHalfWidth, y0, kNotificationHalfWidth, y1, s.scroll.offset,
                                              extent))
                {
                    out.push_back({n.id, *r, ElementKind::ListItem, false, n.source + ": " + n.title});
                }
            }
            return out;
        }

        std::vector<Element> file_elements(const FilesState &s, const PanelExtent &extent)
        {
            std::vector<Element> out;
            if (s.detail)
            {
                out.push_back({"back", {0.02, 0.70, 0.30, 0.84}, ElementKind::Button, false, "Back"});
                const auto it = std::find_if(s.files.begin(), s.files.end(),
                                             [&](const FileEntry &f) { return f.id == *s.detail; });
                std::string label;
                if (it != s.files.end())
                {
                    label = it->name + " | " + it->size + " | " + it->type + " | " + it->modified;
                }
                out.push_back({"detail", {0.02, 0.04, 0.98, 0.66}, ElementKind::Region, true, label});
                return out;
            }
            const double hm = main_height(extent);
            const double cell_h = hm / s.rows;
            for (std::size_t i = 0; i < s.files.size(); ++i)
            {
                const int col = static_cast<int>(i) / s.rows;
                const int row = static_cast<int>(i) % s.rows;
                const double x0 = col * kFileCellWidth + 0.004;
                const double x1 = (col + 1) * kFileCellWidth - 0.004;
                const double y1 = -row * cell_h - 0.004;
                const double y0 = -(row + 1) * cell_h + 0.004;
                if (auto r = content_to_panel(x0, y0, x1, y1, s.scroll.offset, extent))
                {
                    out.push_back({s.files[i].id, *r, ElementKind::GridItem, false, s.files[i].name});
                }
            }
            return out;
        }

        std::vector<Element> map_elements(const MapState &s, const AppParams &params)
        {
            std::vector<Element> out;
            out.push_back({"map", kMainArea, ElementKind::Region, true, "Map"});
            const MapParams mp = params.map_params();
            for (std::size_t i = 0; i < s.markers.size(); ++i)
            {
                const MapMarker &m = s.markers[i];
                const PanelPoint lo = map_content_to_panel(s.view, {m.center.x - m.radius, m.center.y - m.radius}, mp);
                const PanelPoint hi = map_content_to_panel(s.view, {m.center.x + m.radius, m.center.y + m.radius}, mp);
                PanelRect r{std::max(lo.u, 0.0), std::max(lo.v, 0.0), std::min(hi.u, 1.0), std::min(hi.v, kMainTop)};
                if (r.degenerate())
                {
                    continue;
                }
                const bool legible = i < s.revealed.size() && s.revealed[i];
                out.push_back({m.id, r, ElementKind::Region, true, legible ? m.number : std::string{}});
            }
            return out;
        }

        void refresh_markers(MapState &s, const AppParams &params, std::vector<AppEvent> &out)
        {
            s.revealed.resize(s.markers.size(), false);
            for (std::size_t i = 0; i < s.markers.size(); ++i)
            {
                const bool now = marker_legible(s.view, s.markers[i], params);
                if (now && !s.revealed[i])
                {
                    out.push_back(MarkerRevealed{s.markers[i].id});
                }
                s.revealed[i] = now;
            }
        }

        void gallery_descend(GalleryState &s, const std::string &id)
        {
            if (s.depth.layer == 0)
            {
                for (std::size_t a = 0; a < s.albums.size(); ++a)
                {
                    if (s.albums[a].id == id)
                    {
                        s.album = static_cast<int>(a);
                        s.depth.layer = 1;
                        return;
                    }
                }
            }
            else if (s.depth.layer == 1 && s.album)
            {
                const Album &album = s.albums[static_cast<std::size_t>(*s.album)];
                for (std::size_t i = 0; i < album.images.size(); ++i)
                {
                    if (album.images[i].id == id)
                    {
                        s.image = static_cast<int>(i);
                        s.depth.layer = 2;
                        return;
                    }
                }
            }
        }

        void gallery_ascend(GalleryState &s)
        {
            if (s.depth.layer == 2)
            {
                s.image.reset();
                s.depth.layer = 1;
            }
            else if (s.depth.layer == 1)
            {
                s.album.reset();
                s.depth.layer = 0;
            }
        }

        DragDelta filter_axes(DragDelta d, DragAxes axes)
        {
            return {axes.x ? d.right : 0.0, axes.y ? d.up : 0.0, axes.z ? d.forward : 0.0};
        }
    } // namespace

    std::string_view to_string(AppId app) noexcept
    {
        for (const auto &[id, name] : kAppNames)
        {
            if (id == app)
            {
                return name;
            }
        }
        return "home";
    }

    std::optional<AppId> app_from_string(std::string_view s) noexcept
    {
        for (const auto &[id, name] : kAppNames)
        {
            if (name == s)
            {
                return id;
            }
        }
        return std::nullopt;
    }

    std::string_view to_string(PlaybackStatus status) noexcept
    {
        switch (status)
        {
        case PlaybackStatus::Playing:
            return "Playing";
        case PlaybackStatus::Paused:
            return "Paused";
        case PlaybackStatus::Stopped:
            break;
        }
        return "Stopped";
    }

    DragAxes drag_profile(AppId app, const AppParams &params) noexcept
    {
        switch (app)
        {
        case AppId::Downloads:
            return {true, false, false};
        case AppId::Gallery:
            return {false, false, true};
        case AppId::Map:
            return {true, true, true};
        case AppId::Notifications:
            return {params.notification_shortcuts, true, false};
        case AppId::Home:
        case AppId::Music:
        case AppId::Favorites:
            break;
        }
        return {};
    }

    SessionState make_default_session(AppId initial_app, ReferenceFrame frame, const AppParams &params)
    {
        SessionState s;
        s.active_app = initial_app;
        s.reference_frame = frame;

        s.music.tracks = {"Blue Hour", "Northern Lights", "Paper Planes", "Low Tide",      "Glasshouse",    "Afterglow",
                          "Static Bloom", "Long Drive", "Satellite",  "Copper Sky", "Quiet Engines", "Polaroid"};

        const std::array<std::pair<const char *, const char *>, 8> notes{{
            {"Mail", "Quarterly report ready"},
            {"Calendar", "Standup in 10 minutes"},
            {"Chat", "Lunch at noon?"},
            {"Weather", "Rain expected at 4 pm"},
            {"News", "Transit strike update"},
            {"Fitness", "Daily goal reached"},
            {"Bank", "Card payment approved"},
            {"Updates", "System update available"},
        }};
        for (std::size_t i = 0; i < notes.size(); ++i)
        {
            s.notifications.items.push_back({"n" + std::to_string(i + 1), notes[i].first, notes[i].second});
        }
        s.notifications.scroll.offset = {0.0, 0.0};
        update_notification_bounds(s.notifications, params.extent);
        s.notifications.scroll.offset = s.notifications.scroll.max;

        const std::array<const char *, 5> kinds{"pdf", "png", "docx", "zip", "mp4"};
        for (int i = 0; i < 30; ++i)
        {
            const char *ext = kinds[static_cast<std::size_t>(i) % kinds.size()];
            s.downloads.files.push_back({"file" + std::to_string(i), format("download_%02d.", i) + ext,
                                         format("%d KB", 120 + 37 * i), ext, format("2023-03-%02d", 1 + i % 28)});
        }
        s.downloads.rows = 3;
        s.downloads.scrollable = true;
        update_file_bounds(s.downloads, params.extent);
        s.downloads.scroll.offset = s.downloads.scroll.min;

        const std::array<std::array<const char *, 3>, 8> favs{{
            {"Flyer.pdf", "1.2 MB", "pdf"},
            {"Budget.xlsx", "84 KB", "xlsx"},
            {"Itinerary.pdf", "310 KB", "pdf"},
            {"Poster.png", "4.8 MB", "png"},
            {"Notes.txt", "6 KB", "txt"},
            {"Contract.docx", "220 KB", "docx"},
            {"Slides.pptx", "9.1 MB", "pptx"},
            {"Recipe.pdf", "150 KB", "pdf"},
        }};
        for (std::size_t i = 0; i < favs.size(); ++i)
        {
            s.favorites.files.push_back({"fav" + std::to_string(i), favs[i][0], favs[i][1], favs[i][2],
                                         format("2023-02-%02d", static_cast<int>(3 + 2 * i))});
        }
        s.favorites.rows = 2;
        s.favorites.scrollable = false;
        update_file_bounds(s.favorites, params.extent);
        s.favorites.scroll.offset = s.favorites.scroll.min;

        const std::array<const char *, 3> albums{"Beach", "City", "Mountains"};
        for (std::size_t a = 0; a < albums.size(); ++a)
        {
            Album album{"album" + std::to_string(a), albums[a], {}};
            for (int i = 0; i < 9; ++i)
            {
                album.images.push_back({album.id + ".image" + std::to_string(i),
                                        std::string(albums[a]) + " photo " + std::to_string(i + 1)});
            }
            s.gallery.albums.push_back(std::move(album));
        }
        s.gallery.depth = {0, 3, 0, 0.0};

        s.map.view = MapView{{0.5, 0.5}, params.max_map_scale};
        s.map.view = clamp_map_view(s.map.view, params.map_params());
        s.map.markers = {
            {"marker0", {0.22, 0.68}, 0.04, "417"},
            {"marker1", {0.55, 0.30}, 0.04, "902"},
            {"marker2", {0.80, 0.62}, 0.04, "135"},
        };
        s.map.revealed.assign(s.map.markers.size(), false);
        return s;
    }

    bool marker_legible(const MapView &view, const MapMarker &marker, const AppParams &params) noexcept
    {
        if (view.scale > params.marker_reveal_scale + 1e-12)
        {
            return false;
        }
        const Vec2 size = map_visible_size(view, params.map_params());
        return marker.center.x - marker.radius >= view.center.x - size.x * 0.5 &&
               marker.center.x + marker.radius <= view.center.x + size.x * 0.5 &&
               marker.center.y - marker.radius >= view.center.y - size.y * 0.5 &&
               marker.center.y + marker.radius <= view.center.y + size.y * 0.5;
    }

    std::string view_key(const SessionState &s)
    {
        switch (s.active_app)
        {
        case AppId::Downloads:
            return s.downloads.detail ? "downloads/detail/" + *s.downloads.detail : "downloads";
        case AppId::Favorites:
            return s.favorites.detail ? "favorites/detail/" + *s.favorites.detail : "favorites";
        case AppId::Notifications:
            return s.notifications.expanded ? "notifications/" + *s.notifications.expanded : "notifications";
        case AppId::Gallery:
        {
            const GalleryState &g = s.gallery;
            if (g.depth.layer == 2 && g.album && g.image)
            {
                return "gallery/image/" +
                       g.albums[static_cast<std::size_t>(*g.album)].images[static_cast<std::size_t>(*g.image)].id;
            }
            if (g.depth.layer >= 1 && g.album)
            {
                return "gallery/album/" + g.albums[static_cast<std::size_t>(*g.album)].id;
            }
            return "gallery/albums";
        }
        case AppId::Home:
        case AppId::Music:
        case AppId::Map:
            break;
        }
        return std::string(to_string(s.active_app));
    }

    std::vector<Element> gallery_elements(const GalleryState &s)
    {
        std::vector<Element> out = top_bar_elements();
        if (s.depth.layer == 0 || !s.album)
        {
            const auto cells = grid({0.02, 0.10, 0.98, 0.80}, 1, static_cast<int>(s.albums.size()), 0.02);
            for (std::size_t a = 0; a < s.albums.size(); ++a)
            {
                out.push_back({s.albums[a].id, cells[a], ElementKind::GridItem, false, s.albums[a].name});
            }
            return out;
        }
        const Album &album = s.albums[static_cast<std::size_t>(*s.album)];
        if (s.depth.layer == 1 || !s.image)
        {
            const auto cells = grid({0.02, 0.02, 0.98, 0.84}, 3, 3, 0.012);
            for (std::size_t i = 0; i < album.images.size() && i < cells.size(); ++i)
            {
                out.push_back({album.images[i].id, cells[i], ElementKind::GridItem, false, album.images[i].caption});
            }
            return out;
        }
        const ImageEntry &img = album.images[static_cast<std::size_t>(*s.image)];
        out.push_back({"image_view", {0.02, 0.02, 0.98, 0.84}, ElementKind::Region, true, img.caption});
        return out;
    }

    AppViewModel build_view_model(const SessionState &s, const AppParams &params)
    {
        AppViewModel vm;
        vm.app_id = std::string(to_string(s.active_app));
        vm.view = view_key(s);
        vm.top_bar = {std::string(kHomeButton), std::string(kFrameToggle)};
        vm.elements = top_bar_elements();
        auto append = [&vm](std::vector<Element> more) {
            vm.elements.insert(vm.elements.end(), std::make_move_iterator(more.begin()),
                               std::make_move_iterator(more.end()));
        };

        switch (s.active_app)
        {
        case AppId::Home:
        {
            const auto cells = grid({0.04, 0.05, 0.96, 0.82}, 2, 3, 0.02);
            std::size_t i = 0;
            for (AppId app : kAllApps)
            {
                if (app == AppId::Home)
                {
                    continue;
                }
                std::string label(to_string(app));
                label[0] = static_cast<char>(label[0] - 'a' + 'A');
                vm.elements.push_back({app_icon_id(app), cells[i++], ElementKind::GridItem, false, label});
            }
            vm.status = "Home";
            break;
        }
        case AppId::Music:
        {
            vm.elements.push_back({"music.play_pause", {0.10, 0.70, 0.45, 0.84}, ElementKind::Button, false,
                                   s.music.status == PlaybackStatus::Playing ? "Pause" : "Play"});
            vm.elements.push_back({"music.next", {0.55, 0.70, 0.90, 0.84}, ElementKind::Button, false, "Next"});
            const auto cells = grid({0.02, 0.02, 0.98, 0.66}, 4, 3, 0.01);
            for (std::size_t i = 0; i < s.music.tracks.size() && i < cells.size(); ++i)
            {
                vm.elements.push_back(
                    {"track" + std::to_string(i), cells[i], ElementKind::ListItem, false, s.music.tracks[i]});
            }
            vm.status = std::string(to_string(s.music.status));
            if (s.music.now_playing)
            {
                vm.status += ": " + s.music.tracks[static_cast<std::size_t>(*s.music.now_playing)];
            }
            break;
        }
        case AppId::Notifications:
            append(notification_elements(s.notifications, params.extent));
            vm.scroll = s.notifications.scroll;
            vm.status = std::to_string(s.notifications.items.size()) + " notifications";
            break;
        case AppId::Downloads:
        case AppId::Favorites:
        {
            const FilesState &f = s.active_app == AppId::Downloads ? s.downloads : s.favorites;
            append(file_elements(f, params.extent));
            if (f.scrollable)
            {
                vm.scroll = f.scroll;
            }
            vm.status = f.detail ? "Detail" : std::to_string(f.files.size()) + " files";
            break;
        }
        case AppId::Gallery:
            vm.elements = gallery_elements(s.gallery);
            vm.depth = s.gallery.depth;
            vm.status = vm.view;
            break;
        case AppId::Map:
            append(map_elements(s.map, params));
            vm.map = s.map.view;
            vm.status = "Map";
            break;
        }
        return vm;
    }

    std::string_view app_event_name(const AppEvent &event) noexcept
    {
        return std::visit(overloaded{
                              [](const ViewChanged &) { return std::string_view{"ViewChanged"}; },
                              [](const FrameChanged &) { return std::string_view{"FrameChanged"}; },
                              [](const PlaybackChanged &) { return std::string_view{"PlaybackChanged"}; },
                              [](const NotificationHandled &) { return std::string_view{"NotificationHandled"}; },
                              [](const MarkerRevealed &) { return std::string_view{"MarkerRevealed"}; },
                          },
                          event);
    }

    bool home_handle(SessionState &session, const Selected &selected)
    {
        for (AppId app : kAllApps)
        {
            if (app != AppId::Home && selected.id == app_icon_id(app))
            {
                session.active_app = app;
                return true;
            }
        }
        return false;
    }

    bool music_handle(MusicState &state, const UiEvent &event)
    {
        const auto *sel = std::get_if<Selected>(&event.payload);
        if (sel == nullptr)
        {
            return true;
        }
        if (sel->id == "music.play_pause")
        {
            if (state.status == PlaybackStatus::Playing)
            {
                state.status = PlaybackStatus::Paused;
            }
            else if (state.now_playing)
            {
                state.status = PlaybackStatus::Playing;
            }
            else if (!state.tracks.empty())
            {
                state.now_playing = 0;
                state.status = PlaybackStatus::Playing;
            }
            return true;
        }
        if (sel->id == "music.next")
        {
            if (state.tracks.empty())
            {
                return true;
            }
            const int n = static_cast<int>(state.tracks.size());
            state.now_playing = state.now_playing ? (*state.now_playing + 1) % n : 0;
            if (state.status == PlaybackStatus::Stopped)
            {
                state.status = PlaybackStatus::Playing;
            }
            return true;
        }
        if (sel->id.rfind("track", 0) == 0)
        {
            const std::string digits = sel->id.substr(5);
            if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            {
                const int index = std::stoi(digits);
                if (index < static_cast<int>(state.tracks.size()))
                {
                    state.now_playing = index;
                    state.status = PlaybackStatus::Playing;
                    return true;
                }
            }
        }
        return false;
    }

    bool notifications_handle(NotificationsState &state, const UiEvent &event, PeepholeMode mode,
                              const AppParams &params, std::vector<AppEvent> &out)
    {
        return std::visit(
            overloaded{
                [&](const Selected &sel) {
                    if (find_notification(state, sel.id) != nullptr)
                    {
                        state.expanded = sel.id;
                        return true;
                    }
                    const auto dot_pos = sel.id.rfind('.');
                    if (dot_pos == std::string::npos)
                    {
                        return false;
                    }
                    const std::string id = sel.id.substr(0, dot_pos);
                    const std::string action = sel.id.substr(dot_pos + 1);
                    if (find_notification(state, id) == nullptr || state.expanded != id)
                    {
                        return false;
                    }
                    if (action == "check" || action == "delete")
                    {
                        remove_notification(state, id);
                    }
                    else if (action == "postpone")
                    {
                        const auto it = std::find_if(state.items.begin(), state.items.end(),
                                                     [&](const Notification &n) { return n.id == id; });
                        std::rotate(it, it + 1, state.items.end());
                        state.expanded.reset();
                    }
                    else
                    {
                        return false;
                    }
                    out.push_back(NotificationHandled{id, action});
                    update_notification_bounds(state, params.extent);
                    return true;
                },
                [&](const DragStarted &d) {
                    state.drag_target.reset();
                    if (d.target && find_notification(state, *d.target) != nullptr)
                    {
                        state.drag_target = d.target;
                    }
                    state.drag_net_x = 0.0;
                    return true;
                },
                [&](const DragUpdated &d) {
                    if (d.delta.up != 0.0)
                    {
                        state.scroll = scroll_update(mode, state.scroll, {0.0, d.delta.up}, params.pan_gain);
                    }
                    state.drag_net_x += d.delta.right;
                    return true;
                },
                [&](const DragEnded &d) {
                    if (params.notification_shortcuts && d.committed && state.drag_target &&
                        find_notification(state, *state.drag_target) != nullptr)
                    {
                        const std::string id = *state.drag_target;
                        std::optional<std::string> action;
                        if (state.drag_net_x <= -params.shortcut_threshold)
                        {
                            action = "check";
                        }
                        else if (state.drag_net_x >= params.shortcut_threshold)
                        {
                            action = "delete";
                        }
                        if (action)
                        {
                            remove_notification(state, id);
                            update_notification_bounds(state, params.extent);
                            out.push_back(NotificationHandled{id, *action});
                        }
                    }
                    state.drag_target.reset();
                    state.drag_net_x = 0.0;
                    return true;
                },
                [](const auto &) { return true; },
            },
            event.payload);
    }

    bool files_handle(FilesState &state, const UiEvent &event, PeepholeMode mode, const AppParams &params)
    {
        if (const auto *sel = std::get_if<Selected>(&event.payload))
        {
            if (state.detail)
            {
                if (sel->id == "back")
                {
                    state.detail.reset();
                    return true;
                }
                return false;
            }
            const bool known = std::any_of(state.files.begin(), state.files.end(),
                                           [&](const FileEntry &f) { return f.id == sel->id; });
            if (known)
            {
                state.detail = sel->id;
            }
            return known;
        }
        if (const auto *upd = std::get_if<DragUpdated>(&event.payload))
        {
            if (state.scrollable && !state.detail)
            {
                state.scroll = scroll_update(mode, state.scroll, {upd->delta.right, upd->delta.up}, params.pan_gain);
            }
        }
        return true;
    }

    bool gallery_handle(GalleryState &state, const UiEvent &event, const GazeContext &gaze, const AppParams &params)
    {
        if (const auto *sel = std::get_if<Selected>(&event.payload))
        {
            const int before = state.depth.layer;
            gallery_descend(state, sel->id);
            return state.depth.layer != before;
        }
        if (std::holds_alternative<DragStarted>(event.payload))
        {
            state.depth.start_layer = state.depth.layer;
            state.depth.travel = 0.0;
            return true;
        }
        if (const auto *upd = std::get_if<DragUpdated>(&event.payload))
        {
            state.depth.travel += upd->delta.forward;
            const int target = depth_target_layer(state.depth.start_layer, state.depth.layer_count, state.depth.travel,
                                                  params.layer_spacing);
            while (state.depth.layer > target)
            {
                gallery_ascend(state);
            }
            while (state.depth.layer < target)
            {
                // Each forward crossing enters whatever item the gaze rests on.
                const auto elements = gallery_elements(state);
                const auto under_gaze = resolve_hover(gaze.point, elements);
                const int before = state.depth.layer;
                if (under_gaze)
                {
                    gallery_descend(state, *under_gaze);
                }
                if (state.depth.layer == before)
                {
                    break;
                }
            }
        }
        return true;
    }

    bool map_handle(MapState &state, const UiEvent &event, const GazeContext &gaze, PeepholeMode mode,
                    const AppParams &params, std::vector<AppEvent> &out)
    {
        if (std::holds_alternative<Selected>(event.payload))
        {
            return false;
        }
        if (const auto *upd = std::get_if<DragUpdated>(&event.payload))
        {
            state.view = map_pan_zoom_update(state.view, upd->delta, gaze.point, mode, params.map_params());
            refresh_markers(state, params, out);
        }
        return true;
    }

    RouteResult route_event(SessionState &session, const UiEvent &event, const GazeContext &gaze,
                            const AppParams &params)
    {
        RouteResult result;
        const std::string view_before = view_key(session);
        const PeepholeMode mode = peephole_mode_for(session.reference_frame);

        const bool is_drag = event.is<DragStarted>() || event.is<DragUpdated>() || event.is<DragEnded>();
        const auto *selected = std::get_if<Selected>(&event.payload);
        if (selected == nullptr && !is_drag)
        {
            return result;
        }

        if (selected != nullptr && selected->id == kHomeButton)
        {
            session.active_app = AppId::Home;
        }
        else if (selected != nullptr && selected->id == kFrameToggle)
        {
            session.reference_frame = toggle_reference_frame(session.reference_frame);
            result.events.push_back(FrameChanged{session.reference_frame});
        }
        else
        {
            UiEvent routed = event;
            if (const auto *upd = std::get_if<DragUpdated>(&event.payload))
            {
                const DragAxes axes = drag_profile(session.active_app, params);
                if (axes == DragAxes{})
                {
                    return result;
                }
                routed.payload = DragUpdated{filter_axes(upd->delta, axes)};
            }
            else if (is_drag && drag_profile(session.active_app, params) == DragAxes{})
            {
                return result;
            }

            bool handled = true;
            switch (session.active_app)
            {
            case AppId::Home:
                handled = selected != nullptr && home_handle(session, *selected);
                break;
            case AppId::Music:
            {
                const MusicState before = session.music;
                handled = music_handle(session.music, routed);
                if (session.music.now_playing != before.now_playing || session.music.status != before.status)
                {
                    std::optional<std::string> track;
                    if (session.music.now_playing)
                    {
                        track = "track" + std::to_string(*session.music.now_playing);
                    }
                    result.events.push_back(PlaybackChanged{track, session.music.status});
                }
                break;
            }
            case AppId::Notifications:
                handled = notifications_handle(session.notifications, routed, mode, params, result.events);
                break;
            case AppId::Downloads:
                handled = files_handle(session.downloads, routed, mode, params);
                break;
            case AppId::Favorites:
                handled = files_handle(session.favorites, routed, mode, params);
                break;
            case AppId::Gallery:
                handled = gallery_handle(session.gallery, routed, gaze, params);
                break;
            case AppId::Map:
                handled = map_handle(session.map, routed, gaze, mode, params, result.events);
                break;
            }
            if (!handled && selected != nullptr)
            {
                result.diagnostics.push_back("unhandled selection '" + selected->id + "' in app '" +
                                             std::string(to_string(session.active_app)) + "'");
            }
        }

        std::string view_after = view_key(session);
        if (view_after != view_before)
        {
            result.events.push_back(ViewChanged{std::string(to_string(session.active_app)), std::move(view_after)});
        }
        return result;
    }

} // namespace palmgazer
