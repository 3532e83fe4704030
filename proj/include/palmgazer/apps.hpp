#pragma once

#include "palmgazer/fsm.hpp"
#include "palmgazer/navigation.hpp"
#include "palmgazer/reference_frames.hpp"
#include "palmgazer/targeting.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace palmgazer
{
    enum class AppId
    {
        Home,
        Music,
        Notifications,
        Downloads,
        Favorites,
        Gallery,
        Map,
    };

    inline constexpr AppId kAllApps[] = {AppId::Home,      AppId::Music,   AppId::Notifications, AppId::Downloads,
                                         AppId::Favorites, AppId::Gallery, AppId::Map};

    std::string_view to_string(AppId app) noexcept;
    std::optional<AppId> app_from_string(std::string_view s) noexcept;

    /// Pinch-drag axes an application reacts to.
    struct DragAxes
    {
        bool x = false;
        bool y = false;
        bool z = false;
        friend constexpr bool operator==(DragAxes, DragAxes) = default;
    };

    struct AppParams
    {
        PanelExtent extent{};
        double pan_gain = 1.0;
        double layer_spacing = 0.05;
        double zoom_distance_per_doubling = 0.05;
        double min_map_scale = 0.01;
        double max_map_scale = 1.0;
        bool notification_shortcuts = false;
        double shortcut_threshold = 0.03;
        double marker_reveal_scale = 0.25;

        MapParams map_params() const noexcept
        {
            return {extent, pan_gain, zoom_distance_per_doubling, min_map_scale, max_map_scale};
        }
        friend bool operator==(const AppParams &, const AppParams &) = default;
    };

    /// Modality profile of each application. Image Gallery: Z. Downloads: X.
    /// Map: X, Y, Z. Notifications scroll their list on Y and, with drag
    /// shortcuts enabled, read net X displacement. Everything else: none.
    DragAxes drag_profile(AppId app, const AppParams &params) noexcept;

    // ---- per-app state ---------------------------------------------------

    enum class PlaybackStatus
    {
        Stopped,
        Playing,
        Paused,
    };

    std::string_view to_string(PlaybackStatus status) noexcept;

    struct MusicState
    {
        std::vector<std::string> tracks;
        std::optional<int> now_playing;
        PlaybackStatus status = PlaybackStatus::Stopped;
        friend bool operator==(const MusicState &, const MusicState &) = default;
    };

    struct Notification
    {
        std::string id;
        std::string source;
        std::string title;
        friend bool operator==(const Notification &, const Notification &) = default;
    };

    struct NotificationsState
    {
        std::vector<Notification> items;
        std::optional<std::string> expanded;
        ScrollState scroll;
        // Active drag: notification under gaze at drag start and net lateral travel.
        std::optional<std::string> drag_target;
        double drag_net_x = 0.0;
        friend bool operator==(const NotificationsState &, const NotificationsState &) = default;
    };

    struct FileEntry
    {
        std::string id;
        std::string name;
        std::string size;
        std::string type;
        std::string modified;
        friend bool operator==(const FileEntry &, const FileEntry &) = default;
    };

    struct FilesState
    {
        std::vector<FileEntry> files;
        int rows = 3;
        bool scrollable = true;
        ScrollState scroll;
        std::optional<std::string> detail;
        friend bool operator==(const FilesState &, const FilesState &) = default;
    };

    struct ImageEntry
    {
        std::string id;
        std::string caption;
        friend bool operator==(const ImageEntry &, const ImageEntry &) = default;
    };

    struct Album
    {
        std::string id;
        std::string name;
        std::vector<ImageEntry> images;
        friend bool operator==(const Album &, const Album &) = default;
    };

    /// Layer 0: album overview, 1: album contents, 2: single image.
    struct GalleryState
    {
        std::vector<Album> albums;
        DepthNavState depth{0, 3, 0, 0.0};
        std::optional<int> album;
        std::optional<int> image;
        friend bool operator==(const GalleryState &, const GalleryState &) = default;
    };

    struct MapMarker
    {
        std::string id;
        Vec2 center;
        double radius = 0.04;
        std::string number; // readable only when zoomed in
        friend bool operator==(const MapMarker &, const MapMarker &) = default;
    };

    struct MapState
    {
        MapView view;
        std::vector<MapMarker> markers;
        std::vector<bool> revealed;
        friend bool operator==(const MapState &, const MapState &) = default;
    };

    struct SessionState
    {
        AppId active_app = AppId::Home;
        ReferenceFrame reference_frame = ReferenceFrame::OnHand;
        MusicState music;
        NotificationsState notifications;
        FilesState downloads;
        FilesState favorites;
        GalleryState gallery;
        MapState map;
        friend bool operator==(const SessionState &, const SessionState &) = default;
    };

    /// Fixed demo content: 6 home icons, 12 tracks, 8 notifications,
    /// 30 downloads, 8 favorites, 3 albums x 9 images, 3 map markers.
    SessionState make_default_session(AppId initial_app = AppId::Home,
                                      ReferenceFrame frame = ReferenceFrame::OnHand, const AppParams &params = {});

    // ---- view model ------------------------------------------------------

    inline constexpr std::string_view kHomeButton = "home_button";
    inline constexpr std::string_view kFrameToggle = "frame_toggle";

    struct AppViewModel
    {
        std::string app_id;
        std::string view; // identity of the current screen, e.g. "gallery/album/album1"
        std::vector<Element> elements; // top bar first
        std::vector<std::string> top_bar;
        std::string status;
        std::optional<ScrollState> scroll;
        std::optional<DepthNavState> depth;
        std::optional<MapView> map;
        friend bool operator==(const AppViewModel &, const AppViewModel &) = default;
    };

    AppViewModel build_view_model(const SessionState &session, const AppParams &params = {});

    /// Identity of the screen currently shown; changes are logged as ViewChanged.
    std::string view_key(const SessionState &session);

    // ---- app-level events ------------------------------------------------

    struct ViewChanged
    {
        std::string app;
        std::string view;
        friend bool operator==(const ViewChanged &, const ViewChanged &) = default;
    };
    struct FrameChanged
    {
        ReferenceFrame frame = ReferenceFrame::OnHand;
        friend bool operator==(const FrameChanged &, const FrameChanged &) = default;
    };
    struct PlaybackChanged
    {
        std::optional<std::string> track;
        PlaybackStatus status = PlaybackStatus::Stopped;
        friend bool operator==(const PlaybackChanged &, const PlaybackChanged &) = default;
    };
    struct NotificationHandled
    {
        std::string id;
        std::string action; // check, postpone, delete
        friend bool operator==(const NotificationHandled &, const NotificationHandled &) = default;
    };
    struct MarkerRevealed
    {
        std::string marker;
        friend bool operator==(const MarkerRevealed &, const MarkerRevealed &) = default;
    };

    using AppEvent = std::variant<ViewChanged, FrameChanged, PlaybackChanged, NotificationHandled, MarkerRevealed>;

    std::string_view app_event_name(const AppEvent &event) noexcept;

    struct GazeContext
    {
        std::optional<PanelPoint> point; // gaze on the panel, if any
        std::optional<std::string> hover;
    };

    struct RouteResult
    {
        std::vector<AppEvent> events;
        std::vector<std::string> diagnostics;
    };

    /// Applies one UI event to the session. Top-bar selections are handled
    /// globally; everything else goes to the active app, with drag axes
    /// outside the app's profile dropped.
    RouteResult route_event(SessionState &session, const UiEvent &event, const GazeContext &gaze,
                            const AppParams &params = {});

    // Individual handlers, exposed for testing. Return false when the
    // element id is not recognized by the app.
    bool home_handle(SessionState &session, const Selected &selected);
    bool music_handle(MusicState &state, const UiEvent &event);
    bool notifications_handle(NotificationsState &state, const UiEvent &event, PeepholeMode mode,
                              const AppParams &params, std::vector<AppEvent> &out);
    bool files_handle(FilesState &state, const UiEvent &event, PeepholeMode mode, const AppParams &params);
    bool gallery_handle(GalleryState &state, const UiEvent &event, const GazeContext &gaze, const AppParams &params);
    bool map_handle(MapState &state, const UiEvent &event, const GazeContext &gaze, PeepholeMode mode,
                    const AppParams &params, std::vector<AppEvent> &out);

    /// Element list a gallery layer would show (top bar included).
    std::vector<Element> gallery_elements(const GalleryState &state);

    /// Marker fully visible at a scale at or below the reveal threshold.
    bool marker_legible(const MapView &view, const MapMarker &marker, const AppParams &params) noexcept;

} // namespace palmgazer
