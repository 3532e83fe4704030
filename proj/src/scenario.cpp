#include "palmgazer/scenario.hpp"

#include "palmgazer/engine.hpp"
#include "palmgazer/json_io.hpp"
#include "palmgazer/scoring.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace palmgazer
{
    namespace
    {
        constexpr std::array<std::string_view, 5> kNames{"music-quick-play", "favorites-find-file",
                                                         "gallery-find-image", "map-find-marker", "fuzz-random"};

        constexpr double kExtClosed = 0.10;
        constexpr double kExtOpen = 0.95;
        constexpr double kGapOpen = 0.060;
        constexpr double kGapPinched = 0.005;
        constexpr double kDepthPush = 0.060;   // a bit over one layer, under one and a half
        constexpr double kZoomPush = 0.052;    // slightly over one doubling
        constexpr double kMaxPan = 0.12;
        constexpr double kMaxDuration = 60.0;

        const Pose kHead{{0.0, 1.60, 0.0}, Orientation::identity()};
        const Vec3 kPalmBase{0.02, 1.30, -0.33};

        double minimum_jerk(double tau) noexcept
        {
            tau = std::clamp(tau, 0.0, 1.0);
            return tau * tau * tau * (10.0 - 15.0 * tau + 6.0 * tau * tau);
        }

        /// Offsets a unit direction by two small angles (radians) about axes
        /// perpendicular to it.
        Vec3 perturb(Vec3 dir, double yaw, double pitch)
        {
            Vec3 side = cross(dir, world_up);
            if (norm(side) < 1e-9)
            {
                side = {1.0, 0.0, 0.0};
            }
            side = normalize(side);
            const Vec3 up = cross(side, dir);
            return normalize(dir + side * std::tan(yaw) + up * std::tan(pitch));
        }

        struct Fixation
        {
            std::optional<std::string> element;
            std::optional<PanelPoint> point;
            double yaw = 0.0;
            double pitch = 0.0;
        };

        class TaskBuilder
        {
        public:
            TaskBuilder(std::uint64_t seed, const ScenarioOptions &options, AppId start_app)
                : m_rng(seed ^ 0x5eedf00dULL), m_options(options)
            {
                Config cfg = options.config;
                cfg.initial_app = start_app;
                cfg.initial_frame = options.frame;
                m_engine = Engine(cfg);
                m_dt = 1.0 / m_trace.header.frame_rate;
                m_trace.header.seed = seed;
                m_trace.header.config = config_digest(options.config);
                m_trace.header.initial_app = start_app;
                m_trace.header.reference_frame = options.frame;
                m_palm = kPalmBase;
            }

            Trace finish(std::string name, std::string target)
            {
                m_trace.header.scenario = std::move(name);
                m_trace.header.target = std::move(target);
                return std::move(m_trace);
            }

            bool out_of_time() const noexcept { return elapsed() > kMaxDuration; }
            double elapsed() const noexcept { return static_cast<double>(m_trace.frames.size()) * m_dt; }

            const Engine &engine() const noexcept { return m_engine; }
            const EventLog &log() const noexcept { return m_log; }
            std::string view() const { return m_engine.view_model().view; }

            // ---- low-level motion ---------------------------------------

            void hold(double seconds)
            {
                const int n = std::max(1, static_cast<int>(std::lround(seconds / m_dt)));
                for (int i = 0; i < n; ++i)
                {
                    emit();
                }
            }

            /// Moves palm, finger extension and pinch gap together along
            /// minimum-jerk profiles.
            void move(Vec3 palm_to, double ext_to, double gap_to, double seconds)
            {
                const Vec3 palm_from = m_palm;
                const double ext_from = m_ext;
                const double gap_from = m_gap;
                const int n = std::max(1, static_cast<int>(std::lround(seconds / m_dt)));
                for (int i = 1; i <= n; ++i)
                {
                    const double s = minimum_jerk(static_cast<double>(i) / n);
                    m_palm = palm_from + (palm_to - palm_from) * s;
                    m_ext = ext_from + (ext_to - ext_from) * s;
                    m_gap = gap_from + (gap_to - gap_from) * s;
                    emit();
                }
            }

            void fixate_element(const std::string &id)
            {
                m_fix = Fixation{id, std::nullopt, 0.0, 0.0};
                draw_noise();
            }

            void fixate_point(PanelPoint p)
            {
                m_fix = Fixation{std::nullopt, p, 0.0, 0.0};
                draw_noise();
            }

            // ---- gestures -----------------------------------------------

            void open_palm()
            {
                move(m_palm, kExtOpen, kGapOpen, 0.15);
            }

            void close_palm()
            {
                move(m_palm, kExtClosed, kGapOpen, 0.15);
            }

            /// Looks at the element until the engine reports it as hovered
            /// for a few frames; re-aims (fresh noise) after each timeout.
            bool acquire_hover(const std::string &id)
            {
                return acquire(id, [&] { return m_engine.interaction().hover == id; });
            }

            /// Same, for snap-exempt regions: waits for the gaze point to
            /// land inside the element's rectangle.
            bool acquire_gaze_in(const std::string &id)
            {
                return acquire(id, [&] {
                    const Element *e = element(id);
                    const auto &g = m_engine.gaze_point();
                    return e != nullptr && g && e->rect.contains(*g);
                });
            }

            /// Quick pinch and release; returns true when `id` was selected.
            bool click(const std::string &id)
            {
                if (!acquire_hover(id))
                {
                    return false;
                }
                const std::size_t mark = m_log.size();
                move(m_palm, m_ext, kGapPinched, 0.08);
                hold(0.04);
                move(m_palm, m_ext, kGapOpen, 0.08);
                hold(0.10);
                for (std::size_t i = mark; i < m_log.size(); ++i)
                {
                    if (const auto *s = m_log[i].get<Selected>(); s && s->id == id)
                    {
                        return true;
                    }
                }
                return false;
            }

            /// Pinch, translate the palm by `offset` world meters, release,
            /// then bring the hand back to its rest position.
            void drag(Vec3 offset)
            {
                move(m_palm, m_ext, kGapPinched, 0.08);
                hold(0.03);
                move(m_palm + offset, m_ext, kGapPinched, 0.40);
                hold(0.12);
                move(m_palm, m_ext, kGapOpen, 0.08);
                hold(0.06);
                move(kPalmBase, m_ext, kGapOpen, 0.35);
                hold(0.10);
            }

            /// Into the panel, the direction that counts as forward for drags.
            Vec3 into_panel() const { return -m_engine.placement().pose.orientation.z_axis(); }

            Vec3 panel_right() const { return m_engine.placement().pose.orientation.x_axis(); }
            Vec3 panel_up() const { return m_engine.placement().pose.orientation.y_axis(); }

            const Element *element(const std::string &id) const
            {
                for (const Element &e : m_engine.view_model().elements)
                {
                    if (e.id == id)
                    {
                        return &e;
                    }
                }
                return nullptr;
            }

            bool logged_goal(const TaskSpec &task) const { return score(m_log, task).completion; }

            DeterministicRng &rng() noexcept { return m_rng; }

        private:
            template <typename Pred>
            bool acquire(const std::string &id, Pred ready)
            {
                constexpr int kDwellFrames = 3;
                constexpr double kTimeout = 0.40;
                fixate_element(id);
                for (int attempt = 0; attempt < 8 && !out_of_time(); ++attempt)
                {
                    int dwell = 0;
                    const int limit = static_cast<int>(std::lround(kTimeout / m_dt));
                    for (int i = 0; i < limit; ++i)
                    {
                        emit();
                        dwell = ready() ? dwell + 1 : 0;
                        if (dwell >= kDwellFrames)
                        {
                            return true;
                        }
                    }
                    draw_noise(); // corrective saccade
                }
                return false;
            }

            void draw_noise()
            {
                const double sigma = m_options.gaze_noise_deg * std::numbers::pi / 180.0;
                m_fix.yaw = sigma * m_rng.normal();
                m_fix.pitch = sigma * m_rng.normal();
            }

            PanelPoint aim_point()
            {
                if (m_fix.element)
                {
                    if (const Element *e = element(*m_fix.element))
                    {
                        m_last_aim = e->rect.center();
                        return *m_last_aim;
                    }
                }
                else if (m_fix.point)
                {
                    m_last_aim = *m_fix.point;
                }
                return m_last_aim.value_or(PanelPoint{0.5, 0.5});
            }

            void emit()
            {
                TrackingFrame f;
                f.t = static_cast<double>(m_trace.frames.size()) * m_dt;
                f.head = kHead;
                f.hand.palm = {m_palm, billboard_toward(m_palm, kHead.position)};
                f.hand.finger_extension.fill(m_ext);
                f.hand.pinch_gap = m_gap;
                f.hand_valid = true;
                f.gaze = {kHead.position, kHead.forward()};
                f.gaze_valid = true;
                f = quantize(f);

                // The panel pose does not depend on gaze: probe it on a fork.
                Engine probe = m_engine;
                probe.step(f);
                const UiPlacement &placement = probe.placement();
                const Vec3 target = panel_point_to_world(aim_point(), placement.pose, placement.extent);
                f.gaze.direction = perturb(normalize(target - kHead.position), m_fix.yaw, m_fix.pitch);
                f = quantize(f);

                FrameResult r = m_engine.step(f);
                for (auto &rec : r.records)
                {
                    m_log.push_back(std::move(rec));
                }
                m_trace.frames.push_back(f);
            }

            DeterministicRng m_rng;
            ScenarioOptions m_options;
            Engine m_engine;
            Trace m_trace;
            EventLog m_log;
            double m_dt = 1.0 / 90.0;
            Vec3 m_palm;
            double m_ext = kExtClosed;
            double m_gap = kGapOpen;
            Fixation m_fix{std::nullopt, PanelPoint{0.5, 0.5}, 0.0, 0.0};
            std::optional<PanelPoint> m_last_aim;
        };

        /// Rest, open the palm, glance at the middle of the menu.
        void summon(TaskBuilder &b)
        {
            b.fixate_point({0.5, 0.5});
            b.hold(0.20);
            b.open_palm();
            b.hold(0.10);
        }

        void dismiss(TaskBuilder &b)
        {
            b.hold(0.20);
            b.close_palm();
            b.hold(0.10);
        }

        /// Selects `id` and expects `view` to follow, retrying a few times.
        bool open_view(TaskBuilder &b, const std::string &id, const std::string &view,
                       const std::string &recover = std::string(kHomeButton))
        {
            for (int attempt = 0; attempt < 4 && !b.out_of_time(); ++attempt)
            {
                if (b.view() == view)
                {
                    return true;
                }
                if (b.element(id) == nullptr)
                {
                    b.click(recover);
                    continue;
                }
                b.click(id);
            }
            return b.view() == view;
        }

        Trace music_quick_play(std::uint64_t seed, const ScenarioOptions &options)
        {
            TaskBuilder b(seed, options, AppId::Music);
            const std::string target =
                options.target.value_or("track" + std::to_string(b.rng().index(12)));
            const auto task = *task_for("music-quick-play", target);
            summon(b);
            for (int attempt = 0; attempt < 4 && !b.logged_goal(task) && !b.out_of_time(); ++attempt)
            {
                b.click(target);
            }
            dismiss(b);
            return b.finish("music-quick-play", target);
        }

        Trace favorites_find_file(std::uint64_t seed, const ScenarioOptions &options)
        {
            TaskBuilder b(seed, options, AppId::Home);
            const std::string target = options.target.value_or("fav" + std::to_string(b.rng().index(8)));
            const std::string goal_view = "favorites/detail/" + target;
            summon(b);
            for (int attempt = 0; attempt < 8 && b.view() != goal_view && !b.out_of_time(); ++attempt)
            {
                if (b.view().rfind("favorites/detail/", 0) == 0)
                {
                    b.click("back");
                }
                else if (b.view() != "favorites")
                {
                    open_view(b, "app.favorites", "favorites");
                }
                else
                {
                    b.click(target);
                }
            }
            dismiss(b);
            return b.finish("favorites-find-file", target);
        }

        /// One layer up or down with a pinch-drag toward or away from the panel,
        /// the gaze resting on `look_at` (if given) throughout.
        void depth_step(TaskBuilder &b, int direction, const std::optional<std::string> &look_at)
        {
            if (look_at)
            {
                b.acquire_hover(*look_at);
            }
            b.drag(b.into_panel() * (kDepthPush * direction));
        }

        Trace gallery_find_image(std::uint64_t seed, const ScenarioOptions &options)
        {
            TaskBuilder b(seed, options, AppId::Home);
            std::string target;
            if (options.target)
            {
                target = *options.target;
            }
            else
            {
                const int album = b.rng().index(3);
                const int image = b.rng().index(9);
                target = "album" + std::to_string(album) + ".image" + std::to_string(image);
            }
            const std::string album_id = target.substr(0, target.find('.'));
            const std::string album_view = "gallery/album/" + album_id;
            const std::string goal_view = "gallery/image/" + target;

            summon(b);
            for (int attempt = 0; attempt < 8 && b.view() != goal_view && !b.out_of_time(); ++attempt)
            {
                const std::string v = b.view();
                if (v.rfind("gallery/", 0) != 0)
                {
                    open_view(b, "app.gallery", "gallery/albums");
                }
                else if (v == "gallery/albums")
                {
                    depth_step(b, +1, album_id);
                }
                else if (v == album_view)
                {
                    depth_step(b, +1, target);
                }
                else
                {
                    depth_step(b, -1, std::nullopt); // wrong album or image: back out one layer
                }
            }
            dismiss(b);
            return b.finish("gallery-find-image", target);
        }

        Trace map_find_marker(std::uint64_t seed, const ScenarioOptions &options)
        {
            TaskBuilder b(seed, options, AppId::Home);
            const std::string target = options.target.value_or("marker" + std::to_string(b.rng().index(3)));
            const auto task = *task_for("map-find-marker", target);
            const AppParams &params = options.config.apps;

            summon(b);
            open_view(b, "app.map", "map");
            for (int attempt = 0; attempt < 8 && !b.logged_goal(task) && !b.out_of_time(); ++attempt)
            {
                if (b.view() != "map")
                {
                    open_view(b, "app.map", "map");
                    continue;
                }
                const MapState &map = b.engine().session().map;
                const auto it = std::find_if(map.markers.begin(), map.markers.end(),
                                             [&](const MapMarker &m) { return m.id == target; });
                if (it == map.markers.end())
                {
                    break;
                }
                const MapParams mp = params.map_params();
                const PanelPoint at = map_content_to_panel(map.view, it->center, mp);
                const bool centered = std::abs(at.u - 0.5) < 0.08 && std::abs(at.v - 0.5) < 0.08;
                if (!centered && map.view.scale < mp.max_scale - 1e-9)
                {
                    // Pan the marker toward the middle of the panel.
                    const double sign =
                        peephole_mode_for(b.engine().session().reference_frame) == PeepholeMode::Dynamic ? 1.0
                                                                                                        : -1.0;
                    const double meters_per_unit = mp.extent.width / (mp.pan_gain * map.view.scale);
                    double dx = (it->center.x - map.view.center.x) * meters_per_unit * sign;
                    double dy = (it->center.y - map.view.center.y) * meters_per_unit * sign;
                    const double len = std::hypot(dx, dy);
                    if (len > kMaxPan)
                    {
                        dx *= kMaxPan / len;
                        dy *= kMaxPan / len;
                    }
                    b.fixate_point({0.5, 0.45});
                    b.hold(0.15);
                    b.drag(b.panel_right() * dx + b.panel_up() * dy);
                    continue;
                }
                if (map.view.scale > params.marker_reveal_scale)
                {
                    if (b.element(target) != nullptr)
                    {
                        b.acquire_gaze_in(target);
                    }
                    b.drag(b.into_panel() * kZoomPush);
                    continue;
                }
                // Zoomed in but the marker is clipped: zoom out one step and retry.
                b.fixate_point({0.5, 0.45});
                b.drag(b.into_panel() * -kZoomPush);
            }
            dismiss(b);
            return b.finish("map-find-marker", target);
        }

        Trace fuzz_random(std::uint64_t seed, const ScenarioOptions &options)
        {
            DeterministicRng rng(seed ^ 0xf022ULL);
            Trace trace;
            trace.header.seed = seed;
            trace.header.config = config_digest(options.config);
            trace.header.scenario = "fuzz-random";
            trace.header.initial_app = AppId::Home;
            trace.header.reference_frame = options.frame;
            const double dt = 1.0 / trace.header.frame_rate;

            struct Key
            {
                Vec3 palm;
                double ext;
                double gap;
                double yaw;
                double pitch;
            };
            auto draw = [&] {
                const int ext_mode = rng.index(3);
                const int gap_mode = rng.index(3);
                return Key{
                    kPalmBase + Vec3{rng.uniform(-0.10, 0.10), rng.uniform(-0.10, 0.10), rng.uniform(-0.10, 0.10)},
                    ext_mode == 0 ? kExtClosed : ext_mode == 1 ? kExtOpen : rng.uniform(),
                    gap_mode == 0 ? kGapPinched : gap_mode == 1 ? kGapOpen : rng.uniform(0.0, 0.08),
                    rng.uniform(-0.6, 0.6),
                    rng.uniform(-0.8, 0.3),
                };
            };

            Key from = draw();
            int frame = 0;
            while (frame < options.fuzz_frames)
            {
                const Key to = draw();
                const int len = 1 + rng.index(40);
                const bool hand_valid = rng.uniform() > 0.1;
                const bool gaze_valid = rng.uniform() > 0.1;
                for (int i = 1; i <= len && frame < options.fuzz_frames; ++i, ++frame)
                {
                    const double s = static_cast<double>(i) / len;
                    TrackingFrame f;
                    f.t = frame * dt;
                    f.head = kHead;
                    const Vec3 palm = from.palm + (to.palm - from.palm) * s;
                    f.hand.palm = {palm, billboard_toward(palm, kHead.position)};
                    f.hand.finger_extension.fill(std::clamp(from.ext + (to.ext - from.ext) * s, 0.0, 1.0));
                    // Independent per-finger jitter keeps the palm classifier honest.
                    for (double &e : f.hand.finger_extension)
                    {
                        e = std::clamp(e + rng.uniform(-0.05, 0.05), 0.0, 1.0);
                    }
                    f.hand.pinch_gap = std::max(0.0, from.gap + (to.gap - from.gap) * s);
                    f.hand_valid = hand_valid;
                    const double yaw = from.yaw + (to.yaw - from.yaw) * s;
                    const double pitch = from.pitch + (to.pitch - from.pitch) * s;
                    f.gaze = {kHead.position, perturb(kHead.forward(), yaw, pitch)};
                    f.gaze_valid = gaze_valid;
                    trace.frames.push_back(quantize(f));
                }
                from = to;
            }
            return trace;
        }
    } // namespace

    double DeterministicRng::uniform() noexcept
    {
        return static_cast<double>(m_engine() >> 11) * 0x1.0p-53;
    }

    int DeterministicRng::index(int n) noexcept
    {
        return n <= 0 ? 0 : std::min(n - 1, static_cast<int>(uniform() * n));
    }

    double DeterministicRng::normal() noexcept
    {
        if (m_spare)
        {
            const double s = *m_spare;
            m_spare.reset();
            return s;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
        {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        m_spare = r * std::sin(a);
        return r * std::cos(a);
    }

    std::span<const std::string_view> scenario_names() noexcept { return kNames; }

    Trace generate_scenario(std::string_view name, std::uint64_t seed, const ScenarioOptions &options)
    {
        if (name == "music-quick-play")
        {
            return music_quick_play(seed, options);
        }
        if (name == "favorites-find-file")
        {
            return favorites_find_file(seed, options);
        }
        if (name == "gallery-find-image")
        {
            return gallery_find_image(seed, options);
        }
        if (name == "map-find-marker")
        {
            return map_find_marker(seed, options);
        }
        if (name == "fuzz-random")
        {
            return fuzz_random(seed, options);
        }
        throw UnknownScenarioError("unknown scenario '" + std::string(name) + "'");
    }

} // namespace palmgazer
