#include "palmgazer/json_io.hpp"

#include <charconv>
#include <cmath>

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

        Json optional_string(const std::optional<std::string> &s)
        {
            return s ? Json(*s) : Json(nullptr);
        }

        Json rect_json(const PanelRect &r)
        {
            return Json::array({quantize(r.u_min), quantize(r.v_min), quantize(r.u_max), quantize(r.v_max)});
        }

        Json vec2_json(Vec2 v) { return Json::array({quantize(v.x), quantize(v.y)}); }

        Json scroll_json(const ScrollState &s)
        {
            return Json{{"offset", vec2_json(s.offset)}, {"min", vec2_json(s.min)}, {"max", vec2_json(s.max)}};
        }

        Json depth_json(const DepthNavState &d)
        {
            return Json{{"layer", d.layer},
                        {"layer_count", d.layer_count},
                        {"start_layer", d.start_layer},
                        {"travel", quantize(d.travel)}};
        }

        Json map_json(const MapView &m)
        {
            return Json{{"center", vec2_json(m.center)}, {"scale", quantize(m.scale)}};
        }

        Json files_json(const FilesState &f)
        {
            Json files = Json::array();
            for (const auto &e : f.files)
            {
                files.push_back(Json{{"id", e.id},
                                     {"name", e.name},
                                     {"size", e.size},
                                     {"type", e.type},
                                     {"modified", e.modified}});
            }
            return Json{{"files", files},
                        {"rows", f.rows},
                        {"scrollable", f.scrollable},
                        {"scroll", scroll_json(f.scroll)},
                        {"detail", optional_string(f.detail)}};
        }

        const Json &require(const Json &j, const char *key)
        {
            if (!j.is_object() || !j.contains(key))
            {
                throw JsonSchemaError(std::string("missing key '") + key + "'");
            }
            return j.at(key);
        }

        double number(const Json &j, const char *key)
        {
            const Json &v = require(j, key);
            if (!v.is_number())
            {
                throw JsonSchemaError(std::string("key '") + key + "' must be a number");
            }
            const double d = v.get<double>();
            if (!std::isfinite(d))
            {
                throw JsonSchemaError(std::string("key '") + key + "' must be finite");
            }
            return d;
        }

        bool boolean(const Json &j, const char *key)
        {
            const Json &v = require(j, key);
            if (!v.is_boolean())
            {
                throw JsonSchemaError(std::string("key '") + key + "' must be a boolean");
            }
            return v.get<bool>();
        }

        template <std::size_t N>
        std::array<double, N> numbers(const Json &j, const char *key)
        {
            const Json &v = require(j, key);
            if (!v.is_array() || v.size() != N)
            {
                throw JsonSchemaError(std::string("key '") + key + "' must be an array of " + std::to_string(N) +
                                      " numbers");
            }
            std::array<double, N> out{};
            for (std::size_t i = 0; i < N; ++i)
            {
                if (!v[i].is_number() || !std::isfinite(v[i].get<double>()))
                {
                    throw JsonSchemaError(std::string("key '") + key + "' must hold finite numbers");
                }
                out[i] = v[i].get<double>();
            }
            return out;
        }

        Vec3 vec3(const Json &j, const char *key)
        {
            const auto a = numbers<3>(j, key);
            return {a[0], a[1], a[2]};
        }

        Orientation quat(const Json &j, const char *key)
        {
            const auto a = numbers<4>(j, key);
            return {a[0], a[1], a[2], a[3]};
        }
    } // namespace

    double quantize(double value) noexcept
    {
        if (!std::isfinite(value) || value == 0.0)
        {
            return value == 0.0 ? 0.0 : value;
        }
        char buf[40];
        const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
        double out = value;
        std::from_chars(buf, res.ptr, out);
        return out;
    }

    namespace
    {
        void write_json(const Json &j, std::string &out)
        {
            switch (j.type())
            {
            case Json::value_t::object:
            {
                out += '{';
                bool first = true;
                for (const auto &[key, value] : j.items())
                {
                    if (!first)
                    {
                        out += ',';
                    }
                    first = false;
                    out += Json(key).dump();
                    out += ':';
                    write_json(value, out);
                }
                out += '}';
                break;
            }
            case Json::value_t::array:
            {
                out += '[';
                for (std::size_t i = 0; i < j.size(); ++i)
                {
                    if (i > 0)
                    {
                        out += ',';
                    }
                    write_json(j[i], out);
                }
                out += ']';
                break;
            }
            case Json::value_t::number_float:
            {
                const double v = j.get<double>();
                if (!std::isfinite(v))
                {
                    out += "null";
                    break;
                }
                char buf[64];
                const auto res = std::to_chars(buf, buf + sizeof buf, v);
                const std::string_view text(buf, static_cast<std::size_t>(res.ptr - buf));
                out += text;
                if (text.find_first_of(".e") == std::string_view::npos)
                {
                    out += ".0";
                }
                break;
            }
            default:
                out += j.dump();
                break;
            }
        }
    } // namespace

    std::string dump_json(const Json &j)
    {
        std::string out;
        write_json(j, out);
        return out;
    }

    Vec3 quantize(Vec3 v) noexcept { return {quantize(v.x), quantize(v.y), quantize(v.z)}; }

    namespace
    {
        Orientation quantize(const Orientation &q) noexcept
        {
            return {palmgazer::quantize(q.w), palmgazer::quantize(q.x), palmgazer::quantize(q.y),
                    palmgazer::quantize(q.z)};
        }
    } // namespace

    TrackingFrame quantize(const TrackingFrame &f) noexcept
    {
        TrackingFrame q = f;
        q.t = quantize(f.t);
        q.head = {quantize(f.head.position), quantize(f.head.orientation)};
        q.gaze = {quantize(f.gaze.origin), quantize(f.gaze.direction)};
        q.hand.palm = {quantize(f.hand.palm.position), quantize(f.hand.palm.orientation)};
        for (double &e : q.hand.finger_extension)
        {
            e = quantize(e);
        }
        q.hand.pinch_gap = quantize(f.hand.pinch_gap);
        return q;
    }

    Json to_json(Vec3 v) { return Json::array({quantize(v.x), quantize(v.y), quantize(v.z)}); }

    Json to_json(const Orientation &q)
    {
        return Json::array({quantize(q.w), quantize(q.x), quantize(q.y), quantize(q.z)});
    }

    Json to_json(const Pose &p) { return Json{{"p", to_json(p.position)}, {"q", to_json(p.orientation)}}; }

    Json to_json(const TrackingFrame &f)
    {
        Json ext = Json::array();
        for (double e : f.hand.finger_extension)
        {
            ext.push_back(quantize(e));
        }
        return Json{
            {"t", quantize(f.t)},
            {"head", to_json(f.head)},
            {"gaze", Json{{"o", to_json(f.gaze.origin)}, {"d", to_json(f.gaze.direction)}, {"valid", f.gaze_valid}}},
            {"hand", Json{{"p", to_json(f.hand.palm.position)},
                          {"q", to_json(f.hand.palm.orientation)},
                          {"ext", ext},
                          {"gap", quantize(f.hand.pinch_gap)},
                          {"valid", f.hand_valid}}},
        };
    }

    TrackingFrame frame_from_json(const Json &j)
    {
        TrackingFrame f;
        f.t = number(j, "t");
        const Json &head = require(j, "head");
        f.head = {vec3(head, "p"), quat(head, "q")};
        const Json &gaze = require(j, "gaze");
        f.gaze = {vec3(gaze, "o"), vec3(gaze, "d")};
        f.gaze_valid = boolean(gaze, "valid");
        const Json &hand = require(j, "hand");
        f.hand.palm = {vec3(hand, "p"), quat(hand, "q")};
        const auto ext = numbers<4>(hand, "ext");
        std::copy(ext.begin(), ext.end(), f.hand.finger_extension.begin());
        f.hand.pinch_gap = number(hand, "gap");
        f.hand_valid = boolean(hand, "valid");
        return f;
    }

    Json to_json(const Element &e)
    {
        return Json{{"id", e.id},
                    {"kind", std::string(to_string(e.kind))},
                    {"label", e.label},
                    {"rect", rect_json(e.rect)},
                    {"snap_exempt", e.snap_exempt}};
    }

    Json to_json(const AppViewModel &vm)
    {
        Json elements = Json::array();
        for (const auto &e : vm.elements)
        {
            elements.push_back(to_json(e));
        }
        Json j{{"app_id", vm.app_id}, {"view", vm.view}, {"status", vm.status}, {"top_bar", vm.top_bar},
               {"elements", elements}};
        j["scroll"] = vm.scroll ? scroll_json(*vm.scroll) : Json(nullptr);
        j["depth"] = vm.depth ? depth_json(*vm.depth) : Json(nullptr);
        j["map"] = vm.map ? map_json(*vm.map) : Json(nullptr);
        return j;
    }

    Json to_json(const SessionState &s)
    {
        Json notifications = Json::array();
        for (const auto &n : s.notifications.items)
        {
            notifications.push_back(Json{{"id", n.id}, {"source", n.source}, {"title", n.title}});
        }
        Json albums = Json::array();
        for (const auto &a : s.gallery.albums)
        {
            Json images = Json::array();
            for (const auto &img : a.images)
            {
                images.push_back(Json{{"id", img.id}, {"caption", img.caption}});
            }
            albums.push_back(Json{{"id", a.id}, {"name", a.name}, {"images", images}});
        }
        Json markers = Json::array();
        for (std::size_t i = 0; i < s.map.markers.size(); ++i)
        {
            const auto &m = s.map.markers[i];
            markers.push_back(Json{{"id", m.id},
                                   {"center", vec2_json(m.center)},
                                   {"radius", quantize(m.radius)},
                                   {"number", m.number},
                                   {"revealed", i < s.map.revealed.size() && s.map.revealed[i]}});
        }
        const auto opt_int = [](const std::optional<int> &v) { return v ? Json(*v) : Json(nullptr); };
        return Json{
            {"active_app", std::string(to_string(s.active_app))},
            {"reference_frame", std::string(to_string(s.reference_frame))},
            {"music", Json{{"tracks", s.music.tracks},
                           {"now_playing", opt_int(s.music.now_playing)},
                           {"status", std::string(to_string(s.music.status))}}},
            {"notifications", Json{{"items", notifications},
                                   {"expanded", optional_string(s.notifications.expanded)},
                                   {"scroll", scroll_json(s.notifications.scroll)},
                                   {"drag_target", optional_string(s.notifications.drag_target)},
                                   {"drag_net_x", quantize(s.notifications.drag_net_x)}}},
            {"downloads", files_json(s.downloads)},
            {"favorites", files_json(s.favorites)},
            {"gallery", Json{{"albums", albums},
                             {"depth", depth_json(s.gallery.depth)},
                             {"album", opt_int(s.gallery.album)},
                             {"image", opt_int(s.gallery.image)}}},
            {"map", Json{{"view", map_json(s.map.view)}, {"markers", markers}}},
        };
    }

    Json to_json(const LogRecord &record)
    {
        Json j{{"t", quantize(record.t)}, {"event", std::string(record.name())}};
        const auto ui = overloaded{
            [](const UiSummoned &, Json &) {},
            [](const UiDismissed &, Json &) {},
            [](const HoverChanged &e, Json &o) {
                o["from"] = optional_string(e.previous);
                o["to"] = optional_string(e.current);
            },
            [](const Selected &e, Json &o) { o["id"] = e.id; },
            [](const DragStarted &e, Json &o) { o["target"] = optional_string(e.target); },
            [](const DragUpdated &e, Json &o) {
                o["dx"] = quantize(e.delta.right);
                o["dy"] = quantize(e.delta.up);
                o["dz"] = quantize(e.delta.forward);
            },
            [](const DragEnded &e, Json &o) { o["committed"] = e.committed; },
        };
        const auto app = overloaded{
            [](const ViewChanged &e, Json &o) {
                o["app"] = e.app;
                o["view"] = e.view;
            },
            [](const FrameChanged &e, Json &o) { o["frame"] = std::string(to_string(e.frame)); },
            [](const PlaybackChanged &e, Json &o) {
                o["track"] = optional_string(e.track);
                o["status"] = std::string(to_string(e.status));
            },
            [](const NotificationHandled &e, Json &o) {
                o["id"] = e.id;
                o["action"] = e.action;
            },
            [](const MarkerRevealed &e, Json &o) { o["marker"] = e.marker; },
        };
        std::visit(overloaded{
                       [&](const UiEventPayload &p) { std::visit([&](const auto &e) { ui(e, j); }, p); },
                       [&](const AppEvent &p) { std::visit([&](const auto &e) { app(e, j); }, p); },
                   },
                   record.body);
        return j;
    }

    std::string_view LogRecord::name() const noexcept
    {
        return std::visit(overloaded{
                              [](const UiEventPayload &p) { return event_name(p); },
                              [](const AppEvent &p) { return app_event_name(p); },
                          },
                          body);
    }

    std::string serialize_record(const LogRecord &record) { return dump_json(to_json(record)); }

    std::string serialize_log(const EventLog &log)
    {
        std::string out;
        for (const auto &r : log)
        {
            out += serialize_record(r);
            out += '\n';
        }
        return out;
    }

} // namespace palmgazer
