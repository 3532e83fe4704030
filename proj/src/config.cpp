#include "palmgazer/config.hpp"

#include "palmgazer/json_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace palmgazer
{
    namespace
    {
        struct NumberKey
        {
            const char *name;
            std::function<double &(Config &)> ref;
        };

        const std::vector<NumberKey> &number_keys()
        {
            static const std::vector<NumberKey> keys{
                {"palm_open_threshold", [](Config &c) -> double & { return c.gestures.palm_open; }},
                {"palm_close_threshold", [](Config &c) -> double & { return c.gestures.palm_close; }},
                {"pinch_down_gap", [](Config &c) -> double & { return c.gestures.pinch_down_gap; }},
                {"pinch_up_gap", [](Config &c) -> double & { return c.gestures.pinch_up_gap; }},
                {"smoothing_window", [](Config &c) -> double & { return c.gestures.smoothing_window; }},
                {"drag_min_displacement", [](Config &c) -> double & { return c.gestures.drag_min_displacement; }},
                {"drag_min_duration", [](Config &c) -> double & { return c.gestures.drag_min_duration; }},
                {"tracking_loss_timeout", [](Config &c) -> double & { return c.gestures.tracking_loss_timeout; }},
                {"summon_duration", [](Config &c) -> double & { return c.summon_duration; }},
                {"on_hand_offset", [](Config &c) -> double & { return c.placement.on_hand_offset; }},
                {"above_hand_rise", [](Config &c) -> double & { return c.placement.above_hand_rise; }},
                {"above_hand_away", [](Config &c) -> double & { return c.placement.above_hand_away; }},
                {"head_distance", [](Config &c) -> double & { return c.placement.head_distance; }},
                {"panel_width", [](Config &c) -> double & { return c.placement.extent.width; }},
                {"panel_height", [](Config &c) -> double & { return c.placement.extent.height; }},
                {"pan_gain", [](Config &c) -> double & { return c.apps.pan_gain; }},
                {"layer_spacing", [](Config &c) -> double & { return c.apps.layer_spacing; }},
                {"zoom_distance_per_doubling", [](Config &c) -> double & { return c.apps.zoom_distance_per_doubling; }},
                {"min_map_scale", [](Config &c) -> double & { return c.apps.min_map_scale; }},
                {"max_map_scale", [](Config &c) -> double & { return c.apps.max_map_scale; }},
                {"shortcut_threshold", [](Config &c) -> double & { return c.apps.shortcut_threshold; }},
                {"marker_reveal_scale", [](Config &c) -> double & { return c.apps.marker_reveal_scale; }},
            };
            return keys;
        }

        void validate(const Config &c)
        {
            const auto positive = [](double v, const char *what) {
                if (!(v > 0.0))
                {
                    throw ConfigError(std::string(what) + " must be positive");
                }
            };
            if (!(c.gestures.palm_close < c.gestures.palm_open))
            {
                throw ConfigError("palm_close_threshold must be below palm_open_threshold");
            }
            if (!(c.gestures.pinch_down_gap < c.gestures.pinch_up_gap))
            {
                throw ConfigError("pinch_down_gap must be below pinch_up_gap");
            }
            positive(c.gestures.smoothing_window, "smoothing_window");
            positive(c.placement.extent.width, "panel_width");
            positive(c.placement.extent.height, "panel_height");
            positive(c.apps.layer_spacing, "layer_spacing");
            positive(c.apps.zoom_distance_per_doubling, "zoom_distance_per_doubling");
            positive(c.apps.min_map_scale, "min_map_scale");
            if (!(c.apps.min_map_scale <= c.apps.max_map_scale))
            {
                throw ConfigError("min_map_scale must not exceed max_map_scale");
            }
        }
    } // namespace

    Config config_from_json_text(const std::string &text)
    {
        Config c;
        Json j;
        try
        {
            j = Json::parse(text);
        }
        catch (const Json::parse_error &e)
        {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!j.is_object())
        {
            throw ConfigError("config must be a JSON object");
        }
        for (const auto &[key, value] : j.items())
        {
            bool found = false;
            for (const auto &k : number_keys())
            {
                if (key == k.name)
                {
                    if (!value.is_number())
                    {
                        throw ConfigError("config key '" + key + "' must be a number");
                    }
                    k.ref(c) = value.get<double>();
                    found = true;
                    break;
                }
            }
            if (found)
            {
                continue;
            }
            if (key == "notification_shortcuts" || key == "head_motion_scroll")
            {
                if (!value.is_boolean())
                {
                    throw ConfigError("config key '" + key + "' must be a boolean");
                }
                (key == "head_motion_scroll" ? c.head_motion_scroll : c.apps.notification_shortcuts) = value.get<bool>();
            }
            else if (key == "initial_app")
            {
                const auto app = value.is_string() ? app_from_string(value.get<std::string>()) : std::nullopt;
                if (!app)
                {
                    throw ConfigError("config key 'initial_app' names no known app");
                }
                c.initial_app = *app;
            }
            else if (key == "reference_frame")
            {
                const auto frame =
                    value.is_string() ? reference_frame_from_string(value.get<std::string>()) : std::nullopt;
                if (!frame)
                {
                    throw ConfigError("config key 'reference_frame' names no known frame");
                }
                c.initial_frame = *frame;
            }
            else
            {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
        c.apps.extent = c.placement.extent;
        validate(c);
        return c;
    }

    std::string config_to_json_text(const Config &config)
    {
        Config copy = config;
        Json j = Json::object();
        for (const auto &k : number_keys())
        {
            j[k.name] = quantize(k.ref(copy));
        }
        j["notification_shortcuts"] = config.apps.notification_shortcuts;
        j["head_motion_scroll"] = config.head_motion_scroll;
        j["initial_app"] = std::string(to_string(config.initial_app));
        j["reference_frame"] = std::string(to_string(config.initial_frame));
        return dump_json(j);
    }

    Config load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
        {
            throw ConfigError("cannot read config file " + path.string());
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        return config_from_json_text(buf.str());
    }

    std::string config_digest(const Config &config)
    {
        const std::string text = config_to_json_text(config);
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char ch : text)
        {
            h ^= ch;
            h *= 1099511628211ull;
        }
        char out[17];
        std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
        return out;
    }

} // namespace palmgazer
