#pragma once

#include "palmgazer/apps.hpp"
#include "palmgazer/fsm.hpp"
#include "palmgazer/input.hpp"
#include "palmgazer/reference_frames.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace palmgazer
{
    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Every tunable constant of the engine. Defaults reproduce the
    /// published prototype where it states a value.
    struct Config
    {
        GestureThresholds gestures{};
        double summon_duration = 0.250;
        PlacementParams placement{};
        AppParams apps{};
        bool head_motion_scroll = false;
        AppId initial_app = AppId::Home;
        ReferenceFrame initial_frame = ReferenceFrame::OnHand;

        FsmParams fsm_params() const noexcept { return {summon_duration, gestures}; }
        friend bool operator==(const Config &, const Config &) = default;
    };

    /// Flat JSON object, one key per constant. Unknown keys are rejected;
    /// missing keys keep their defaults.
    Config config_from_json_text(const std::string &text);
    std::string config_to_json_text(const Config &config);
    Config load_config(const std::filesystem::path &path);

    /// 16 hex digits (FNV-1a 64) over the canonical JSON form.
    std::string config_digest(const Config &config);

} // namespace palmgazer
