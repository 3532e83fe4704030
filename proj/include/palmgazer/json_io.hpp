#pragma once

#include "palmgazer/apps.hpp"
#include "palmgazer/event_log.hpp"
#include "palmgazer/geometry.hpp"
#include "palmgazer/input.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace palmgazer
{
    using Json = nlohmann::ordered_json;

    /// Rounds to 9 significant decimal digits. Every floating-point value
    /// written to traces, logs and protocol messages goes through this, so
    /// the text form is stable and parse(serialize(x)) is exact.
    double quantize(double value) noexcept;

    Vec3 quantize(Vec3 v) noexcept;
    TrackingFrame quantize(const TrackingFrame &frame) noexcept;

    /// Compact JSON text with floats in shortest round-trip form. Applied to
    /// quantized values this never exceeds 9 significant digits; whole
    /// floats keep a ".0" so they read back as floating point.
    std::string dump_json(const Json &j);

    class JsonSchemaError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    Json to_json(Vec3 v);
    Json to_json(const Orientation &q);
    Json to_json(const Pose &p);
    Json to_json(const TrackingFrame &frame); // keys t, head, gaze, hand
    Json to_json(const Element &e);
    Json to_json(const AppViewModel &vm);
    Json to_json(const SessionState &s);
    Json to_json(const LogRecord &record);    // keys t, event, fields...

    /// Reads the frame keys (t, head, gaze, hand) from an object; extra keys
    /// are ignored. Throws JsonSchemaError on missing or mistyped fields.
    TrackingFrame frame_from_json(const Json &j);

} // namespace palmgazer
