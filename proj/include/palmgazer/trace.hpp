#pragma once

#include "palmgazer/apps.hpp"
#include "palmgazer/config.hpp"
#include "palmgazer/engine.hpp"
#include "palmgazer/event_log.hpp"
#include "palmgazer/input.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace palmgazer
{
    struct TraceHeader
    {
        int version = 1;
        int frame_rate = 90;
        std::uint64_t seed = 0;
        std::string config; // digest of the config the trace was generated with
        std::optional<std::string> scenario;
        std::optional<std::string> target;
        std::optional<AppId> initial_app;
        std::optional<ReferenceFrame> reference_frame;

        friend bool operator==(const TraceHeader &, const TraceHeader &) = default;
    };

    struct Trace
    {
        TraceHeader header;
        std::vector<TrackingFrame> frames;

        friend bool operator==(const Trace &, const Trace &) = default;
    };

    /// Malformed trace text. `line()` is 1-based.
    class TraceParseError : public std::runtime_error
    {
    public:
        TraceParseError(std::size_t line, const std::string &what);
        std::size_t line() const noexcept { return m_line; }

    private:
        std::size_t m_line;
    };

    /// Header line, then one frame per line; floats at 9 significant digits.
    std::string serialize_trace(const Trace &trace);

    /// Checks the header, strictly increasing t, finite numbers, unit
    /// quaternions and gaze directions, ext in [0,1] and a non-negative gap.
    Trace parse_trace(const std::string &text);

    Trace read_trace(const std::filesystem::path &path);
    void write_trace(const std::filesystem::path &path, const Trace &trace);

    /// Validates one frame against the trace schema; throws std::invalid_argument.
    void validate_frame(const TrackingFrame &frame);

    struct ReplayResult
    {
        EventLog log;
        SessionState final_session;
        InteractionState final_fsm;
        std::vector<std::string> diagnostics;
    };

    /// Start state for a trace: header fields override the config's initial
    /// app and reference frame.
    Config effective_config(const Trace &trace, Config config);

    ReplayResult replay(const Trace &trace, const Config &config = {});

} // namespace palmgazer
