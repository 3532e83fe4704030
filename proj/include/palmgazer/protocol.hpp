#pragma once

#include "palmgazer/engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace palmgazer
{
    struct ProtocolReply
    {
        std::vector<std::string> lines; // each one JSON object, no trailing newline
        bool close = false;
    };

    /// Line-delimited JSON session, transport-agnostic.
    ///
    /// client: {"type":"hello","version":1,"config":{...}} once, then
    ///         {"type":"frame", t, head, gaze, hand} per tracker frame.
    /// server: {"type":"event", t, event, fields...} per log record, then one
    ///         {"type":"state", ...} per hello or frame. Any violation yields
    ///         {"type":"error","message":...} and closes the session.
    class SessionProtocol
    {
    public:
        ProtocolReply handle_line(const std::string &line);

        bool closed() const noexcept { return m_closed; }
        const Engine *engine() const noexcept { return m_engine ? &*m_engine : nullptr; }

    private:
        ProtocolReply fail(const std::string &message);
        std::string state_line() const;

        std::optional<Engine> m_engine;
        bool m_closed = false;
    };

} // namespace palmgazer
