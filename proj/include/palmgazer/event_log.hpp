#pragma once

#include "palmgazer/apps.hpp"
#include "palmgazer/fsm.hpp"

#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

namespace palmgazer
{
    /// One line of the event log: either an interaction event or an
    /// application-level notice it caused.
    struct LogRecord
    {
        double t = 0.0;
        std::variant<UiEventPayload, AppEvent> body;

        std::string_view name() const noexcept;

        template <typename T>
        const T *get() const noexcept
        {
            if constexpr (std::is_constructible_v<UiEventPayload, T>)
            {
                const auto *ui = std::get_if<UiEventPayload>(&body);
                return ui ? std::get_if<T>(ui) : nullptr;
            }
            else
            {
                const auto *app = std::get_if<AppEvent>(&body);
                return app ? std::get_if<T>(app) : nullptr;
            }
        }

        friend bool operator==(const LogRecord &, const LogRecord &) = default;
    };

    using EventLog = std::vector<LogRecord>;

    /// Canonical form: one compact JSON object per line, newline-terminated.
    std::string serialize_record(const LogRecord &record);
    std::string serialize_log(const EventLog &log);

} // namespace palmgazer
