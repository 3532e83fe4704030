#pragma once

#include "palmgazer/event_log.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace palmgazer
{
    enum class GoalKind
    {
        Selected,       // a Selected event with the target id
        ViewReached,    // a ViewChanged event whose view equals the target
        MarkerRevealed, // a MarkerRevealed event for the target marker
    };

    std::string_view to_string(GoalKind kind) noexcept;
    std::optional<GoalKind> goal_kind_from_string(std::string_view s) noexcept;

    struct TaskSpec
    {
        std::string scenario;
        GoalKind kind = GoalKind::Selected;
        std::string target;
        std::vector<std::string> intended_path; // ids whose selection is not an error
    };

    /// Task of a bundled scenario for the given target, e.g.
    /// ("gallery-find-image", "album1.image7"). Empty for fuzz-random and
    /// unknown names.
    std::optional<TaskSpec> task_for(std::string_view scenario, const std::string &target);

    struct Metrics
    {
        bool completion = false;
        std::optional<double> time_to_complete; // goal time minus first UiSummoned
        int selection_count = 0;
        int erroneous_selection_count = 0;
        double total_drag_path = 0.0; // sum of DragUpdated delta lengths, meters
    };

    Metrics score(const EventLog &log, const TaskSpec &task);

    /// One-line human-readable summary.
    std::string format_metrics(const Metrics &m);

} // namespace palmgazer
