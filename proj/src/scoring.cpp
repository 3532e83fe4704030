#include "palmgazer/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace palmgazer
{
    namespace
    {
        std::string album_of(const std::string &image_id)
        {
            const auto dot = image_id.find('.');
            return dot == std::string::npos ? image_id : image_id.substr(0, dot);
        }

        bool reaches_goal(const LogRecord &r, const TaskSpec &task)
        {
            switch (task.kind)
            {
            case GoalKind::Selected:
            {
                const auto *s = r.get<Selected>();
                return s != nullptr && s->id == task.target;
            }
            case GoalKind::ViewReached:
            {
                const auto *v = r.get<ViewChanged>();
                return v != nullptr && v->view == task.target;
            }
            case GoalKind::MarkerRevealed:
            {
                const auto *m = r.get<MarkerRevealed>();
                return m != nullptr && m->marker == task.target;
            }
            }
            return false;
        }
    } // namespace

    std::string_view to_string(GoalKind kind) noexcept
    {
        switch (kind)
        {
        case GoalKind::Selected:
            return "Selected";
        case GoalKind::ViewReached:
            return "ViewReached";
        case GoalKind::MarkerRevealed:
            return "MarkerRevealed";
        }
        return "Selected";
    }

    std::optional<GoalKind> goal_kind_from_string(std::string_view s) noexcept
    {
        for (GoalKind k : {GoalKind::Selected, GoalKind::ViewReached, GoalKind::MarkerRevealed})
        {
            if (to_string(k) == s)
            {
                return k;
            }
        }
        return std::nullopt;
    }

    std::optional<TaskSpec> task_for(std::string_view scenario, const std::string &target)
    {
        TaskSpec t;
        t.scenario = std::string(scenario);
        if (scenario == "music-quick-play")
        {
            t.kind = GoalKind::Selected;
            t.target = target;
            t.intended_path = {target};
        }
        else if (scenario == "favorites-find-file")
        {
            t.kind = GoalKind::ViewReached;
            t.target = "favorites/detail/" + target;
            t.intended_path = {"app.favorites", target};
        }
        else if (scenario == "gallery-find-image")
        {
            t.kind = GoalKind::ViewReached;
            t.target = "gallery/image/" + target;
            t.intended_path = {"app.gallery", album_of(target), target};
        }
        else if (scenario == "map-find-marker")
        {
            t.kind = GoalKind::MarkerRevealed;
            t.target = target;
            t.intended_path = {"app.map"};
        }
        else
        {
            return std::nullopt;
        }
        return t;
    }

    Metrics score(const EventLog &log, const TaskSpec &task)
    {
        Metrics m;
        std::optional<double> summoned;
        for (const LogRecord &r : log)
        {
            if (!summoned && r.get<UiSummoned>() != nullptr)
            {
                summoned = r.t;
            }
            if (const auto *s = r.get<Selected>())
            {
                ++m.selection_count;
                if (std::find(task.intended_path.begin(), task.intended_path.end(), s->id) ==
                    task.intended_path.end())
                {
                    ++m.erroneous_selection_count;
                }
            }
            if (const auto *d = r.get<DragUpdated>())
            {
                m.total_drag_path += std::sqrt(d->delta.right * d->delta.right + d->delta.up * d->delta.up +
                                               d->delta.forward * d->delta.forward);
            }
            if (!m.completion && reaches_goal(r, task))
            {
                m.completion = true;
                m.time_to_complete = r.t - summoned.value_or(0.0);
            }
        }
        return m;
    }

    std::string format_metrics(const Metrics &m)
    {
        char time[32] = "n/a";
        if (m.time_to_complete)
        {
            std::snprintf(time, sizeof time, "%.3f", *m.time_to_complete);
        }
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "completion=%s time_to_complete=%s selections=%d erroneous=%d drag_path=%.4f",
                      m.completion ? "true" : "false", time, m.selection_count, m.erroneous_selection_count,
                      m.total_drag_path);
        return buf;
    }

} // namespace palmgazer
