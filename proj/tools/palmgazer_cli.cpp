// palmgazer: replay traces, generate scenarios, validate traces, serve sessions.

#include "palmgazer/config.hpp"
#include "palmgazer/scenario.hpp"
#include "palmgazer/scoring.hpp"
#include "palmgazer/server.hpp"
#include "palmgazer/trace.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>

namespace
{
    using namespace palmgazer;

    constexpr int kExitOk = 0;
    constexpr int kExitUsage = 1;
    constexpr int kExitParse = 2;
    constexpr int kExitGoal = 3;

    SessionServer *g_server = nullptr;

    void on_signal(int)
    {
        if (g_server != nullptr)
        {
            g_server->stop();
        }
    }

    /// NAME is a bundled scenario (target taken from the trace header) or
    /// an explicit goal "Kind:target", e.g. "Selected:track4".
    std::optional<TaskSpec> resolve_goal(const std::string &name, const TraceHeader &header)
    {
        const auto colon = name.find(':');
        if (colon != std::string::npos)
        {
            const auto kind = goal_kind_from_string(name.substr(0, colon));
            if (!kind)
            {
                return std::nullopt;
            }
            TaskSpec t;
            t.scenario = header.scenario.value_or("");
            t.kind = *kind;
            t.target = name.substr(colon + 1);
            if (header.scenario && header.target)
            {
                if (auto bundled = task_for(*header.scenario, *header.target))
                {
                    t.intended_path = bundled->intended_path;
                }
            }
            return t;
        }
        return task_for(name, header.target.value_or(""));
    }

    int cmd_replay(const std::string &trace_path, const std::string &config_path, const std::string &out_path,
                   const std::string &expect_goal)
    {
        Config config;
        if (!config_path.empty())
        {
            try
            {
                config = load_config(config_path);
            }
            catch (const std::exception &e)
            {
                std::cerr << "config error: " << e.what() << '\n';
                return kExitParse;
            }
        }
        Trace trace;
        try
        {
            trace = read_trace(trace_path);
        }
        catch (const TraceParseError &e)
        {
            std::cerr << trace_path << ": " << e.what() << '\n';
            return kExitParse;
        }
        catch (const std::exception &e)
        {
            std::cerr << e.what() << '\n';
            return kExitParse;
        }
        if (trace.header.config != config_digest(config))
        {
            std::cerr << "note: trace was generated with config " << trace.header.config << ", replaying with "
                      << config_digest(config) << '\n';
        }

        const ReplayResult result = replay(trace, config);
        const std::string log = serialize_log(result.log);
        if (out_path.empty() || out_path == "-")
        {
            std::cout << log;
        }
        else
        {
            std::ofstream out(out_path, std::ios::binary);
            if (!out)
            {
                std::cerr << "cannot write " << out_path << '\n';
                return kExitUsage;
            }
            out << log;
        }
        for (const auto &d : result.diagnostics)
        {
            std::cerr << "diagnostic: " << d << '\n';
        }

        std::optional<TaskSpec> task;
        if (!expect_goal.empty())
        {
            task = resolve_goal(expect_goal, trace.header);
            if (!task)
            {
                std::cerr << "unknown goal '" << expect_goal << "'\n";
                return kExitUsage;
            }
        }
        else if (trace.header.scenario && trace.header.target)
        {
            task = task_for(*trace.header.scenario, *trace.header.target);
        }

        std::cerr << "frames=" << trace.frames.size() << " events=" << result.log.size() << '\n';
        if (task)
        {
            const Metrics m = score(result.log, *task);
            std::cerr << "goal " << to_string(task->kind) << ':' << task->target << ' ' << format_metrics(m) << '\n';
            if (!expect_goal.empty() && !m.completion)
            {
                return kExitGoal;
            }
        }
        return kExitOk;
    }

    int cmd_scenario(const std::string &name, std::uint64_t seed, const std::string &out_path, double noise,
                     const std::string &config_path)
    {
        ScenarioOptions options;
        options.gaze_noise_deg = noise;
        if (!config_path.empty())
        {
            options.config = load_config(config_path);
        }
        Trace trace;
        try
        {
            trace = generate_scenario(name, seed, options);
        }
        catch (const UnknownScenarioError &e)
        {
            std::cerr << e.what() << '\n';
            return kExitUsage;
        }
        if (out_path.empty() || out_path == "-")
        {
            std::cout << serialize_trace(trace);
        }
        else
        {
            write_trace(out_path, trace);
        }
        return kExitOk;
    }

    int cmd_validate(const std::string &trace_path)
    {
        try
        {
            const Trace trace = read_trace(trace_path);
            std::cout << trace_path << ": ok, " << trace.frames.size() << " frames\n";
            return kExitOk;
        }
        catch (const TraceParseError &e)
        {
            std::cerr << trace_path << ": " << e.what() << '\n';
        }
        catch (const std::exception &e)
        {
            std::cerr << e.what() << '\n';
        }
        return kExitParse;
    }

    int cmd_serve(std::uint16_t port, const std::string &address)
    {
        SessionServer server(port, address);
        g_server = &server;
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        std::cout << "listening on " << address << ':' << server.port() << std::endl;
        server.run();
        g_server = nullptr;
        return kExitOk;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"PalmGazer menu engine: replay, scenario, validate, serve"};
    app.require_subcommand(1);

    std::string trace_path;
    std::string config_path;
    std::string out_path;
    std::string expect_goal;
    auto *replay_cmd = app.add_subcommand("replay", "Replay a trace and write the event log");
    replay_cmd->add_option("--trace", trace_path, "Trace file")->required();
    replay_cmd->add_option("--config", config_path, "Config file (JSON); defaults when omitted");
    replay_cmd->add_option("--out", out_path, "Event log output ('-' for stdout)");
    replay_cmd->add_option("--expect-goal", expect_goal,
                           "Scenario name or Kind:target; exit 3 when the goal is not reached");

    std::string name;
    std::uint64_t seed = 0;
    double noise = 1.0;
    auto *scenario_cmd = app.add_subcommand("scenario", "Generate a synthetic scenario trace");
    scenario_cmd->add_option("--name", name, "Scenario name")->required();
    scenario_cmd->add_option("--seed", seed, "Random seed")->required();
    scenario_cmd->add_option("--out", out_path, "Trace output ('-' for stdout)")->required();
    scenario_cmd->add_option("--gaze-noise", noise, "Gaze noise sigma in degrees")->check(CLI::NonNegativeNumber);
    scenario_cmd->add_option("--config", config_path, "Config file (JSON)");

    auto *validate_cmd = app.add_subcommand("validate", "Check a trace file against the schema");
    validate_cmd->add_option("--trace", trace_path, "Trace file")->required();

    std::uint16_t port = 0;
    std::string address = "127.0.0.1";
    auto *serve_cmd = app.add_subcommand("serve", "Serve live sessions over line-delimited JSON");
    serve_cmd->add_option("--port", port, "TCP port (0 picks one)")->required();
    serve_cmd->add_option("--bind", address, "Bind address");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        // --help and friends exit 0; every other parse failure is a usage error.
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try
    {
        if (*replay_cmd)
        {
            return cmd_replay(trace_path, config_path, out_path, expect_goal);
        }
        if (*scenario_cmd)
        {
            return cmd_scenario(name, seed, out_path, noise, config_path);
        }
        if (*validate_cmd)
        {
            return cmd_validate(trace_path);
        }
        if (*serve_cmd)
        {
            return cmd_serve(port, address);
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
