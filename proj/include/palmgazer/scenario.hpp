#pragma once

#include "palmgazer/config.hpp"
#include "palmgazer/trace.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace palmgazer
{
    /// mt19937_64 with hand-rolled uniform and normal draws, so sequences are
    /// identical across standard libraries.
    class DeterministicRng
    {
    public:
        explicit DeterministicRng(std::uint64_t seed) : m_engine(seed) {}

        double uniform() noexcept; // [0, 1)
        double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
        int index(int n) noexcept; // [0, n)
        double normal() noexcept;  // standard normal, Box-Muller

    private:
        std::mt19937_64 m_engine;
        std::optional<double> m_spare;
    };

    class UnknownScenarioError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    struct ScenarioOptions
    {
        double gaze_noise_deg = 1.0; // sigma of the per-fixation angular offset
        Config config{};
        ReferenceFrame frame = ReferenceFrame::OnHand;
        int fuzz_frames = 10000;
        std::optional<std::string> target; // overrides the seeded goal target
    };

    std::span<const std::string_view> scenario_names() noexcept;

    /// Synthesizes a trace for one of the bundled tasks. Deterministic in
    /// (name, seed, options). Non-fuzz scenarios are generated closed-loop
    /// against a live engine, so replaying the trace with the same config
    /// reproduces the session the generator observed.
    Trace generate_scenario(std::string_view name, std::uint64_t seed, const ScenarioOptions &options = {});

} // namespace palmgazer
