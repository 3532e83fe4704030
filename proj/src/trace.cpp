#include "palmgazer/trace.hpp"

#include "palmgazer/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace palmgazer
{
    namespace
    {
        constexpr double kUnitTolerance = 1e-6;

        bool finite(const Pose &p)
        {
            const Orientation &q = p.orientation;
            return is_finite(p.position) && std::isfinite(q.w) && std::isfinite(q.x) && std::isfinite(q.y) &&
                   std::isfinite(q.z);
        }

        bool unit_quaternion(const Orientation &q)
        {
            const double n = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
            return std::abs(n - 1.0) <= kUnitTolerance;
        }

        TraceHeader header_from_json(const Json &j)
        {
            if (!j.is_object())
            {
                throw JsonSchemaError("header must be an object");
            }
            TraceHeader h;
            const auto integer = [&](const char *key) -> const Json & {
                if (!j.contains(key) || !j.at(key).is_number_integer())
                {
                    throw JsonSchemaError(std::string("header key '") + key + "' must be an integer");
                }
                return j.at(key);
            };
            h.version = integer("version").get<int>();
            if (h.version != 1)
            {
                throw JsonSchemaError("unsupported trace version " + std::to_string(h.version));
            }
            h.frame_rate = integer("frame_rate").get<int>();
            if (h.frame_rate <= 0)
            {
                throw JsonSchemaError("frame_rate must be positive");
            }
            const Json &seed = integer("seed");
            if (seed.is_number_unsigned())
            {
                h.seed = seed.get<std::uint64_t>();
            }
            else if (seed.get<std::int64_t>() >= 0)
            {
                h.seed = static_cast<std::uint64_t>(seed.get<std::int64_t>());
            }
            else
            {
                throw JsonSchemaError("seed must be non-negative");
            }
            if (!j.contains("config") || !j.at("config").is_string())
            {
                throw JsonSchemaError("header key 'config' must be a string");
            }
            h.config = j.at("config").get<std::string>();

            const auto text = [&](const char *key) -> std::optional<std::string> {
                if (!j.contains(key) || j.at(key).is_null())
                {
                    return std::nullopt;
                }
                if (!j.at(key).is_string())
                {
                    throw JsonSchemaError(std::string("header key '") + key + "' must be a string");
                }
                return j.at(key).get<std::string>();
            };
            h.scenario = text("scenario");
            h.target = text("target");
            if (auto app = text("initial_app"))
            {
                h.initial_app = app_from_string(*app);
                if (!h.initial_app)
                {
                    throw JsonSchemaError("unknown initial_app '" + *app + "'");
                }
            }
            if (auto frame = text("reference_frame"))
            {
                h.reference_frame = reference_frame_from_string(*frame);
                if (!h.reference_frame)
                {
                    throw JsonSchemaError("unknown reference_frame '" + *frame + "'");
                }
            }
            return h;
        }

        Json header_to_json(const TraceHeader &h)
        {
            Json j{{"version", h.version}, {"frame_rate", h.frame_rate}, {"seed", h.seed}, {"config", h.config}};
            if (h.scenario)
            {
                j["scenario"] = *h.scenario;
            }
            if (h.target)
            {
                j["target"] = *h.target;
            }
            if (h.initial_app)
            {
                j["initial_app"] = std::string(to_string(*h.initial_app));
            }
            if (h.reference_frame)
            {
                j["reference_frame"] = std::string(to_string(*h.reference_frame));
            }
            return j;
        }
    } // namespace

    TraceParseError::TraceParseError(std::size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), m_line(line)
    {
    }

    void validate_frame(const TrackingFrame &f)
    {
        if (!std::isfinite(f.t))
        {
            throw std::invalid_argument("t must be finite");
        }
        if (!finite(f.head) || !finite(f.hand.palm) || !is_finite(f.gaze.origin) || !is_finite(f.gaze.direction))
        {
            throw std::invalid_argument("non-finite pose or ray");
        }
        if (!unit_quaternion(f.head.orientation) || !unit_quaternion(f.hand.palm.orientation))
        {
            throw std::invalid_argument("quaternion is not unit length");
        }
        if (std::abs(norm(f.gaze.direction) - 1.0) > kUnitTolerance)
        {
            throw std::invalid_argument("gaze direction is not unit length");
        }
        for (double e : f.hand.finger_extension)
        {
            if (!(e >= 0.0 && e <= 1.0))
            {
                throw std::invalid_argument("finger extension outside [0,1]");
            }
        }
        if (!(f.hand.pinch_gap >= 0.0) || !std::isfinite(f.hand.pinch_gap))
        {
            throw std::invalid_argument("pinch gap must be finite and non-negative");
        }
    }

    std::string serialize_trace(const Trace &trace)
    {
        std::string out = dump_json(header_to_json(trace.header));
        out += '\n';
        for (const auto &f : trace.frames)
        {
            out += dump_json(to_json(f));
            out += '\n';
        }
        return out;
    }

    Trace parse_trace(const std::string &text)
    {
        std::istringstream in(text);
        std::string line;
        std::size_t line_no = 0;
        bool have_header = false;
        Trace trace;
        while (std::getline(in, line))
        {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
            {
                line.pop_back();
            }
            if (line.find_first_not_of(" \t") == std::string::npos)
            {
                continue;
            }
            Json j;
            try
            {
                j = Json::parse(line);
            }
            catch (const Json::parse_error &e)
            {
                throw TraceParseError(line_no, std::string("invalid JSON: ") + e.what());
            }
            try
            {
                if (!have_header)
                {
                    trace.header = header_from_json(j);
                    have_header = true;
                    continue;
                }
                TrackingFrame f = frame_from_json(j);
                validate_frame(f);
                if (!trace.frames.empty() && !(f.t > trace.frames.back().t))
                {
                    throw std::invalid_argument("timestamps must strictly increase");
                }
                trace.frames.push_back(f);
            }
            catch (const TraceParseError &)
            {
                throw;
            }
            catch (const std::exception &e)
            {
                throw TraceParseError(line_no, e.what());
            }
        }
        if (!have_header)
        {
            throw TraceParseError(line_no == 0 ? 1 : line_no, "missing header line");
        }
        return trace;
    }

    Trace read_trace(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
        {
            throw std::runtime_error("cannot open trace " + path.string());
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return parse_trace(buffer.str());
    }

    void write_trace(const std::filesystem::path &path, const Trace &trace)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
        {
            throw std::runtime_error("cannot write trace " + path.string());
        }
        out << serialize_trace(trace);
    }

    Config effective_config(const Trace &trace, Config config)
    {
        if (trace.header.initial_app)
        {
            config.initial_app = *trace.header.initial_app;
        }
        if (trace.header.reference_frame)
        {
            config.initial_frame = *trace.header.reference_frame;
        }
        return config;
    }

    ReplayResult replay(const Trace &trace, const Config &config)
    {
        Engine engine(effective_config(trace, config));
        ReplayResult result;
        for (const auto &frame : trace.frames)
        {
            FrameResult step = engine.step(frame);
            for (auto &r : step.records)
            {
                result.log.push_back(std::move(r));
            }
            for (auto &d : step.diagnostics)
            {
                result.diagnostics.push_back(std::move(d));
            }
        }
        result.final_session = engine.session();
        result.final_fsm = engine.interaction();
        return result;
    }

} // namespace palmgazer
