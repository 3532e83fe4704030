#include "palmgazer/protocol.hpp"

#include "palmgazer/json_io.hpp"
#include "palmgazer/trace.hpp"

namespace palmgazer
{
    ProtocolReply SessionProtocol::fail(const std::string &message)
    {
        m_closed = true;
        return {{dump_json(Json{{"type", "error"}, {"message", message}})}, true};
    }

    std::string SessionProtocol::state_line() const
    {
        const Engine &e = *m_engine;
        const InteractionState &fsm = e.interaction();
        Json j{{"type", "state"}};
        j["t"] = e.last_t() ? Json(quantize(*e.last_t())) : Json(nullptr);
        j["fsm"] = std::string(phase_name(fsm.phase));
        j["summon_progress"] = quantize(fsm.summon_progress);
        j["ui_pose"] = fsm.ui_on() ? to_json(e.placement().pose) : Json(nullptr);
        j["reference_frame"] = std::string(to_string(e.session().reference_frame));
        j["view_model"] = to_json(e.view_model());
        j["hover"] = fsm.hover ? Json(*fsm.hover) : Json(nullptr);
        const auto &g = e.gaze_point();
        j["gaze_point"] = g ? Json::array({quantize(g->u), quantize(g->v)}) : Json(nullptr);
        return dump_json(j);
    }

    ProtocolReply SessionProtocol::handle_line(const std::string &line)
    {
        if (m_closed)
        {
            return {{}, true};
        }
        Json msg;
        try
        {
            msg = Json::parse(line);
        }
        catch (const Json::parse_error &)
        {
            return fail("malformed JSON");
        }
        if (!msg.is_object() || !msg.contains("type") || !msg.at("type").is_string())
        {
            return fail("message must be an object with a string 'type'");
        }
        const std::string type = msg.at("type").get<std::string>();

        if (type == "hello")
        {
            if (m_engine)
            {
                return fail("duplicate hello");
            }
            if (!msg.contains("version") || msg.at("version") != 1)
            {
                return fail("unsupported protocol version");
            }
            Config config;
            if (msg.contains("config") && !msg.at("config").is_null())
            {
                if (!msg.at("config").is_object())
                {
                    return fail("config must be an object");
                }
                try
                {
                    config = config_from_json_text(msg.at("config").dump());
                }
                catch (const std::exception &e)
                {
                    return fail(std::string("bad config: ") + e.what());
                }
            }
            m_engine.emplace(config);
            return {{state_line()}, false};
        }

        if (type == "frame")
        {
            if (!m_engine)
            {
                return fail("frame before hello");
            }
            TrackingFrame frame;
            try
            {
                frame = frame_from_json(msg);
                validate_frame(frame);
            }
            catch (const std::exception &e)
            {
                return fail(std::string("bad frame: ") + e.what());
            }
            if (m_engine->last_t() && !(frame.t > *m_engine->last_t()))
            {
                return fail("frame timestamps must strictly increase");
            }
            const FrameResult result = m_engine->step(frame);
            ProtocolReply reply;
            for (const LogRecord &r : result.records)
            {
                Json ev{{"type", "event"}};
                const Json body = to_json(r);
                for (auto &[key, value] : body.items())
                {
                    ev[key] = value;
                }
                reply.lines.push_back(dump_json(ev));
            }
            reply.lines.push_back(state_line());
            return reply;
        }

        return fail("unknown message type '" + type + "'");
    }

} // namespace palmgazer
