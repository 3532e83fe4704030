#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace palmgazer
{
    /// TCP front end for SessionProtocol: one independent session per
    /// connection, each on its own thread.
    class SessionServer
    {
    public:
        /// Binds and listens immediately; port 0 picks a free port.
        /// Throws std::system_error on socket failures.
        explicit SessionServer(std::uint16_t port, const std::string &address = "127.0.0.1");
        ~SessionServer();

        SessionServer(const SessionServer &) = delete;
        SessionServer &operator=(const SessionServer &) = delete;

        std::uint16_t port() const noexcept { return m_port; }

        /// Accepts connections until stop() is called.
        void run();

        /// Safe from any thread; closes the listener and open connections.
        void stop();

    private:
        void serve_connection(int fd);

        int m_listen_fd = -1;
        std::uint16_t m_port = 0;
        std::atomic<bool> m_stopping{false};
        std::mutex m_mutex;
        std::vector<int> m_open;
        std::vector<std::thread> m_workers;
    };

} // namespace palmgazer
