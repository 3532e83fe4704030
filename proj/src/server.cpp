#include "palmgazer/server.hpp"

#include "palmgazer/protocol.hpp"

#include <algorithm>
#include <cerrno>
#include <system_error>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

namespace palmgazer
{
    namespace
    {
        constexpr std::size_t kMaxLine = 1 << 20;

        [[noreturn]] void throw_errno(const char *what)
        {
            throw std::system_error(errno, std::generic_category(), what);
        }

        bool send_all(int fd, const std::string &data)
        {
            std::size_t sent = 0;
            while (sent < data.size())
            {
                const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
                if (n < 0 && errno == EINTR)
                {
                    continue;
                }
                if (n <= 0)
                {
                    return false;
                }
                sent += static_cast<std::size_t>(n);
            }
            return true;
        }
    } // namespace

    SessionServer::SessionServer(std::uint16_t port, const std::string &address)
    {
        m_listen_fd = ::socket(AF_INET, SOCK_STREAM, 0);
        if (m_listen_fd < 0)
        {
            throw_errno("socket");
        }
        const int yes = 1;
        ::setsockopt(m_listen_fd, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);

        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_port = htons(port);
        if (::inet_pton(AF_INET, address.c_str(), &addr.sin_addr) != 1)
        {
            ::close(m_listen_fd);
            throw std::system_error(EINVAL, std::generic_category(), "bad bind address " + address);
        }
        if (::bind(m_listen_fd, reinterpret_cast<sockaddr *>(&addr), sizeof addr) < 0 ||
            ::listen(m_listen_fd, 16) < 0)
        {
            const int err = errno;
            ::close(m_listen_fd);
            throw std::system_error(err, std::generic_category(), "bind/listen");
        }
        socklen_t len = sizeof addr;
        ::getsockname(m_listen_fd, reinterpret_cast<sockaddr *>(&addr), &len);
        m_port = ntohs(addr.sin_port);
    }

    SessionServer::~SessionServer()
    {
        stop();
        for (auto &w : m_workers)
        {
            if (w.joinable())
            {
                w.join();
            }
        }
        if (m_listen_fd >= 0)
        {
            ::close(m_listen_fd);
        }
    }

    void SessionServer::run()
    {
        while (!m_stopping)
        {
            pollfd pfd{m_listen_fd, POLLIN, 0};
            const int ready = ::poll(&pfd, 1, 100);
            if (ready < 0 && errno != EINTR)
            {
                throw_errno("poll");
            }
            if (ready <= 0 || m_stopping)
            {
                continue;
            }
            const int fd = ::accept(m_listen_fd, nullptr, nullptr);
            if (fd < 0)
            {
                continue;
            }
            std::lock_guard lock(m_mutex);
            m_open.push_back(fd);
            m_workers.emplace_back([this, fd] { serve_connection(fd); });
        }
    }

    void SessionServer::stop()
    {
        m_stopping = true;
        std::lock_guard lock(m_mutex);
        for (int fd : m_open)
        {
            ::shutdown(fd, SHUT_RDWR);
        }
    }

    void SessionServer::serve_connection(int fd)
    {
        SessionProtocol session;
        std::string buffer;
        char chunk[4096];
        bool open = true;
        while (open && !m_stopping)
        {
            const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
            if (n < 0 && errno == EINTR)
            {
                continue;
            }
            if (n <= 0)
            {
                break;
            }
            buffer.append(chunk, static_cast<std::size_t>(n));
            std::size_t start = 0;
            for (std::size_t nl; open && (nl = buffer.find('\n', start)) != std::string::npos; start = nl + 1)
            {
                std::string line = buffer.substr(start, nl - start);
                if (!line.empty() && line.back() == '\r')
                {
                    line.pop_back();
                }
                if (line.empty())
                {
                    continue;
                }
                const ProtocolReply reply = session.handle_line(line);
                std::string out;
                for (const auto &l : reply.lines)
                {
                    out += l;
                    out += '\n';
                }
                open = send_all(fd, out) && !reply.close;
            }
            buffer.erase(0, start);
            if (open && buffer.size() > kMaxLine)
            {
                send_all(fd, "{\"type\":\"error\",\"message\":\"line too long\"}\n");
                open = false;
            }
        }
        std::lock_guard lock(m_mutex);
        m_open.erase(std::remove(m_open.begin(), m_open.end(), fd), m_open.end());
        ::close(fd);
    }

} // namespace palmgazer
