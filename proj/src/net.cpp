// SPDX-License-Identifier: Apache-2.0
//
// wavecopy: wavefront copying through programmable wireless environments
// Copyright (C) 2026 The wavecopy authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "wavecopy/net.hpp"

#include "wavecopy/error.hpp"

#include <algorithm>
#include <arpa/inet.h>
#include <cerrno>
#include <cstring>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

namespace wcopy {

TcpStream& TcpStream::operator=(TcpStream&& o) noexcept
{
    if (this != &o) {
        if (fd_ >= 0)
            ::close(fd_);
        fd_ = o.fd_;
        pending_ = std::move(o.pending_);
        o.fd_ = -1;
    }
    return *this;
}

TcpStream::~TcpStream()
{
    if (fd_ >= 0)
        ::close(fd_);
}

TcpStream TcpStream::connect(const std::string& host, std::uint16_t port)
{
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    if (::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res) != 0 || !res)
        fail(Errc::ConnectionLost, "cannot resolve " + host);
    int fd = -1;
    for (addrinfo* ai = res; ai; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0)
            continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0)
            break;
        ::close(fd);
        fd = -1;
    }
    ::freeaddrinfo(res);
    if (fd < 0)
        fail(Errc::ConnectionLost, "cannot connect to " + host + ":" + std::to_string(port));
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    return TcpStream(fd);
}

size_t TcpStream::read_some(std::uint8_t* buf, size_t cap)
{
    if (!pending_.empty()) {
        const size_t n = std::min(cap, pending_.size());
        std::memcpy(buf, pending_.data(), n);
        pending_.erase(0, n);
        return n;
    }
    for (;;) {
        const ssize_t n = ::recv(fd_, buf, cap, 0);
        if (n >= 0)
            return static_cast<size_t>(n);
        if (errno != EINTR)
            fail(Errc::ConnectionLost, std::string("recv failed: ") + std::strerror(errno));
    }
}

void TcpStream::write_all(const std::uint8_t* data, size_t n)
{
    while (n > 0) {
        const ssize_t w = ::send(fd_, data, n, MSG_NOSIGNAL);
        if (w < 0) {
            if (errno == EINTR)
                continue;
            fail(Errc::ConnectionLost, std::string("send failed: ") + std::strerror(errno));
        }
        data += w;
        n -= static_cast<size_t>(w);
    }
}

void TcpStream::close_write()
{
    if (fd_ >= 0)
        ::shutdown(fd_, SHUT_WR);
}

bool TcpStream::read_line(std::string& line)
{
    for (;;) {
        const auto nl = pending_.find('\n');
        if (nl != std::string::npos) {
            line = pending_.substr(0, nl);
            pending_.erase(0, nl + 1);
            return true;
        }
        char buf[4096];
        ssize_t n;
        do {
            n = ::recv(fd_, buf, sizeof buf, 0);
        } while (n < 0 && errno == EINTR);
        if (n < 0)
            fail(Errc::ConnectionLost, std::string("recv failed: ") + std::strerror(errno));
        if (n == 0) {
            if (pending_.empty())
                return false;
            line = std::move(pending_);
            pending_.clear();
            return true;
        }
        pending_.append(buf, static_cast<size_t>(n));
    }
}

TcpListener::TcpListener(std::uint16_t port, const std::string& host)
{
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0)
        fail(Errc::Io, "socket() failed");
    int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
        fail(Errc::Io, "listen address must be a dotted IPv4 address: " + host);
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 || ::listen(fd_, 4) != 0)
        fail(Errc::Io, "cannot listen on " + host + ":" + std::to_string(port) + ": " + std::strerror(errno));
    socklen_t len = sizeof addr;
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener()
{
    close();
}

void TcpListener::close()
{
    if (fd_ >= 0) {
        ::shutdown(fd_, SHUT_RDWR);
        ::close(fd_);
        fd_ = -1;
    }
}

TcpStream TcpListener::accept()
{
    for (;;) {
        const int c = ::accept(fd_, nullptr, nullptr);
        if (c >= 0) {
            int one = 1;
            ::setsockopt(c, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
            return TcpStream(c);
        }
        if (errno != EINTR)
            fail(Errc::ConnectionLost, std::string("accept failed: ") + std::strerror(errno));
    }
}

size_t MemoryPipe::read_some(std::uint8_t* buf, size_t cap)
{
    std::unique_lock<std::mutex> lk(mu_);
    cv_.wait(lk, [&] { return !buf_.empty() || closed_; });
    const size_t n = std::min(cap, buf_.size());
    std::copy(buf_.begin(), buf_.begin() + static_cast<long>(n), buf);
    buf_.erase(buf_.begin(), buf_.begin() + static_cast<long>(n));
    return n;
}

void MemoryPipe::write_all(const std::uint8_t* data, size_t n)
{
    {
        std::lock_guard<std::mutex> lk(mu_);
        if (closed_)
            fail(Errc::ConnectionLost, "write to a closed pipe");
        buf_.insert(buf_.end(), data, data + n);
    }
    cv_.notify_all();
}

void MemoryPipe::close_write()
{
    {
        std::lock_guard<std::mutex> lk(mu_);
        closed_ = true;
    }
    cv_.notify_all();
}

} // namespace wcopy
