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

#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <mutex>
#include <string>

namespace wcopy {

/// Ordered, reliable byte stream (TCP socket or in-memory pipe).
class ByteStream {
public:
    virtual ~ByteStream() = default;
    /// Blocks until at least one byte is available; returns 0 at end of stream.
    virtual size_t read_some(std::uint8_t* buf, size_t cap) = 0;
    virtual void write_all(const std::uint8_t* data, size_t n) = 0;
    /// Signals end of stream to the reader.
    virtual void close_write() = 0;
};

class TcpStream final : public ByteStream {
public:
    explicit TcpStream(int fd) : fd_(fd) {}
    TcpStream(TcpStream&& o) noexcept : fd_(o.fd_) { o.fd_ = -1; }
    TcpStream& operator=(TcpStream&& o) noexcept;
    TcpStream(const TcpStream&) = delete;
    TcpStream& operator=(const TcpStream&) = delete;
    ~TcpStream() override;

    static TcpStream connect(const std::string& host, std::uint16_t port);

    size_t read_some(std::uint8_t* buf, size_t cap) override;
    void write_all(const std::uint8_t* data, size_t n) override;
    void close_write() override;
    /// Reads up to and excluding '\n'; false at end of stream.
    bool read_line(std::string& line);

private:
    int fd_{-1};
    std::string pending_;
};

class TcpListener {
public:
    /// Port 0 picks a free port; see port().
    explicit TcpListener(std::uint16_t port, const std::string& host = "127.0.0.1");
    TcpListener(const TcpListener&) = delete;
    TcpListener& operator=(const TcpListener&) = delete;
    ~TcpListener();

    std::uint16_t port() const { return port_; }
    TcpStream accept();
    void close();

private:
    int fd_{-1};
    std::uint16_t port_{0};
};

/// Single-direction in-memory stream for tests and in-process loopback.
class MemoryPipe final : public ByteStream {
public:
    size_t read_some(std::uint8_t* buf, size_t cap) override;
    void write_all(const std::uint8_t* data, size_t n) override;
    void close_write() override;

private:
    std::mutex mu_;
    std::condition_variable cv_;
    std::deque<std::uint8_t> buf_;
    bool closed_{false};
};

} // namespace wcopy
