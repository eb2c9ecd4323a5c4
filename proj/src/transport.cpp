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

#include "wavecopy/transport.hpp"

#include "wavecopy/error.hpp"

#include <zlib.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <thread>

namespace wcopy {

namespace {

constexpr std::uint8_t kMagic[4] = {'W', 'C', 'F', '1'};

void put_u16(std::uint8_t* p, std::uint16_t v)
{
    p[0] = static_cast<std::uint8_t>(v);
    p[1] = static_cast<std::uint8_t>(v >> 8);
}

void put_u32(std::uint8_t* p, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

void put_f64(std::uint8_t* p, double d)
{
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    for (int i = 0; i < 8; ++i)
        p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint16_t get_u16(const std::uint8_t* p)
{
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const std::uint8_t* p)
{
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}

double get_f64(const std::uint8_t* p)
{
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    double d;
    std::memcpy(&d, &v, 8);
    return d;
}

// Parses a frame whose size and magic were already checked.
WireFrame parse_body(const std::uint8_t* p)
{
    WireFrame f;
    f.version = p[4];
    f.seq = get_u32(p + 5);
    f.rows = get_u16(p + 9);
    f.cols = get_u16(p + 11);
    const size_t n = static_cast<size_t>(f.rows) * f.cols;
    f.samples.resize(n);
    const std::uint8_t* s = p + kFrameHeaderSize;
    for (size_t i = 0; i < n; ++i, s += 16)
        f.samples[i] = Complex(get_f64(s), get_f64(s + 8));
    return f;
}

} // namespace

std::uint32_t crc32_ieee(const std::uint8_t* data, size_t n)
{
    uLong c = ::crc32(0L, Z_NULL, 0);
    while (n > 0) {
        const uInt chunk = static_cast<uInt>(std::min<size_t>(n, 1u << 30));
        c = ::crc32(c, data, chunk);
        data += chunk;
        n -= chunk;
    }
    return static_cast<std::uint32_t>(c);
}

WireFrame WavefrontSampler::sample(const RfReading& reading)
{
    if (reading.rows < 0 || reading.cols < 0 || reading.rows > 0xFFFF || reading.cols > 0xFFFF ||
        reading.data.size() != static_cast<size_t>(reading.rows) * reading.cols)
        fail(Errc::DimMismatch, "reading dimensions do not fit a wire frame");
    for (const auto& c : reading.data)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            fail(Errc::NonFiniteSample, "reading contains a non-finite sample");
    WireFrame f;
    f.seq = next_++;
    f.rows = static_cast<std::uint16_t>(reading.rows);
    f.cols = static_cast<std::uint16_t>(reading.cols);
    f.samples = reading.data;
    return f;
}

void encode_frame_into(const WireFrame& f, std::vector<std::uint8_t>& out)
{
    const size_t n = static_cast<size_t>(f.rows) * f.cols;
    if (f.samples.size() != n)
        fail(Errc::DimMismatch, "frame sample count does not match rows x cols");
    out.resize(encoded_size(f.rows, f.cols));
    std::uint8_t* p = out.data();
    std::memcpy(p, kMagic, 4);
    p[4] = f.version;
    put_u32(p + 5, f.seq);
    put_u16(p + 9, f.rows);
    put_u16(p + 11, f.cols);
    std::uint8_t* s = p + kFrameHeaderSize;
    for (size_t i = 0; i < n; ++i, s += 16) {
        put_f64(s, f.samples[i].real());
        put_f64(s + 8, f.samples[i].imag());
    }
    put_u32(s, crc32_ieee(p, static_cast<size_t>(s - p)));
}

std::vector<std::uint8_t> encode_frame(const WireFrame& frame)
{
    std::vector<std::uint8_t> out;
    encode_frame_into(frame, out);
    return out;
}

WireFrame decode_frame(const std::uint8_t* data, size_t n)
{
    if (n < 4)
        fail(Errc::Truncated, "frame shorter than its magic");
    if (std::memcmp(data, kMagic, 4) != 0)
        fail(Errc::BadMagic, "frame does not start with WCF1");
    if (n < kFrameHeaderSize)
        fail(Errc::Truncated, "frame header truncated");
    if (data[4] != kWireVersion)
        fail(Errc::BadMagic, "unsupported frame version " + std::to_string(data[4]));
    const size_t need = encoded_size(get_u16(data + 9), get_u16(data + 11));
    if (n < need)
        fail(Errc::Truncated, "frame payload truncated");
    if (n > need)
        fail(Errc::SizeMismatch, "bytes trail the frame");
    if (crc32_ieee(data, need - 4) != get_u32(data + need - 4))
        fail(Errc::BadChecksum, "frame checksum mismatch");
    return parse_body(data);
}

std::vector<PointSource> replay_frame(const WireFrame& frame, const ReceiveArray& tx, bool conjugate, double frequency)
{
    if (frame.rows != tx.rows || frame.cols != tx.cols || tx.elements.size() != frame.samples.size())
        fail(Errc::DimMismatch, "frame dimensions do not match the transmit array");
    std::vector<PointSource> out;
    out.reserve(tx.elements.size());
    for (size_t i = 0; i < tx.elements.size(); ++i)
        out.push_back(PointSource{tx.id + "#" + std::to_string(i), tx.elements[i],
                                  conjugate ? std::conj(frame.samples[i]) : frame.samples[i], frequency});
    return out;
}

RfReading frame_reading(const WireFrame& frame)
{
    return RfReading{frame.rows, frame.cols, frame.samples};
}

void FrameReader::push(const std::uint8_t* data, size_t n)
{
    if (head_ > 0 && head_ >= buf_.size() / 2) {
        buf_.erase(buf_.begin(), buf_.begin() + static_cast<long>(head_));
        head_ = 0;
    }
    buf_.insert(buf_.end(), data, data + n);
}

void FrameReader::drop(size_t n)
{
    head_ += n;
    stats_.skipped_bytes += n;
}

std::optional<WireFrame> FrameReader::next()
{
    return scan(false);
}

std::optional<WireFrame> FrameReader::finish()
{
    return scan(true);
}

std::optional<WireFrame> FrameReader::scan(bool at_eof)
{
    for (;;) {
        const std::uint8_t* base = buf_.data() + head_;
        const size_t avail = buf_.size() - head_;
        const std::uint8_t* hit = std::search(base, base + avail, kMagic, kMagic + 4);
        if (hit == base + avail) {
            // keep a possible magic prefix at the tail
            const size_t keep = at_eof ? 0 : std::min<size_t>(3, avail);
            drop(avail - keep);
            return std::nullopt;
        }
        if (hit != base) {
            drop(static_cast<size_t>(hit - base));
            continue;
        }
        if (avail < kFrameHeaderSize) {
            if (at_eof)
                drop(avail);
            return std::nullopt;
        }
        const size_t n = static_cast<size_t>(get_u16(base + 9)) * get_u16(base + 11);
        if (base[4] != kWireVersion || n > max_samples_) {
            ++stats_.corrupted;
            drop(1);
            continue;
        }
        const size_t total = encoded_size(get_u16(base + 9), get_u16(base + 11));
        if (avail < total) {
            if (!at_eof)
                return std::nullopt;
            drop(1); // incomplete candidate at end of stream; frames may hide inside it
            continue;
        }
        if (crc32_ieee(base, total - 4) != get_u32(base + total - 4)) {
            ++stats_.corrupted;
            drop(1);
            continue;
        }
        WireFrame f = parse_body(base);
        head_ += total;
        if (last_seq_ && f.seq <= *last_seq_) {
            ++stats_.out_of_order;
            continue;
        }
        if (last_seq_)
            stats_.lost += f.seq - *last_seq_ - 1;
        last_seq_ = f.seq;
        ++stats_.frames;
        return f;
    }
}

namespace {

double micros_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

SessionStats send_frames(ByteStream& stream, const std::vector<WireFrame>& frames, bool close, double rate_hz)
{
    SessionStats st;
    std::vector<std::uint8_t> buf;
    const auto start = std::chrono::steady_clock::now();
    for (size_t i = 0; i < frames.size(); ++i) {
        if (rate_hz > 0.0)
            std::this_thread::sleep_until(start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                      std::chrono::duration<double>(static_cast<double>(i) / rate_hz)));
        const auto t0 = std::chrono::steady_clock::now();
        encode_frame_into(frames[i], buf);
        st.encode_us.push_back(micros_since(t0));
        stream.write_all(buf.data(), buf.size());
        ++st.frames_sent;
    }
    if (close)
        stream.close_write();
    return st;
}

SessionStats receive_frames(ByteStream& stream, const std::function<void(const WireFrame&)>& on_frame)
{
    SessionStats st;
    FrameReader reader;
    std::vector<std::uint8_t> chunk(1 << 16);
    for (;;) {
        const size_t n = stream.read_some(chunk.data(), chunk.size());
        if (n == 0)
            break;
        reader.push(chunk.data(), n);
        for (;;) {
            const auto t0 = std::chrono::steady_clock::now();
            auto f = reader.next();
            if (!f)
                break;
            st.decode_us.push_back(micros_since(t0));
            on_frame(*f);
        }
    }
    st.partial_discarded = reader.buffered() > 0;
    while (auto f = reader.finish())
        on_frame(*f);
    st.reader = reader.stats();
    return st;
}

} // namespace wcopy
