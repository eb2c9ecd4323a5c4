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

#include "wavecopy/field.hpp"
#include "wavecopy/net.hpp"
#include "wavecopy/scene.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace wcopy {

inline constexpr std::uint8_t kWireVersion = 1;
inline constexpr size_t kFrameHeaderSize = 13; // magic 4, version 1, seq 4, rows 2, cols 2
inline constexpr size_t kFrameOverhead = kFrameHeaderSize + 4;

/// CRC-32 with the IEEE 802.3 polynomial.
std::uint32_t crc32_ieee(const std::uint8_t* data, size_t n);

/// Wire layout (little endian): "WCF1" | version u8 | seq u32 | rows u16 | cols u16 |
/// rows*cols (re f64, im f64) row-major | CRC-32 of everything before it.
struct WireFrame {
    std::uint8_t version{kWireVersion};
    std::uint32_t seq{0};
    std::uint16_t rows{0};
    std::uint16_t cols{0};
    std::vector<Complex> samples;

    friend bool operator==(const WireFrame&, const WireFrame&) = default;
};

inline size_t encoded_size(size_t rows, size_t cols) { return kFrameOverhead + rows * cols * 16; }

/// Stamps readings with consecutive sequence numbers.
class WavefrontSampler {
public:
    explicit WavefrontSampler(std::uint32_t first_seq = 0) : next_(first_seq) {}
    /// Throws NonFiniteSample or DimMismatch (dimensions above 65535).
    WireFrame sample(const RfReading& reading);

private:
    std::uint32_t next_;
};

std::vector<std::uint8_t> encode_frame(const WireFrame& frame);
void encode_frame_into(const WireFrame& frame, std::vector<std::uint8_t>& out);

/// Decodes exactly one frame. Throws Truncated, BadMagic (also for unknown versions),
/// BadChecksum, or SizeMismatch when bytes trail the frame.
WireFrame decode_frame(const std::uint8_t* data, size_t n);
inline WireFrame decode_frame(const std::vector<std::uint8_t>& b) { return decode_frame(b.data(), b.size()); }

/// Element i becomes a point source carrying sample i (conjugated on request).
std::vector<PointSource> replay_frame(const WireFrame& frame, const ReceiveArray& tx, bool conjugate = false,
                                      double frequency = kDefaultFrequency);

RfReading frame_reading(const WireFrame& frame);

struct ReaderStats {
    std::uint64_t frames{0};
    std::uint64_t corrupted{0};     // candidate frames rejected (bad checksum/version/size)
    std::uint64_t lost{0};          // sequence numbers skipped between accepted frames
    std::uint64_t out_of_order{0};  // accepted checksum but seq not increasing; dropped
    std::uint64_t skipped_bytes{0}; // bytes discarded while resynchronizing
};

/// Incremental frame parser that resynchronizes on the next magic after garbage.
class FrameReader {
public:
    explicit FrameReader(size_t max_samples = 1u << 16) : max_samples_(max_samples) {}

    void push(const std::uint8_t* data, size_t n);
    /// Next complete valid frame, if any.
    std::optional<WireFrame> next();
    /// End of stream: drops undecodable leftovers and returns any frame still buried in them.
    std::optional<WireFrame> finish();
    size_t buffered() const { return buf_.size() - head_; }
    const ReaderStats& stats() const { return stats_; }

private:
    std::optional<WireFrame> scan(bool at_eof);
    void drop(size_t n);

    std::vector<std::uint8_t> buf_;
    size_t head_{0};
    size_t max_samples_;
    std::optional<std::uint32_t> last_seq_;
    ReaderStats stats_;
};

struct SessionStats {
    ReaderStats reader;
    std::uint64_t frames_sent{0};
    bool partial_discarded{false};
    std::vector<double> encode_us;
    std::vector<double> decode_us;
};

/// Encodes and writes frames in order, then closes the write side when `close` is set.
SessionStats send_frames(ByteStream& stream, const std::vector<WireFrame>& frames, bool close = true,
                         double rate_hz = 0.0);

/// Reads until end of stream, handing each valid frame to `on_frame`.
/// Corrupted frames are counted and skipped. A trailing partial frame is discarded.
SessionStats receive_frames(ByteStream& stream, const std::function<void(const WireFrame&)>& on_frame);

} // namespace wcopy
