#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "physec/line_coding.hpp"

// MAC-side test traffic: Ethernet-style frame bursts with CRC-32 FCS,
// framed on the 8-octet interface as START / preamble / SFD / payload /
// FCS / TERMINATE with idle gaps sized to hit a target line utilization.

namespace physec {

/// IEEE 802.3 FCS: reflected 0x04C11DB7, init and final XOR all-ones.
std::uint32_t crc32(std::span<const std::uint8_t> data);

struct FrameSpec {
    std::size_t frame_length = 1024;  // bytes, >= 64
    std::uint64_t frame_count = 0;
    double utilization = 0.5;  // fraction of line rate, (0,1]
    std::uint64_t payload_seed = 0;

    /// Octets from START through TERMINATE for one frame.
    std::size_t frame_octets() const { return frame_length - 4; }

    /// Throws std::invalid_argument when the spec is malformed or the
    /// utilization cannot be met with a 12-octet minimum inter-frame gap.
    void validate() const;
};

/// Deterministic burst generator. Emits `leading_idle_groups` of idles
/// (receiver lock margin), then frames separated by idle gaps chosen so
/// the cumulative utilization tracks the target. Frames always start at
/// lane 0; every frame is followed by its gap, so output is whole groups.
class FrameGenerator {
public:
    FrameGenerator(const FrameSpec& spec, unsigned leading_idle_groups);

    bool done() const {
        return !warmup_pending_ && head_ >= buf_.size() &&
               frames_emitted_ == spec_.frame_count;
    }
    CharGroup8 next_group();

    std::uint64_t frames_emitted() const { return frames_emitted_; }
    std::uint64_t frame_octets_sent() const { return frame_octets_; }
    std::uint64_t total_octets_sent() const { return total_octets_; }

private:
    void refill();
    void push_idles(std::size_t count);
    void push_frame();

    FrameSpec spec_;
    std::vector<TxChar> buf_;
    std::size_t head_ = 0;
    std::uint64_t frames_emitted_ = 0;
    std::uint64_t frame_octets_ = 0;
    std::uint64_t total_octets_ = 0;
    std::uint64_t rng_state_;
    bool warmup_pending_;
    unsigned leading_idle_groups_;
};

struct MacCounters {
    std::uint64_t frames_received = 0;
    std::uint64_t crc_errors = 0;
    std::uint64_t frames_aborted = 0;  // malformed or error-marked frames
};

/// Receive-side deframer: collects octets between START and TERMINATE,
/// accepts any preamble length >= 1 before the SFD, and checks the FCS.
class Deframer {
public:
    void feed(const CharGroup8& g);
    const MacCounters& counters() const { return c_; }

private:
    void finish();

    enum class St : std::uint8_t { Gap, InFrame } st_ = St::Gap;
    std::vector<std::uint8_t> buf_;
    MacCounters c_;
};

}  // namespace physec
