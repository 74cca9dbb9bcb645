#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "physec/framing.hpp"
#include "physec/phy_sec.hpp"

// Deterministic loopback link: frame generator -> 64b/66b encoder ->
// cipher -> scrambler -> bit-serial channel -> block lock -> descrambler
// -> decipher -> decoder -> deframer, with the counters needed to check
// lossless transport, zero overhead, key-mismatch behavior and traffic
// obfuscation.

namespace physec {

/// Bit FIFO, bit 0 of a pushed word first. Backing ring grows on demand.
class BitFifo {
public:
    BitFifo();

    void push(std::uint64_t bits, unsigned n);
    std::uint64_t peek(std::uint64_t offset, unsigned n) const;
    void skip(std::uint64_t n) { head_ += n; }
    std::uint64_t pop(unsigned n);

    std::uint64_t size() const { return tail_ - head_; }
    std::uint64_t total_pushed() const { return tail_; }
    std::uint64_t total_popped() const { return head_; }

private:
    void grow();

    std::vector<std::uint64_t> w_;
    std::uint64_t head_ = 0;  // absolute bit positions
    std::uint64_t tail_ = 0;
};

/// Lossless FIFO channel with deterministic error injection: the bit at
/// each listed absolute position is inverted on entry.
class Channel {
public:
    explicit Channel(std::vector<std::uint64_t> flip_positions);

    void push(std::uint64_t bits, unsigned n);
    BitFifo& fifo() { return fifo_; }

private:
    BitFifo fifo_;
    std::vector<std::uint64_t> flips_;
    std::size_t next_flip_ = 0;
};

/// 66-bit alignment: locks after 64 consecutive legal sync headers at one
/// offset, slips one bit on any illegal header, and emits blocks only
/// while locked.
class BlockLock {
public:
    std::optional<Block66> next(BitFifo& in);

    bool locked() const noexcept { return locked_; }
    std::uint64_t invalid_headers() const noexcept { return invalid_headers_; }
    std::int64_t lock_acquired_at() const noexcept { return lock_at_; }

private:
    bool locked_ = false;
    unsigned good_ = 0;
    std::uint64_t invalid_headers_ = 0;
    std::int64_t lock_at_ = -1;
};

/// Point at which the transmit management logic raises a cipher request,
/// indexed by position in the encoder output block stream.
struct ScheduleEvent {
    bool enable = true;  // true: Cipher_ON request, false: Cipher_OFF
    std::uint64_t block_index = 0;
};

struct SimDirectionConfig {
    FrameSpec frames;
    CipherKey tx_key;
    CipherKey rx_key;
    std::vector<ScheduleEvent> schedule;       // ascending block_index
    std::vector<std::uint64_t> error_bits;     // absolute wire bit positions
    unsigned warmup_idle_groups = 128;         // receiver lock margin
    std::uint64_t min_wire_blocks = 0;         // pad with idles up to this count
};

struct LinkReport {
    std::uint64_t frames_sent = 0;
    std::uint64_t frames_received = 0;
    std::uint64_t crc_errors = 0;
    std::uint64_t frames_aborted = 0;
    std::uint64_t invalid_headers = 0;
    std::uint64_t blocks_sent = 0;
    std::uint64_t blocks_received = 0;
    std::uint64_t wire_header_ones = 0;       // wire blocks with sync 0b10
    std::uint64_t wire_payload_bits = 0;      // post-scrambler payload bits
    std::uint64_t wire_payload_one_bits = 0;
    std::uint64_t cipher_payload_bits = 0;    // scrambler-input payload bits
    std::uint64_t cipher_payload_one_bits = 0;
    double header_one_fraction = 0.0;
    double measured_utilization = 0.0;
    std::int64_t lock_acquired_at = -1;
    std::uint64_t tx_keystream_positions = 0;
    std::uint64_t rx_keystream_positions = 0;
};

/// Runs one direction end to end. Throws std::invalid_argument /
/// std::runtime_error on malformed configuration; link-level corruption
/// is reported in counters, never thrown.
LinkReport run_direction(const SimDirectionConfig& cfg);

struct SimConfig {
    SimDirectionConfig forward;
    std::optional<SimDirectionConfig> reverse;  // full-duplex second direction
};

struct SimResult {
    LinkReport forward;
    std::optional<LinkReport> reverse;
};

SimResult run_simulation(const SimConfig& cfg);

/// Flat key-value config file. Recognized keys: frame_length, frame_count,
/// utilization, seed, key_tx, key_rx, schedule (e.g. "on@80,off@9000"),
/// error_positions (comma-separated bit indices), warmup_idle_groups,
/// min_blocks, reverse (0/1) plus reverse_key_tx / reverse_key_rx /
/// reverse_seed overrides.
SimConfig load_sim_config(const std::string& path);

std::string format_report(const LinkReport& r, const std::string& prefix = "");

struct BenchReport {
    std::uint64_t blocks = 0;
    // bits/s figures use the 66-bit line equivalent of one block
    double keystream_blocks_per_sec = 0.0;
    double keystream_bits_per_sec = 0.0;
    double cipher_blocks_per_sec = 0.0;
    double cipher_bits_per_sec = 0.0;
};

/// Times keystream generation alone and keystream + block cipher.
BenchReport bench_throughput(const CipherKey& key, std::uint64_t block_count);

std::string format_bench(const BenchReport& b);

}  // namespace physec
