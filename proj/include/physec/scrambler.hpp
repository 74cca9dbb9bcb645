#pragma once

#include <cstdint>

// Self-synchronizing payload scrambler, G(x) = 1 + x^39 + x^58.
// Operates on 64-bit block payloads, bit 0 first; sync headers go around it.
// The implementation is word-parallel and is checked against a bit-serial
// reference in the test suite.

namespace physec {

namespace detail {
constexpr std::uint64_t kScramblerMask = (std::uint64_t{1} << 58) - 1;
std::uint64_t reverse58(std::uint64_t x) noexcept;
}  // namespace detail

/// Multiplicative scrambler: each output bit is the input bit XOR the
/// output bits emitted 39 and 58 positions earlier.
class Scrambler {
public:
    Scrambler() = default;

    /// History bit k = output bit emitted k+1 positions ago.
    static Scrambler from_history(std::uint64_t h) noexcept;
    std::uint64_t history() const noexcept;

    std::uint64_t scramble(std::uint64_t payload) noexcept;

private:
    std::uint64_t s_ = 0;  // chronological: bit 57 = newest output bit
};

/// Matching descrambler; shifts in received bits, so it self-synchronizes
/// after 58 error-free input bits.
class Descrambler {
public:
    Descrambler() = default;

    /// History bit k = input bit received k+1 positions ago.
    static Descrambler from_history(std::uint64_t h) noexcept;
    std::uint64_t history() const noexcept;

    std::uint64_t descramble(std::uint64_t payload) noexcept;

private:
    std::uint64_t s_ = 0;  // chronological: bit 57 = newest input bit
};

}  // namespace physec
