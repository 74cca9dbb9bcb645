#pragma once

#include <array>
#include <cstdint>

// Fixed-point skew tent map keystream generators with LFSR perturbation.
//
// The chaotic state lives in [0,1) as a 64-bit binary fraction. Each
// iteration applies the piecewise-linear tent map, emits the 16 low bits
// of the fresh state, and XORs the low byte of a 61-bit maximal-length
// LFSR into the state that is fed back, which breaks the short cycles a
// pure fixed-point map would fall into.

namespace physec {

/// Unsigned 64-bit binary fraction: value = raw / 2^64, in [0,1).
struct Fraction64 {
    std::uint64_t raw = 0;
    friend bool operator==(const Fraction64&, const Fraction64&) = default;
};

/// 61-bit Fibonacci LFSR state. All-zero is absorbing and rejected.
struct LfsrState61 {
    static constexpr std::uint64_t kMask = (std::uint64_t{1} << 61) - 1;
    std::uint64_t raw = 1;
    friend bool operator==(const LfsrState61&, const LfsrState61&) = default;
};

/// 189-bit key of one basic generator: map parameter, map seed, LFSR seed.
struct GeneratorKey {
    Fraction64 gamma;
    Fraction64 x0;
    LfsrState61 y0;

    /// Throws std::invalid_argument if gamma or y0 is zero or y0 exceeds 61 bits.
    void validate() const;
};

/// One tent-map iteration. Exact 128-bit intermediate, truncating division.
/// x <= gamma maps to x/gamma (clamped to the largest fraction when x == gamma),
/// x > gamma maps to (1-x)/(1-gamma). Throws std::invalid_argument on gamma == 0.
Fraction64 stm_step(Fraction64 x, Fraction64 gamma);

/// One LFSR shift toward the MSB, taps at bits {60, 59, 45, 44}.
/// Throws std::invalid_argument on the all-zero state.
LfsrState61 lfsr_step(LfsrState61 s);

/// Basic 16-bit keystream generator: tent map state plus perturbing LFSR.
class BasicGenerator {
public:
    explicit BasicGenerator(const GeneratorKey& key);

    /// Advances one iteration and returns the 16 low bits of the new map
    /// state, taken before the LFSR perturbation is folded in.
    std::uint16_t next16();

    Fraction64 state() const noexcept { return state_; }
    LfsrState61 lfsr() const noexcept { return lfsr_; }

private:
    Fraction64 state_;  // perturbed feedback state x~
    LfsrState61 lfsr_;
    Fraction64 gamma_;
};

/// Bank of four basic generators producing one 64-bit word per step.
class KeystreamBank64 {
public:
    explicit KeystreamBank64(const std::array<GeneratorKey, 4>& keys);

    /// Lane i occupies bits [16i+15 : 16i]; every generator advances once.
    std::uint64_t next64();

private:
    std::array<BasicGenerator, 4> gens_;
};

/// 1-bit generator for sync-header keystream: LSB of the same map output.
class SyncGenerator {
public:
    explicit SyncGenerator(const GeneratorKey& key) : gen_(key) {}

    int next_bit() { return gen_.next16() & 1; }

private:
    BasicGenerator gen_;
};

}  // namespace physec
