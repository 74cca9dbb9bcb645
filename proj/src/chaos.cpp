#include "physec/chaos.hpp"

#include <limits>
#include <stdexcept>

namespace physec {

void GeneratorKey::validate() const {
    if (gamma.raw == 0) {
        throw std::invalid_argument("generator key: gamma must be nonzero");
    }
    if (y0.raw == 0) {
        throw std::invalid_argument("generator key: y0 must be nonzero");
    }
    if (y0.raw > LfsrState61::kMask) {
        throw std::invalid_argument("generator key: y0 exceeds 61 bits");
    }
}

Fraction64 stm_step(Fraction64 x, Fraction64 gamma) {
    if (gamma.raw == 0) {
        throw std::invalid_argument("stm_step: gamma must be nonzero");
    }
    using u128 = unsigned __int128;
    if (x.raw <= gamma.raw) {
        const u128 q = (u128{x.raw} << 64) / gamma.raw;
        // q == 2^64 exactly when x == gamma; 1.0 is unrepresentable.
        if (q > std::numeric_limits<std::uint64_t>::max()) {
            return Fraction64{std::numeric_limits<std::uint64_t>::max()};
        }
        return Fraction64{static_cast<std::uint64_t>(q)};
    }
    const std::uint64_t num = ~x.raw + 1;      // 2^64 - x
    const std::uint64_t den = ~gamma.raw + 1;  // 2^64 - gamma
    // x > gamma implies num < den, so the quotient always fits in 64 bits.
    return Fraction64{static_cast<std::uint64_t>((u128{num} << 64) / den)};
}

LfsrState61 lfsr_step(LfsrState61 s) {
    if (s.raw == 0) {
        throw std::invalid_argument("lfsr_step: all-zero state");
    }
    const std::uint64_t fb =
        ((s.raw >> 60) ^ (s.raw >> 59) ^ (s.raw >> 45) ^ (s.raw >> 44)) & 1;
    return LfsrState61{((s.raw << 1) | fb) & LfsrState61::kMask};
}

BasicGenerator::BasicGenerator(const GeneratorKey& key)
    : state_(key.x0), lfsr_(key.y0), gamma_(key.gamma) {
    key.validate();
}

std::uint16_t BasicGenerator::next16() {
    const Fraction64 x = stm_step(state_, gamma_);
    const auto out = static_cast<std::uint16_t>(x.raw);
    lfsr_ = lfsr_step(lfsr_);
    state_ = Fraction64{x.raw ^ (lfsr_.raw & 0xFF)};
    return out;
}

KeystreamBank64::KeystreamBank64(const std::array<GeneratorKey, 4>& keys)
    : gens_{BasicGenerator(keys[0]), BasicGenerator(keys[1]),
            BasicGenerator(keys[2]), BasicGenerator(keys[3])} {}

std::uint64_t KeystreamBank64::next64() {
    std::uint64_t word = 0;
    for (unsigned lane = 0; lane < 4; ++lane) {
        word |= std::uint64_t{gens_[lane].next16()} << (16 * lane);
    }
    return word;
}

}  // namespace physec
