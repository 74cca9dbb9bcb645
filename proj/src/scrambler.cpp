#include "physec/scrambler.hpp"

namespace physec {
namespace detail {

namespace {
std::uint64_t reverse64(std::uint64_t x) noexcept {
    x = ((x & 0x5555555555555555ULL) << 1) | ((x >> 1) & 0x5555555555555555ULL);
    x = ((x & 0x3333333333333333ULL) << 2) | ((x >> 2) & 0x3333333333333333ULL);
    x = ((x & 0x0f0f0f0f0f0f0f0fULL) << 4) | ((x >> 4) & 0x0f0f0f0f0f0f0f0fULL);
    return __builtin_bswap64(x);
}
}  // namespace

std::uint64_t reverse58(std::uint64_t x) noexcept { return reverse64(x) >> 6; }

}  // namespace detail

Scrambler Scrambler::from_history(std::uint64_t h) noexcept {
    Scrambler sc;
    sc.s_ = detail::reverse58(h & detail::kScramblerMask);
    return sc;
}

std::uint64_t Scrambler::history() const noexcept { return detail::reverse58(s_); }

std::uint64_t Scrambler::scramble(std::uint64_t payload) noexcept {
    // Taps at distances 39 and 58. Bits below 39 take both taps from the
    // history; higher bits fold in output bits produced within this word,
    // which are already final because 2*39 > 64.
    std::uint64_t o = payload ^ (s_ >> 19) ^ s_;
    o ^= o << 39;
    o ^= o << 58;
    s_ = o >> 6;
    return o;
}

Descrambler Descrambler::from_history(std::uint64_t h) noexcept {
    Descrambler d;
    d.s_ = detail::reverse58(h & detail::kScramblerMask);
    return d;
}

std::uint64_t Descrambler::history() const noexcept { return detail::reverse58(s_); }

std::uint64_t Descrambler::descramble(std::uint64_t payload) noexcept {
    const std::uint64_t o =
        payload ^ (s_ >> 19) ^ s_ ^ (payload << 39) ^ (payload << 58);
    s_ = payload >> 6;
    return o;
}

}  // namespace physec
