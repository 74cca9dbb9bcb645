#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>
#include <random>

#include "physec/chaos.hpp"
#include "physec/nist.hpp"

#include "oracle.hpp"

using namespace physec;

namespace {

GeneratorKey fixture_key() {
    return GeneratorKey{Fraction64{0x9e3779b97f4a7c15ULL},
                        Fraction64{0x243f6a8885a308d3ULL},
                        LfsrState61{0x0011223344556677ULL}};
}

GeneratorKey random_key(std::mt19937_64& rng) {
    GeneratorKey k;
    k.gamma.raw = rng() | 1;
    k.x0.raw = rng();
    k.y0.raw = (rng() & LfsrState61::kMask) | 1;
    return k;
}

}  // namespace

TEST_CASE("stm_step dyadic spot values") {
    const Fraction64 half{0x8000000000000000ULL};
    const Fraction64 quarter{0x4000000000000000ULL};
    const Fraction64 three_quarters{0xC000000000000000ULL};

    CHECK(stm_step(quarter, half).raw == half.raw);          // 0.25/0.5
    CHECK(stm_step(Fraction64{0}, half).raw == 0);           // fixed point
    CHECK(stm_step(three_quarters, half).raw == half.raw);   // (1-0.75)/0.5
    CHECK(stm_step(half, half).raw == ~std::uint64_t{0});    // x/gamma = 1.0 clamps
}

TEST_CASE("stm_step rejects gamma zero") {
    CHECK_THROWS_AS(stm_step(Fraction64{1}, Fraction64{0}), std::invalid_argument);
}

TEST_CASE("stm_step matches the long-division oracle") {
    std::mt19937_64 rng(0x5eed0001);
    for (int i = 0; i < 20000; ++i) {
        const std::uint64_t x = rng();
        const std::uint64_t g = rng() | 1;
        CHECK(stm_step(Fraction64{x}, Fraction64{g}).raw == oracle::stm(x, g));
    }
}

TEST_CASE("stm_step clamp fires only at x == gamma") {
    std::mt19937_64 rng(0x5eed0002);
    for (int i = 0; i < 20000; ++i) {
        const std::uint64_t x = rng();
        const std::uint64_t g = rng() | 1;
        if (x == g) continue;
        CHECK(stm_step(Fraction64{x}, Fraction64{g}).raw != ~std::uint64_t{0});
    }
    // boundary case itself
    CHECK(stm_step(Fraction64{12345}, Fraction64{12345}).raw == ~std::uint64_t{0});
}

TEST_CASE("lfsr_step shift and feedback") {
    CHECK(lfsr_step(LfsrState61{0x1}).raw == 0x2);
    CHECK(lfsr_step(LfsrState61{std::uint64_t{1} << 60}).raw == 0x1);
    CHECK_THROWS_AS(lfsr_step(LfsrState61{0}), std::invalid_argument);
}

TEST_CASE("lfsr never reaches zero") {
    std::mt19937_64 rng(0x5eed0003);
    LfsrState61 s{(rng() & LfsrState61::kMask) | 1};
    for (int i = 0; i < 1000000; ++i) {
        s = lfsr_step(s);
        if (s.raw == 0) {
            FAIL("LFSR hit the absorbing state at step " << i);
        }
    }
    CHECK(s.raw != 0);
}

TEST_CASE("generator first output for a dyadic key") {
    // stm(0.25, 0.5) = 0.5 whose 16 low bits are zero
    BasicGenerator g(GeneratorKey{Fraction64{0x8000000000000000ULL},
                                  Fraction64{0x4000000000000000ULL},
                                  LfsrState61{1}});
    CHECK(g.next16() == 0x0000);
}

TEST_CASE("generator trace matches frozen oracle fixture") {
    // Computed once with an arbitrary-precision integer implementation.
    static const std::uint16_t kFirst16[16] = {
        0xe3df, 0xeb97, 0xce49, 0xbaa9, 0x3768, 0x29f2, 0x6025, 0x8a76,
        0xec22, 0x76f9, 0xa308, 0xbdeb, 0x60e5, 0xfca7, 0x5a2b, 0x56f5};
    constexpr std::uint64_t kFnvOver1000 = 0xd2fb07223f5c9e31ULL;

    BasicGenerator g(fixture_key());
    std::uint64_t x = fixture_key().x0.raw;
    std::uint64_t l = fixture_key().y0.raw;

    std::uint64_t fnv = 0xcbf29ce484222325ULL;
    for (int i = 0; i < 1000; ++i) {
        const std::uint16_t got = g.next16();
        const std::uint16_t want = oracle::generator_step(fixture_key().gamma.raw, x, l);
        REQUIRE(got == want);
        if (i < 16) REQUIRE(got == kFirst16[i]);
        for (std::uint16_t byte : {static_cast<std::uint16_t>(got & 0xFF),
                                   static_cast<std::uint16_t>(got >> 8)}) {
            fnv = (fnv ^ byte) * 0x100000001b3ULL;
        }
    }
    CHECK(fnv == kFnvOver1000);
}

TEST_CASE("two identically keyed generators never diverge") {
    std::mt19937_64 rng(0x5eed0004);
    const GeneratorKey k = random_key(rng);
    BasicGenerator a(k), b(k);
    for (int i = 0; i < 1000000; ++i) {
        if (a.next16() != b.next16()) {
            FAIL("divergence at step " << i);
        }
    }
    CHECK(a.state() == b.state());
}

TEST_CASE("bank64 packs lanes in order") {
    static const std::uint64_t kKeys[4][3] = {
        {0x9e3779b97f4a7c15, 0x243f6a8885a308d3, 0x0123456789abcd},
        {0x6a09e667f3bcc908, 0xbb67ae8584caa73b, 0x0fedcba9876543},
        {0x3c6ef372fe94f82b, 0xa54ff53a5f1d36f1, 0x13579bdf02468a},
        {0x510e527fade682d1, 0x9b05688c2b3e6c1f, 0x0a5a5a5a5a5a5a}};
    static const std::uint64_t kWords[4] = {
        0x163e027d39fde3dfULL, 0x13b56cad9dcbebb7ULL,
        0x8f7b5a9f8c3ccea4ULL, 0x96b9dac4423aba61ULL};

    std::array<GeneratorKey, 4> keys;
    for (int i = 0; i < 4; ++i) {
        keys[i] = GeneratorKey{Fraction64{kKeys[i][0]}, Fraction64{kKeys[i][1]},
                               LfsrState61{kKeys[i][2]}};
    }
    KeystreamBank64 bank(keys);
    for (int i = 0; i < 4; ++i) CHECK(bank.next64() == kWords[i]);

    // packing identity against four independent generators
    std::array<BasicGenerator, 4> gens{BasicGenerator(keys[0]), BasicGenerator(keys[1]),
                                       BasicGenerator(keys[2]), BasicGenerator(keys[3])};
    KeystreamBank64 bank2(keys);
    for (int step = 0; step < 256; ++step) {
        std::uint64_t want = 0;
        for (int lane = 0; lane < 4; ++lane) {
            want |= std::uint64_t{gens[lane].next16()} << (16 * lane);
        }
        CHECK(bank2.next64() == want);
    }
}

TEST_CASE("bank64 with four equal keys repeats one lane") {
    std::mt19937_64 rng(0x5eed0005);
    const GeneratorKey k = random_key(rng);
    KeystreamBank64 bank({k, k, k, k});
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t w = bank.next64();
        const std::uint64_t lane = w & 0xFFFF;
        CHECK(w == (lane | lane << 16 | lane << 32 | lane << 48));
    }
}

TEST_CASE("bank64 stream passes monobit") {
    std::mt19937_64 rng(0x5eed0006);
    std::array<GeneratorKey, 4> keys{random_key(rng), random_key(rng),
                                     random_key(rng), random_key(rng)};
    KeystreamBank64 bank(keys);
    std::uint64_t ones = 0;
    constexpr std::uint64_t kWords = 1000000;
    for (std::uint64_t i = 0; i < kWords; ++i) ones += std::popcount(bank.next64());
    const TestResult r = monobit_from_counts(ones, kWords * 64);
    CHECK(r.pass);
}

TEST_CASE("sync generator equals LSB of an identically keyed basic generator") {
    const GeneratorKey k = fixture_key();
    SyncGenerator sg(k);
    BasicGenerator bg(k);

    // frozen fixture: first 64 sync bits, LSB-first
    constexpr std::uint64_t kFirstBits = 0x25fe73f8f3adfa4fULL;
    std::uint64_t got = 0;
    for (int i = 0; i < 64; ++i) {
        const int bit = sg.next_bit();
        CHECK(bit == (bg.next16() & 1));
        got |= std::uint64_t{static_cast<unsigned>(bit)} << i;
    }
    CHECK(got == kFirstBits);
}

TEST_CASE("sync generator first bit for the dyadic key is zero") {
    SyncGenerator sg(GeneratorKey{Fraction64{0x8000000000000000ULL},
                                  Fraction64{0x4000000000000000ULL},
                                  LfsrState61{1}});
    CHECK(sg.next_bit() == 0);
}

TEST_CASE("sync bit stream is balanced within 4 sigma") {
    std::mt19937_64 rng(0x5eed0007);
    SyncGenerator sg(random_key(rng));
    constexpr std::uint64_t kBits = 1000000;
    std::uint64_t ones = 0;
    for (std::uint64_t i = 0; i < kBits; ++i) ones += static_cast<unsigned>(sg.next_bit());
    const double dev = std::abs(static_cast<double>(ones) - kBits / 2.0);
    CHECK(dev <= 4.0 * 0.5 * std::sqrt(static_cast<double>(kBits)));
}

TEST_CASE("key validation") {
    GeneratorKey k = fixture_key();
    CHECK_NOTHROW(k.validate());

    k.gamma.raw = 0;
    CHECK_THROWS_AS(k.validate(), std::invalid_argument);

    k = fixture_key();
    k.y0.raw = 0;
    CHECK_THROWS_AS(k.validate(), std::invalid_argument);

    k = fixture_key();
    k.y0.raw = LfsrState61::kMask + 1;
    CHECK_THROWS_AS(k.validate(), std::invalid_argument);

    // x0 = 0 is a legal key; the perturbation ejects the orbit
    k = fixture_key();
    k.x0.raw = 0;
    CHECK_NOTHROW(k.validate());
    BasicGenerator g(k);
    bool nonzero_seen = false;
    for (int i = 0; i < 64; ++i) nonzero_seen |= g.next16() != 0;
    CHECK(nonzero_seen);
}
