#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <random>
#include <set>
#include <vector>

#include "physec/blockfile.hpp"
#include "physec/line_coding.hpp"

using namespace physec;

namespace {

CharGroup8 data_group(std::uint8_t first) {
    CharGroup8 g;
    for (unsigned i = 0; i < 8; ++i) g.lane[i] = TxChar::data(static_cast<std::uint8_t>(first + i));
    return g;
}

// Any group the encoder accepts, drawn across all supported patterns.
CharGroup8 random_encodable_group(std::mt19937_64& rng) {
    CharGroup8 g;
    auto byte = [&] { return static_cast<std::uint8_t>(rng() & 0xFF); };
    switch (rng() % 6) {
        case 0:  // all data
            for (auto& c : g.lane) c = TxChar::data(byte());
            break;
        case 1:  // all idle
            g = idle_group();
            break;
        case 2:  // mixed simple control
            for (auto& c : g.lane)
                c = TxChar::control((rng() & 1) ? xgmii::kIdle : xgmii::kError);
            break;
        case 3:  // start at lane 0
            g.lane[0] = TxChar::control(xgmii::kStart);
            for (unsigned i = 1; i < 8; ++i) g.lane[i] = TxChar::data(byte());
            break;
        case 4:  // start at lane 4 after idles
            for (unsigned i = 0; i < 4; ++i) g.lane[i] = TxChar::control(xgmii::kIdle);
            g.lane[4] = TxChar::control(xgmii::kStart);
            for (unsigned i = 5; i < 8; ++i) g.lane[i] = TxChar::data(byte());
            break;
        default: {  // terminate at any lane
            const unsigned t = rng() % 8;
            for (unsigned i = 0; i < t; ++i) g.lane[i] = TxChar::data(byte());
            g.lane[t] = TxChar::control(xgmii::kTerminate);
            for (unsigned i = t + 1; i < 8; ++i) g.lane[i] = TxChar::control(xgmii::kIdle);
            break;
        }
    }
    return g;
}

}  // namespace

TEST_CASE("data block layout") {
    const EncodeResult r = encode_group(data_group(0x00));
    REQUIRE(r.ok());
    CHECK(r.block.sync == kSyncData);
    CHECK(r.block.payload == 0x0706050403020100ULL);
    CHECK(decode_block(r.block).group == data_group(0x00));
}

TEST_CASE("idle block layout") {
    const EncodeResult r = encode_group(idle_group());
    REQUIRE(r.ok());
    CHECK(r.block.sync == kSyncControl);
    CHECK(r.block.payload == 0x000000000000001eULL);
    CHECK(r.block == make_idle_block());
    CHECK(is_all_idle(make_idle_block()));
    CHECK(decode_block(make_idle_block()).group == idle_group());
}

TEST_CASE("start at lane 0") {
    CharGroup8 g;
    g.lane[0] = TxChar::control(xgmii::kStart);
    for (unsigned i = 1; i < 8; ++i) g.lane[i] = TxChar::data(static_cast<std::uint8_t>(0x10 + i));
    const EncodeResult r = encode_group(g);
    REQUIRE(r.ok());
    CHECK(r.block.sync == kSyncControl);
    CHECK((r.block.payload & 0xFF) == 0x78);
    for (unsigned i = 1; i < 8; ++i) {
        CHECK(((r.block.payload >> (8 * i)) & 0xFF) == 0x10 + i);
    }
    CHECK(decode_block(r.block).group == g);
}

TEST_CASE("management block byte patterns") {
    const Block66 on = make_cipher_on_block();
    const Block66 off = make_cipher_off_block();

    CHECK(on.sync == kSyncControl);
    CHECK(on.payload == 0x0400000004000055ULL);   // bytes 55 00 00 04 00 00 00 04
    CHECK(off.payload == 0x0500000005000055ULL);  // bytes 55 00 00 05 00 00 00 05
    CHECK((on.payload ^ off.payload) == 0x0100000001000000ULL);

    CHECK(classify(on) == BlockType::Os0Os4);
    CHECK(is_cipher_on(on));
    CHECK_FALSE(is_cipher_off(on));
    CHECK(is_cipher_off(off));
    CHECK_FALSE(is_cipher_on(off));
    CHECK_FALSE(is_all_idle(on));

    // mixed codes must not be recognized as either message
    Block66 mixed = on;
    mixed.payload = (mixed.payload & ~(0xFFULL << 56)) | (0x05ULL << 56);
    CHECK_FALSE(is_cipher_on(mixed));
    CHECK_FALSE(is_cipher_off(mixed));

    // a double ordered set built from characters encodes to the same block
    CharGroup8 g;
    g.lane[0] = TxChar::control(xgmii::kSequence);
    g.lane[1] = TxChar::data(0x00);
    g.lane[2] = TxChar::data(0x00);
    g.lane[3] = TxChar::data(0x04);
    g.lane[4] = TxChar::control(xgmii::kSequence);
    g.lane[5] = TxChar::data(0x00);
    g.lane[6] = TxChar::data(0x00);
    g.lane[7] = TxChar::data(0x04);
    const EncodeResult r = encode_group(g);
    REQUIRE(r.ok());
    CHECK(r.block == on);
    CHECK(decode_block(on).group == g);
}

TEST_CASE("decoder rejects illegal headers") {
    for (std::uint8_t sync : {std::uint8_t{0b00}, std::uint8_t{0b11}}) {
        const DecodeResult r = decode_block(Block66{sync, 0x0706050403020100ULL});
        CHECK(r.status == CodecStatus::InvalidHeader);
        CHECK(r.group == all_error_group());
    }
}

TEST_CASE("decoder rejects unknown type fields") {
    std::set<std::uint8_t> valid = {0x1e, 0x2d, 0x33, 0x66, 0x55, 0x78, 0x4b, 0x87,
                                    0x99, 0xaa, 0xb4, 0xcc, 0xd2, 0xe1, 0xff};
    std::mt19937_64 rng(0x5eed0201);
    int rejected = 0;
    for (int t = 0; t < 256; ++t) {
        Block66 b{kSyncControl, (rng() << 8) | static_cast<std::uint8_t>(t)};
        const DecodeResult r = decode_block(b);
        if (valid.count(static_cast<std::uint8_t>(t))) {
            CHECK(r.ok());
        } else {
            CHECK(r.status == CodecStatus::InvalidType);
            CHECK(r.group == all_error_group());
            ++rejected;
        }
    }
    CHECK(rejected == 256 - 15);
}

TEST_CASE("type fields map to distinct block types") {
    std::set<BlockType> seen;
    for (std::uint8_t t : {0x1e, 0x2d, 0x33, 0x66, 0x55, 0x78, 0x4b, 0x87,
                           0x99, 0xaa, 0xb4, 0xcc, 0xd2, 0xe1, 0xff}) {
        seen.insert(classify(Block66{kSyncControl, t}));
    }
    CHECK(seen.size() == 15);
    CHECK(classify(Block66{kSyncData, 0x1e}) == BlockType::Data);
    CHECK(classify(Block66{0b00, 0}) == BlockType::Unknown);
}

TEST_CASE("every control row decodes to its symbol layout") {
    struct Row {
        std::uint8_t type;
        // expected lane kinds: D=data, C=simple control, S=start, T=terminate, O=sequence
        const char* kinds;
    };
    static const Row rows[] = {
        {0x1e, "CCCCCCCC"}, {0x2d, "CCCCODDD"}, {0x33, "CCCCSDDD"},
        {0x66, "ODDDSDDD"}, {0x55, "ODDDODDD"}, {0x78, "SDDDDDDD"},
        {0x4b, "ODDDCCCC"}, {0x87, "TCCCCCCC"}, {0x99, "DTCCCCCC"},
        {0xaa, "DDTCCCCC"}, {0xb4, "DDDTCCCC"}, {0xcc, "DDDDTCCC"},
        {0xd2, "DDDDDTCC"}, {0xe1, "DDDDDDTC"}, {0xff, "DDDDDDDT"}};

    for (const Row& row : rows) {
        const DecodeResult r = decode_block(Block66{kSyncControl, row.type});
        REQUIRE(r.ok());
        for (unsigned i = 0; i < 8; ++i) {
            const TxChar& c = r.group.lane[i];
            switch (row.kinds[i]) {
                case 'D': CHECK(c.is_data()); break;
                case 'C': CHECK((c.is(xgmii::kIdle) || c.is(xgmii::kError))); break;
                case 'S': CHECK(c.is(xgmii::kStart)); break;
                case 'T': CHECK(c.is(xgmii::kTerminate)); break;
                case 'O': CHECK(c.is(xgmii::kSequence)); break;
            }
        }
    }
}

TEST_CASE("round trip over randomized supported groups") {
    std::mt19937_64 rng(0x5eed0202);
    for (int i = 0; i < 20000; ++i) {
        const CharGroup8 g = random_encodable_group(rng);
        const EncodeResult enc = encode_group(g);
        REQUIRE(enc.ok());
        REQUIRE(sync_legal(enc.block.sync));
        const DecodeResult dec = decode_block(enc.block);
        REQUIRE(dec.ok());
        REQUIRE(dec.group == g);
    }
}

TEST_CASE("unencodable groups return the error block") {
    CharGroup8 g = data_group(0);
    g.lane[3] = TxChar::control(xgmii::kStart);  // start in a middle lane
    const EncodeResult r = encode_group(g);
    CHECK(r.status == CodecStatus::Unencodable);
    CHECK(r.block == make_error_block());
    // the recovery block itself is a valid all-control block
    CHECK(decode_block(r.block).group == all_error_group());

    CharGroup8 h = idle_group();
    h.lane[6] = TxChar::control(xgmii::kSequence);  // stray ordered-set char
    CHECK(encode_group(h).status == CodecStatus::Unencodable);
}

TEST_CASE("block record packing") {
    std::mt19937_64 rng(0x5eed0203);
    for (int i = 0; i < 1000; ++i) {
        Block66 b{(rng() & 1) ? kSyncData : kSyncControl, rng()};
        const auto rec = pack_block_record(b);
        CHECK((rec[0] & 0xFC) == 0);
        CHECK(unpack_block_record(rec) == b);
    }
}

TEST_CASE("block stream file round trip") {
    std::mt19937_64 rng(0x5eed0204);
    std::vector<Block66> blocks;
    for (int i = 0; i < 257; ++i) {
        blocks.push_back(Block66{(rng() & 1) ? kSyncData : kSyncControl, rng()});
    }
    const std::string path = "test_blockfile.bin";
    write_block_stream(path, blocks);
    CHECK(read_block_stream(path) == blocks);
    std::remove(path.c_str());
}

TEST_CASE("block stream file rejects torn records") {
    const std::string path = "test_blockfile_torn.bin";
    std::vector<Block66> blocks{Block66{kSyncData, 1}};
    write_block_stream(path, blocks);
    // append a stray byte
    {
        std::FILE* f = std::fopen(path.c_str(), "ab");
        std::fputc(0x00, f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(read_block_stream(path), BlockFileError);
    std::remove(path.c_str());
}
