#include "physec/line_coding.hpp"

namespace physec {

namespace {

// 7-bit control codes inside control blocks.
constexpr std::uint64_t kCcodeIdle = 0x00;
constexpr std::uint64_t kCcodeError = 0x1e;
// 4-bit ordered-set code: Sequence.
constexpr std::uint64_t kOcodeSequence = 0x0;

// Management ordered-set payload codes (lane 3 of each set).
constexpr std::uint8_t kSeqCodeCipherOn = 0x04;
constexpr std::uint8_t kSeqCodeCipherOff = 0x05;

constexpr std::uint64_t field(std::uint64_t value, unsigned lsb) {
    return value << lsb;
}

std::uint64_t take(std::uint64_t payload, unsigned lsb, unsigned width) {
    return (payload >> lsb) & ((std::uint64_t{1} << width) - 1);
}

bool simple_control(const TxChar& c) {
    return c.is(xgmii::kIdle) || c.is(xgmii::kError);
}

std::uint64_t ccode_of(const TxChar& c) {
    return c.is(xgmii::kIdle) ? kCcodeIdle : kCcodeError;
}

TxChar char_from_ccode(std::uint64_t code) {
    switch (code) {
        case kCcodeIdle:
            return TxChar::control(xgmii::kIdle);
        case kCcodeError:
            return TxChar::control(xgmii::kError);
        default:
            // Unsupported control codes surface as error characters.
            return TxChar::control(xgmii::kError);
    }
}

std::uint64_t pack_type(BlockType t) {
    return static_cast<std::uint64_t>(t) & 0xFF;
}

// Double ordered set: lanes (Sequence, 0x00, 0x00, code) in both halves.
Block66 make_sequence_pair_block(std::uint8_t code) {
    std::uint64_t p = pack_type(BlockType::Os0Os4);
    p |= field(0x00, 8);                   // D1
    p |= field(0x00, 16);                  // D2
    p |= field(code, 24);                  // D3
    p |= field(kOcodeSequence, 32);        // O0
    p |= field(kOcodeSequence, 36);        // O4
    p |= field(0x00, 40);                  // D5
    p |= field(0x00, 48);                  // D6
    p |= field(std::uint64_t{code}, 56);   // D7
    return Block66{kSyncControl, p};
}

}  // namespace

Block66 make_idle_block() {
    std::uint64_t p = pack_type(BlockType::Ctrl8);
    for (unsigned i = 0; i < 8; ++i) p |= field(kCcodeIdle, 8 + 7 * i);
    return Block66{kSyncControl, p};
}

Block66 make_error_block() {
    std::uint64_t p = pack_type(BlockType::Ctrl8);
    for (unsigned i = 0; i < 8; ++i) p |= field(kCcodeError, 8 + 7 * i);
    return Block66{kSyncControl, p};
}

Block66 make_cipher_on_block() { return make_sequence_pair_block(kSeqCodeCipherOn); }

Block66 make_cipher_off_block() { return make_sequence_pair_block(kSeqCodeCipherOff); }

CharGroup8 idle_group() {
    CharGroup8 g;
    g.lane.fill(TxChar::control(xgmii::kIdle));
    return g;
}

CharGroup8 all_error_group() {
    CharGroup8 g;
    g.lane.fill(TxChar::control(xgmii::kError));
    return g;
}

BlockType classify(const Block66& b) {
    if (b.sync == kSyncData) return BlockType::Data;
    if (b.sync != kSyncControl) return BlockType::Unknown;
    switch (b.payload & 0xFF) {
        case 0x1e: return BlockType::Ctrl8;
        case 0x2d: return BlockType::Ctrl4Os4;
        case 0x33: return BlockType::Ctrl4Start4;
        case 0x66: return BlockType::Os0Start4;
        case 0x55: return BlockType::Os0Os4;
        case 0x78: return BlockType::Start0;
        case 0x4b: return BlockType::Os0Ctrl4;
        case 0x87: return BlockType::Term0;
        case 0x99: return BlockType::Term1;
        case 0xaa: return BlockType::Term2;
        case 0xb4: return BlockType::Term3;
        case 0xcc: return BlockType::Term4;
        case 0xd2: return BlockType::Term5;
        case 0xe1: return BlockType::Term6;
        case 0xff: return BlockType::Term7;
        default: return BlockType::Unknown;
    }
}

bool is_all_idle(const Block66& b) { return b == make_idle_block(); }

bool is_cipher_on(const Block66& b) { return b == make_cipher_on_block(); }

bool is_cipher_off(const Block66& b) { return b == make_cipher_off_block(); }

EncodeResult encode_group(const CharGroup8& g) {
    const auto& c = g.lane;

    bool any_control = false;
    for (const auto& ch : c) any_control |= ch.is_control;

    if (!any_control) {
        std::uint64_t p = 0;
        for (unsigned i = 0; i < 8; ++i) p |= field(c[i].value, 8 * i);
        return {Block66{kSyncData, p}, CodecStatus::Ok};
    }

    auto all_data = [&](unsigned lo, unsigned hi) {
        for (unsigned i = lo; i <= hi; ++i)
            if (c[i].is_control) return false;
        return true;
    };
    auto all_simple = [&](unsigned lo, unsigned hi) {
        for (unsigned i = lo; i <= hi; ++i)
            if (!simple_control(c[i])) return false;
        return true;
    };

    // S0 D1..D7
    if (c[0].is(xgmii::kStart) && all_data(1, 7)) {
        std::uint64_t p = pack_type(BlockType::Start0);
        for (unsigned i = 1; i < 8; ++i) p |= field(c[i].value, 8 * i);
        return {Block66{kSyncControl, p}, CodecStatus::Ok};
    }

    // C0..C3 S4 D5..D7
    if (c[4].is(xgmii::kStart) && all_simple(0, 3) && all_data(5, 7)) {
        std::uint64_t p = pack_type(BlockType::Ctrl4Start4);
        for (unsigned i = 0; i < 4; ++i) p |= field(ccode_of(c[i]), 8 + 7 * i);
        for (unsigned i = 5; i < 8; ++i) p |= field(c[i].value, 8 * i);
        return {Block66{kSyncControl, p}, CodecStatus::Ok};
    }

    // O0 D1..D3 O4 D5..D7
    if (c[0].is(xgmii::kSequence) && c[4].is(xgmii::kSequence) &&
        all_data(1, 3) && all_data(5, 7)) {
        std::uint64_t p = pack_type(BlockType::Os0Os4);
        for (unsigned i = 1; i < 4; ++i) p |= field(c[i].value, 8 * i);
        p |= field(kOcodeSequence, 32);
        p |= field(kOcodeSequence, 36);
        for (unsigned i = 5; i < 8; ++i) p |= field(c[i].value, 8 * i);
        return {Block66{kSyncControl, p}, CodecStatus::Ok};
    }

    // D0..D(t-1) Tt C(t+1)..C7
    for (unsigned t = 0; t < 8; ++t) {
        if (!c[t].is(xgmii::kTerminate)) continue;
        if (t > 0 && !all_data(0, t - 1)) break;
        if (t < 7 && !all_simple(t + 1, 7)) break;
        static constexpr BlockType kTermType[8] = {
            BlockType::Term0, BlockType::Term1, BlockType::Term2,
            BlockType::Term3, BlockType::Term4, BlockType::Term5,
            BlockType::Term6, BlockType::Term7};
        std::uint64_t p = pack_type(kTermType[t]);
        for (unsigned i = 0; i < t; ++i) p |= field(c[i].value, 8 * (i + 1));
        // Control fields are right-aligned so C7 always ends at bit 63.
        for (unsigned i = t + 1; i < 8; ++i)
            p |= field(ccode_of(c[i]), 15 + 7 * (i - 1));
        return {Block66{kSyncControl, p}, CodecStatus::Ok};
    }

    // C0..C7 (idle and/or error)
    if (all_simple(0, 7)) {
        std::uint64_t p = pack_type(BlockType::Ctrl8);
        for (unsigned i = 0; i < 8; ++i) p |= field(ccode_of(c[i]), 8 + 7 * i);
        return {Block66{kSyncControl, p}, CodecStatus::Ok};
    }

    return {make_error_block(), CodecStatus::Unencodable};
}

DecodeResult decode_block(const Block66& b) {
    if (!sync_legal(b.sync)) {
        return {all_error_group(), CodecStatus::InvalidHeader};
    }

    CharGroup8 g;
    const std::uint64_t p = b.payload;

    if (b.sync == kSyncData) {
        for (unsigned i = 0; i < 8; ++i)
            g.lane[i] = TxChar::data(static_cast<std::uint8_t>(take(p, 8 * i, 8)));
        return {g, CodecStatus::Ok};
    }

    auto data_at = [&](unsigned lane, unsigned byte) {
        g.lane[lane] = TxChar::data(static_cast<std::uint8_t>(take(p, 8 * byte, 8)));
    };
    auto ctrl_at = [&](unsigned lane, unsigned lsb) {
        g.lane[lane] = char_from_ccode(take(p, lsb, 7));
    };
    auto terminate_row = [&](unsigned t) {
        for (unsigned i = 0; i < t; ++i) data_at(i, i + 1);
        g.lane[t] = TxChar::control(xgmii::kTerminate);
        for (unsigned i = t + 1; i < 8; ++i) ctrl_at(i, 15 + 7 * (i - 1));
    };

    switch (classify(b)) {
        case BlockType::Ctrl8:
            for (unsigned i = 0; i < 8; ++i) ctrl_at(i, 8 + 7 * i);
            break;
        case BlockType::Ctrl4Os4:
            for (unsigned i = 0; i < 4; ++i) ctrl_at(i, 8 + 7 * i);
            g.lane[4] = TxChar::control(xgmii::kSequence);
            for (unsigned i = 5; i < 8; ++i) data_at(i, i);
            break;
        case BlockType::Ctrl4Start4:
            for (unsigned i = 0; i < 4; ++i) ctrl_at(i, 8 + 7 * i);
            g.lane[4] = TxChar::control(xgmii::kStart);
            for (unsigned i = 5; i < 8; ++i) data_at(i, i);
            break;
        case BlockType::Os0Start4:
            g.lane[0] = TxChar::control(xgmii::kSequence);
            for (unsigned i = 1; i < 4; ++i) data_at(i, i);
            g.lane[4] = TxChar::control(xgmii::kStart);
            for (unsigned i = 5; i < 8; ++i) data_at(i, i);
            break;
        case BlockType::Os0Os4:
            g.lane[0] = TxChar::control(xgmii::kSequence);
            for (unsigned i = 1; i < 4; ++i) data_at(i, i);
            g.lane[4] = TxChar::control(xgmii::kSequence);
            for (unsigned i = 5; i < 8; ++i) data_at(i, i);
            break;
        case BlockType::Start0:
            g.lane[0] = TxChar::control(xgmii::kStart);
            for (unsigned i = 1; i < 8; ++i) data_at(i, i);
            break;
        case BlockType::Os0Ctrl4:
            g.lane[0] = TxChar::control(xgmii::kSequence);
            for (unsigned i = 1; i < 4; ++i) data_at(i, i);
            for (unsigned i = 4; i < 8; ++i) ctrl_at(i, 36 + 7 * (i - 4));
            break;
        case BlockType::Term0: terminate_row(0); break;
        case BlockType::Term1: terminate_row(1); break;
        case BlockType::Term2: terminate_row(2); break;
        case BlockType::Term3: terminate_row(3); break;
        case BlockType::Term4: terminate_row(4); break;
        case BlockType::Term5: terminate_row(5); break;
        case BlockType::Term6: terminate_row(6); break;
        case BlockType::Term7: terminate_row(7); break;
        default:
            return {all_error_group(), CodecStatus::InvalidType};
    }
    return {g, CodecStatus::Ok};
}

}  // namespace physec
