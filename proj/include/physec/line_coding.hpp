#pragma once

#include <array>
#include <cstdint>

// 64b/66b block coding for a 10GBASE-R style PCS: encode of the
// traffic-reachable block formats, decode of all sixteen formats, and the
// fixed idle / Cipher_ON / Cipher_OFF management blocks carried as 0x55
// ordered sets.

namespace physec {

namespace xgmii {
// Control character values on the 8-bit MAC/PCS interface.
inline constexpr std::uint8_t kIdle = 0x07;
inline constexpr std::uint8_t kStart = 0xFB;
inline constexpr std::uint8_t kTerminate = 0xFD;
inline constexpr std::uint8_t kSequence = 0x9C;
inline constexpr std::uint8_t kError = 0xFE;
}  // namespace xgmii

/// One interface octet: either a data byte or a control character.
struct TxChar {
    std::uint8_t value = 0;
    bool is_control = false;

    static TxChar data(std::uint8_t v) { return {v, false}; }
    static TxChar control(std::uint8_t code) { return {code, true}; }

    bool is_data() const { return !is_control; }
    bool is(std::uint8_t code) const { return is_control && value == code; }

    friend bool operator==(const TxChar&, const TxChar&) = default;
};

/// Eight interface octets, lanes 0-7; the input unit of one 66-bit block.
struct CharGroup8 {
    std::array<TxChar, 8> lane{};

    friend bool operator==(const CharGroup8&, const CharGroup8&) = default;
};

/// Legal sync header values; anything else is a coding violation.
inline constexpr std::uint8_t kSyncData = 0b01;
inline constexpr std::uint8_t kSyncControl = 0b10;

inline bool sync_legal(std::uint8_t sync) {
    return sync == kSyncData || sync == kSyncControl;
}

/// 2-bit sync header plus 64-bit payload. Payload bit 0 is the first
/// payload bit on the wire; byte k of the payload sits in bits [8k+7:8k].
struct Block66 {
    std::uint8_t sync = 0;
    std::uint64_t payload = 0;

    friend bool operator==(const Block66&, const Block66&) = default;
};

/// Block format, keyed by the type field for control blocks.
enum class BlockType : std::uint8_t {
    Data,
    Ctrl8 = 0x1e,       // C0..C7
    Ctrl4Os4 = 0x2d,    // C0..C3 O4 D5..D7
    Ctrl4Start4 = 0x33, // C0..C3 S4 D5..D7
    Os0Start4 = 0x66,   // O0 D1..D3 S4 D5..D7
    Os0Os4 = 0x55,      // O0 D1..D3 O4 D5..D7
    Start0 = 0x78,      // S0 D1..D7
    Os0Ctrl4 = 0x4b,    // O0 D1..D3 C4..C7
    Term0 = 0x87,
    Term1 = 0x99,
    Term2 = 0xaa,
    Term3 = 0xb4,
    Term4 = 0xcc,
    Term5 = 0xd2,
    Term6 = 0xe1,
    Term7 = 0xff,
    Unknown = 0x01,
};

enum class CodecStatus : std::uint8_t {
    Ok,
    Unencodable,    // group matches no supported format
    InvalidHeader,  // sync not in {01, 10}
    InvalidType,    // control block with unknown type field
};

/// Encode result; on failure `block` holds an all-/E/ error block.
struct EncodeResult {
    Block66 block;
    CodecStatus status = CodecStatus::Ok;
    bool ok() const { return status == CodecStatus::Ok; }
};

/// Decode result; on failure `group` holds eight /E/ characters.
struct DecodeResult {
    CharGroup8 group;
    CodecStatus status = CodecStatus::Ok;
    bool ok() const { return status == CodecStatus::Ok; }
};

/// Encodes one group. Supported patterns: all data, all simple control
/// (idle/error), start at lane 0 or 4, terminate at any lane, and the
/// double ordered set.
EncodeResult encode_group(const CharGroup8& g);

/// Decodes any of the sixteen block formats; the exact inverse of
/// encode_group on every encodable group.
DecodeResult decode_block(const Block66& b);

Block66 make_idle_block();        // type 0x1e, eight /I/
Block66 make_error_block();       // type 0x1e, eight /E/
Block66 make_cipher_on_block();   // 0x55 double ordered set, code 0x04
Block66 make_cipher_off_block();  // 0x55 double ordered set, code 0x05

CharGroup8 idle_group();       // eight /I/ characters
CharGroup8 all_error_group();  // eight /E/ characters

BlockType classify(const Block66& b);
bool is_all_idle(const Block66& b);
bool is_cipher_on(const Block66& b);
bool is_cipher_off(const Block66& b);

}  // namespace physec
