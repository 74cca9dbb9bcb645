#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "physec/chaos.hpp"
#include "physec/line_coding.hpp"

// Stream-cipher operation on 66-bit blocks and the enable/disable state
// machines that splice Cipher_ON / Cipher_OFF ordered sets into the idle
// stream. One SecDirection instance drives one direction of a link, used
// either as transmitter (tx_process) or receiver (rx_process).

namespace physec {

/// Datapath key: four independent bank lanes plus the sync-header generator.
struct CipherKey {
    std::array<GeneratorKey, 4> bank;
    GeneratorKey sync;

    void validate() const {
        for (const auto& k : bank) k.validate();
        sync.validate();
    }
};

struct InvalidHeaderError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// 0b01 -> 0, 0b10 -> 1. Throws InvalidHeaderError otherwise.
int header_map(std::uint8_t sync);

/// 0 -> 0b01, 1 -> 0b10.
std::uint8_t header_unmap(int bit);

/// XORs the payload with ks_data and the mapped header with ks_sync; the
/// result keeps a legal header, so the 66-bit transition guarantee holds.
/// Involution: applying the same keystream twice restores the block.
Block66 cipher_block(const Block66& b, std::uint64_t ks_data, int ks_sync);

enum class SecMode : std::uint8_t { Bypass, ArmedOn, Ciphering, ArmedOff };

class SecDirection {
public:
    explicit SecDirection(const CipherKey& key);

    /// Arms Cipher_ON insertion; allowed only in Bypass. Returns false and
    /// leaves the state untouched on a wrong-mode request.
    bool request_cipher_on();

    /// Arms Cipher_OFF insertion; allowed only in Ciphering.
    bool request_cipher_off();

    /// Transmit-side step. ArmedOn replaces the next all-idle block with a
    /// clear Cipher_ON and starts ciphering afterwards; ArmedOff replaces
    /// the next all-idle block with a ciphered Cipher_OFF and then returns
    /// to Bypass. Exactly one keystream step is consumed per ciphered block.
    Block66 tx_process(const Block66& in);

    /// Receive-side step. A clear Cipher_ON turns on deciphering and is
    /// replaced by an idle block; a deciphered Cipher_OFF turns it off.
    Block66 rx_process(const Block66& in);

    SecMode mode() const noexcept { return mode_; }

    /// Number of keystream steps consumed so far (bank and sync advance in
    /// lockstep). Matched TX/RX instances agree after every processed block.
    std::uint64_t keystream_positions() const noexcept { return positions_; }

private:
    Block66 apply_keystream(const Block66& b);

    SecMode mode_ = SecMode::Bypass;
    KeystreamBank64 bank_;
    SyncGenerator sync_;
    std::uint64_t positions_ = 0;
};

}  // namespace physec
