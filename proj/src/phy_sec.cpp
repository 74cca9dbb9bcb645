#include "physec/phy_sec.hpp"

#include <string>

namespace physec {

int header_map(std::uint8_t sync) {
    switch (sync) {
        case kSyncData: return 0;
        case kSyncControl: return 1;
        default:
            throw InvalidHeaderError("illegal sync header " + std::to_string(sync));
    }
}

std::uint8_t header_unmap(int bit) { return bit ? kSyncControl : kSyncData; }

Block66 cipher_block(const Block66& b, std::uint64_t ks_data, int ks_sync) {
    Block66 out;
    out.sync = header_unmap(header_map(b.sync) ^ (ks_sync & 1));
    out.payload = b.payload ^ ks_data;
    return out;
}

SecDirection::SecDirection(const CipherKey& key)
    : bank_(key.bank), sync_(key.sync) {}

bool SecDirection::request_cipher_on() {
    if (mode_ != SecMode::Bypass) return false;
    mode_ = SecMode::ArmedOn;
    return true;
}

bool SecDirection::request_cipher_off() {
    if (mode_ != SecMode::Ciphering) return false;
    mode_ = SecMode::ArmedOff;
    return true;
}

Block66 SecDirection::apply_keystream(const Block66& b) {
    ++positions_;
    return cipher_block(b, bank_.next64(), sync_.next_bit());
}

Block66 SecDirection::tx_process(const Block66& in) {
    switch (mode_) {
        case SecMode::Bypass:
            return in;
        case SecMode::ArmedOn:
            if (is_all_idle(in)) {
                // The enable message itself travels in clear; ciphering
                // starts with the block after it.
                mode_ = SecMode::Ciphering;
                return make_cipher_on_block();
            }
            return in;
        case SecMode::Ciphering:
            return apply_keystream(in);
        case SecMode::ArmedOff:
            if (is_all_idle(in)) {
                const Block66 out = apply_keystream(make_cipher_off_block());
                mode_ = SecMode::Bypass;
                return out;
            }
            return apply_keystream(in);
    }
    return in;  // unreachable
}

Block66 SecDirection::rx_process(const Block66& in) {
    switch (mode_) {
        case SecMode::Bypass:
        case SecMode::ArmedOn:
            if (is_cipher_on(in)) {
                mode_ = SecMode::Ciphering;
                return make_idle_block();
            }
            return in;
        case SecMode::Ciphering:
        case SecMode::ArmedOff: {
            const Block66 out = apply_keystream(in);
            if (is_cipher_off(out)) {
                mode_ = SecMode::Bypass;
                return make_idle_block();
            }
            return out;
        }
    }
    return in;  // unreachable
}

}  // namespace physec
