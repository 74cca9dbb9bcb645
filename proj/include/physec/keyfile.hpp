#pragma once

#include <stdexcept>
#include <string>

#include "physec/phy_sec.hpp"

// Key file format: five text lines, one per generator (bank lanes 0-3,
// then the sync generator). Each line holds three whitespace-separated
// hex fields of 16 digits: gamma, x0, y0. y0's top three bits must be
// zero so it fits the 61-bit register.

namespace physec {

struct KeyFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CipherKey load_key_file(const std::string& path);
void save_key_file(const std::string& path, const CipherKey& key);

/// Parses the five-line text form directly; errors name line and field.
CipherKey parse_key_text(const std::string& text, const std::string& origin);
std::string format_key_text(const CipherKey& key);

}  // namespace physec
