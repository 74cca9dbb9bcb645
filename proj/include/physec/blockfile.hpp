#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "physec/line_coding.hpp"

// Block-stream file format: 9-byte records. Byte 0 carries the sync header
// in bits [1:0] (bit 0 first on the wire) with bits [7:2] zero; bytes 1-8
// hold the payload little-endian.

namespace physec {

struct BlockFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<Block66> read_block_stream(const std::string& path);
void write_block_stream(const std::string& path, std::span<const Block66> blocks);

std::array<std::uint8_t, 9> pack_block_record(const Block66& b);
Block66 unpack_block_record(std::span<const std::uint8_t, 9> rec);

}  // namespace physec
