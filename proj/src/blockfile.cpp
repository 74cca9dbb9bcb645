#include "physec/blockfile.hpp"

#include <array>
#include <fstream>

namespace physec {

std::array<std::uint8_t, 9> pack_block_record(const Block66& b) {
    std::array<std::uint8_t, 9> rec{};
    rec[0] = b.sync & 0x03;
    for (unsigned i = 0; i < 8; ++i)
        rec[1 + i] = static_cast<std::uint8_t>(b.payload >> (8 * i));
    return rec;
}

Block66 unpack_block_record(std::span<const std::uint8_t, 9> rec) {
    Block66 b;
    b.sync = rec[0] & 0x03;
    for (unsigned i = 0; i < 8; ++i)
        b.payload |= std::uint64_t{rec[1 + i]} << (8 * i);
    return b;
}

std::vector<Block66> read_block_stream(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BlockFileError("cannot open block stream: " + path);

    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (bytes.size() % 9 != 0) {
        throw BlockFileError(path + ": size " + std::to_string(bytes.size()) +
                             " is not a multiple of 9-byte records");
    }

    std::vector<Block66> blocks;
    blocks.reserve(bytes.size() / 9);
    for (std::size_t off = 0; off < bytes.size(); off += 9) {
        if (bytes[off] & 0xFC) {
            throw BlockFileError(path + ": record " + std::to_string(off / 9) +
                                 " has nonzero reserved bits in byte 0");
        }
        blocks.push_back(
            unpack_block_record(std::span<const std::uint8_t, 9>(&bytes[off], 9)));
    }
    return blocks;
}

void write_block_stream(const std::string& path, std::span<const Block66> blocks) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw BlockFileError("cannot open for writing: " + path);
    for (const auto& b : blocks) {
        const auto rec = pack_block_record(b);
        out.write(reinterpret_cast<const char*>(rec.data()), rec.size());
    }
    if (!out) throw BlockFileError("write failed: " + path);
}

}  // namespace physec
