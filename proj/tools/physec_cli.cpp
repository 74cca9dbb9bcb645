// physec command line: keystream generation, block-stream encryption,
// link simulation, randomness testing and throughput benchmarking.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "physec/blockfile.hpp"
#include "physec/keyfile.hpp"
#include "physec/link_sim.hpp"
#include "physec/nist.hpp"
#include "physec/phy_sec.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTestFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBadHeader = 3;

struct BadHeader {
    std::size_t record;
    std::uint8_t sync;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

int cmd_keystream(const std::string& key_path, std::uint64_t blocks,
                  const std::string& out_path, const std::string& which) {
    const physec::CipherKey key = physec::load_key_file(key_path);
    std::vector<std::uint8_t> out;
    if (which == "data") {
        physec::KeystreamBank64 bank(key.bank);
        out.reserve(blocks * 8);
        for (std::uint64_t i = 0; i < blocks; ++i) {
            const std::uint64_t w = bank.next64();
            for (int k = 0; k < 8; ++k) out.push_back(static_cast<std::uint8_t>(w >> (8 * k)));
        }
    } else {
        physec::SyncGenerator sync(key.sync);
        out.assign((blocks + 7) / 8, 0);
        for (std::uint64_t i = 0; i < blocks; ++i) {
            if (sync.next_bit()) out[i >> 3] |= static_cast<std::uint8_t>(1u << (i & 7));
        }
    }
    write_file(out_path, out);
    return kExitOk;
}

int cmd_crypt(const std::string& key_path, const std::string& in_path,
              const std::string& out_path, std::uint64_t start_index) {
    const physec::CipherKey key = physec::load_key_file(key_path);
    const std::vector<physec::Block66> blocks = physec::read_block_stream(in_path);

    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (!physec::sync_legal(blocks[i].sync)) {
            throw BadHeader{i, blocks[i].sync};
        }
    }

    physec::KeystreamBank64 bank(key.bank);
    physec::SyncGenerator sync(key.sync);
    for (std::uint64_t i = 0; i < start_index; ++i) {
        bank.next64();
        sync.next_bit();
    }

    std::vector<physec::Block66> out;
    out.reserve(blocks.size());
    for (const auto& b : blocks) {
        out.push_back(physec::cipher_block(b, bank.next64(), sync.next_bit()));
    }
    physec::write_block_stream(out_path, out);
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path) {
    const physec::SimConfig cfg = physec::load_sim_config(config_path);
    const physec::SimResult res = physec::run_simulation(cfg);

    std::string text = physec::format_report(res.forward);
    if (res.reverse) text += physec::format_report(*res.reverse, "reverse_");

    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
        out << text;
    }
    return kExitOk;
}

int cmd_nist(const std::string& in_path) {
    const std::vector<std::uint8_t> bytes = read_file(in_path);
    const std::size_t nbits = bytes.size() * 8;
    const physec::BitSequence seq = physec::BitSequence::from_packed(bytes, nbits);

    const auto results = physec::run_suite(seq);
    bool any_fail = false;
    std::size_t ran = 0;
    for (const auto& r : results) {
        if (r.insufficient_data) {
            std::printf("%-22s INSUFFICIENT (need >= %zu bits, have %zu)\n",
                        r.name.c_str(), r.min_bits, nbits);
            continue;
        }
        ++ran;
        any_fail |= !r.pass;
        std::printf("%-22s p=%.6f %s\n", r.name.c_str(), r.p_value,
                    r.pass ? "PASS" : "FAIL");
    }
    if (ran == 0) {
        std::fprintf(stderr, "input too short for every implemented test\n");
        return kExitConfig;
    }
    return any_fail ? kExitTestFail : kExitOk;
}

int cmd_bench(const std::string& key_path, std::uint64_t blocks) {
    const physec::CipherKey key = physec::load_key_file(key_path);
    const physec::BenchReport rep = physec::bench_throughput(key, blocks);
    std::cout << physec::format_bench(rep);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"64b/66b physical-layer stream encryption toolkit"};
    app.require_subcommand(1);

    std::string key_path, in_path, out_path, config_path;
    std::string which = "data";
    std::uint64_t blocks = 0;
    std::uint64_t start_index = 0;

    auto* ks = app.add_subcommand(
        "keystream",
        "Generate keystream: 64-bit data words (little-endian) or packed sync "
        "bits (bit 0 of byte 0 first)");
    ks->add_option("--key", key_path, "key file (5 lines: gamma x0 y0 hex)")->required();
    ks->add_option("--blocks", blocks, "number of 64-bit words (data) or bits (sync)")
        ->required();
    ks->add_option("--out", out_path, "output file")->required();
    ks->add_option("--which", which, "data|sync")
        ->check(CLI::IsMember({"data", "sync"}));

    auto* enc = app.add_subcommand(
        "encrypt", "XOR a 9-byte-record block stream with the keystream");
    enc->add_option("--key", key_path, "key file")->required();
    enc->add_option("--in", in_path, "input block stream")->required();
    enc->add_option("--out", out_path, "output block stream")->required();
    enc->add_option("--start-index", start_index, "first keystream position");

    auto* dec = app.add_subcommand(
        "decrypt", "Inverse of encrypt with the same key and start index");
    dec->add_option("--key", key_path, "key file")->required();
    dec->add_option("--in", in_path, "input block stream")->required();
    dec->add_option("--out", out_path, "output block stream")->required();
    dec->add_option("--start-index", start_index, "first keystream position");

    auto* sim = app.add_subcommand("simulate", "Run the loopback link simulator");
    sim->add_option("--config", config_path, "flat key-value config file")->required();
    sim->add_option("--out", out_path, "also write the report to a file");

    auto* nist = app.add_subcommand(
        "nist", "Run the randomness test subset on a packed-bit file");
    nist->add_option("--in", in_path, "packed bit file (bit 0 of byte 0 first)")
        ->required();

    auto* bench = app.add_subcommand("bench", "Measure cipher throughput");
    bench->add_option("--key", key_path, "key file")->required();
    bench->add_option("--blocks", blocks, "blocks per timed pass")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (ks->parsed()) return cmd_keystream(key_path, blocks, out_path, which);
        if (enc->parsed() || dec->parsed()) {
            return cmd_crypt(key_path, in_path, out_path, start_index);
        }
        if (sim->parsed()) return cmd_simulate(config_path, out_path);
        if (nist->parsed()) return cmd_nist(in_path);
        if (bench->parsed()) return cmd_bench(key_path, blocks);
    } catch (const BadHeader& bh) {
        std::fprintf(stderr, "record %zu: illegal sync header 0b%u%u\n", bh.record,
                     (bh.sync >> 1) & 1, bh.sync & 1);
        return kExitBadHeader;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    return kExitConfig;
}
