#include "physec/link_sim.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "physec/keyfile.hpp"
#include "physec/scrambler.hpp"

namespace physec {

BitFifo::BitFifo() : w_(64, 0) {}

void BitFifo::grow() {
    std::vector<std::uint64_t> bigger(w_.size() * 2, 0);
    const std::uint64_t old_mask = w_.size() - 1;
    const std::uint64_t new_mask = bigger.size() - 1;
    for (std::uint64_t i = head_ >> 6; i <= (tail_ >> 6); ++i) {
        bigger[i & new_mask] = w_[i & old_mask];
    }
    w_.swap(bigger);
}

void BitFifo::push(std::uint64_t bits, unsigned n) {
    if (n == 0) return;
    if (n < 64) bits &= (std::uint64_t{1} << n) - 1;
    while (tail_ - head_ + n > w_.size() * 64) grow();

    const unsigned off = tail_ & 63;
    const std::uint64_t mask = w_.size() - 1;
    const std::uint64_t slot = (tail_ >> 6) & mask;
    if (off == 0) w_[slot] = 0;
    w_[slot] |= bits << off;
    const unsigned room = 64 - off;
    if (n > room) w_[(slot + 1) & mask] = bits >> room;
    tail_ += n;
}

std::uint64_t BitFifo::peek(std::uint64_t offset, unsigned n) const {
    const std::uint64_t pos = head_ + offset;
    const unsigned off = pos & 63;
    const std::uint64_t mask = w_.size() - 1;
    const std::uint64_t slot = (pos >> 6) & mask;
    std::uint64_t v = w_[slot] >> off;
    if (off != 0 && n > 64 - off) v |= w_[(slot + 1) & mask] << (64 - off);
    return n == 64 ? v : v & ((std::uint64_t{1} << n) - 1);
}

std::uint64_t BitFifo::pop(unsigned n) {
    const std::uint64_t v = peek(0, n);
    head_ += n;
    return v;
}

Channel::Channel(std::vector<std::uint64_t> flip_positions)
    : flips_(std::move(flip_positions)) {
    std::sort(flips_.begin(), flips_.end());
}

void Channel::push(std::uint64_t bits, unsigned n) {
    const std::uint64_t base = fifo_.total_pushed();
    while (next_flip_ < flips_.size() && flips_[next_flip_] < base + n) {
        if (flips_[next_flip_] >= base) {
            bits ^= std::uint64_t{1} << (flips_[next_flip_] - base);
        }
        ++next_flip_;
    }
    fifo_.push(bits, n);
}

std::optional<Block66> BlockLock::next(BitFifo& in) {
    for (;;) {
        if (in.size() < 66) return std::nullopt;
        const auto sync = static_cast<std::uint8_t>(in.peek(0, 2));
        if (!locked_) {
            if (sync_legal(sync)) {
                in.skip(66);
                if (++good_ == 64) {
                    locked_ = true;
                    lock_at_ = static_cast<std::int64_t>(in.total_popped());
                }
            } else {
                in.skip(1);
                good_ = 0;
            }
            continue;
        }
        if (!sync_legal(sync)) {
            ++invalid_headers_;
            locked_ = false;
            good_ = 0;
            in.skip(1);
            continue;
        }
        Block66 b;
        b.sync = sync;
        b.payload = in.peek(2, 64);
        in.skip(66);
        return b;
    }
}

LinkReport run_direction(const SimDirectionConfig& cfg) {
    cfg.frames.validate();
    for (std::size_t i = 1; i < cfg.schedule.size(); ++i) {
        if (cfg.schedule[i].block_index < cfg.schedule[i - 1].block_index) {
            throw std::invalid_argument("schedule events must be in ascending order");
        }
    }

    FrameGenerator gen(cfg.frames, cfg.warmup_idle_groups);
    SecDirection tx(cfg.tx_key);
    SecDirection rx(cfg.rx_key);
    Scrambler scrambler;
    Descrambler descrambler;
    Channel channel(cfg.error_bits);
    BlockLock lock;
    Deframer mac;
    LinkReport r;

    std::size_t next_ev = 0;
    std::uint64_t tx_index = 0;

    auto pump_rx = [&] {
        while (auto wire = lock.next(channel.fifo())) {
            Block66 b = *wire;
            b.payload = descrambler.descramble(b.payload);
            b = rx.rx_process(b);
            mac.feed(decode_block(b).group);
            ++r.blocks_received;
        }
    };

    while (!gen.done() || r.blocks_sent < cfg.min_wire_blocks) {
        while (next_ev < cfg.schedule.size() &&
               cfg.schedule[next_ev].block_index == tx_index) {
            const auto& ev = cfg.schedule[next_ev];
            const bool ok = ev.enable ? tx.request_cipher_on() : tx.request_cipher_off();
            if (!ok) {
                throw std::runtime_error(
                    "schedule: cipher request rejected at block " +
                    std::to_string(ev.block_index));
            }
            ++next_ev;
        }

        Block66 b = tx.tx_process(encode_group(gen.next_group()).block);

        if (b.sync == kSyncControl) ++r.wire_header_ones;
        r.cipher_payload_bits += 64;
        r.cipher_payload_one_bits += std::popcount(b.payload);

        const std::uint64_t wire_payload = scrambler.scramble(b.payload);
        r.wire_payload_bits += 64;
        r.wire_payload_one_bits += std::popcount(wire_payload);

        channel.push(b.sync, 2);
        channel.push(wire_payload, 64);
        ++r.blocks_sent;
        ++tx_index;

        pump_rx();
    }
    pump_rx();

    r.frames_sent = gen.frames_emitted();
    r.frames_received = mac.counters().frames_received;
    r.crc_errors = mac.counters().crc_errors;
    r.frames_aborted = mac.counters().frames_aborted;
    r.invalid_headers = lock.invalid_headers();
    r.lock_acquired_at = lock.lock_acquired_at();
    r.tx_keystream_positions = tx.keystream_positions();
    r.rx_keystream_positions = rx.keystream_positions();
    r.header_one_fraction =
        r.blocks_sent ? static_cast<double>(r.wire_header_ones) /
                            static_cast<double>(r.blocks_sent)
                      : 0.0;
    r.measured_utilization =
        gen.total_octets_sent()
            ? static_cast<double>(gen.frame_octets_sent()) /
                  static_cast<double>(gen.total_octets_sent())
            : 0.0;
    return r;
}

SimResult run_simulation(const SimConfig& cfg) {
    SimResult res;
    res.forward = run_direction(cfg.forward);
    if (cfg.reverse) res.reverse = run_direction(*cfg.reverse);
    return res;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<ScheduleEvent> parse_schedule(const std::string& text) {
    std::vector<ScheduleEvent> evs;
    for (const auto& tok : split(text, ',')) {
        const auto at = tok.find('@');
        if (at == std::string::npos) {
            throw std::invalid_argument("schedule entry '" + tok + "': expected on@N or off@N");
        }
        const std::string verb = tok.substr(0, at);
        ScheduleEvent ev;
        if (verb == "on") ev.enable = true;
        else if (verb == "off") ev.enable = false;
        else throw std::invalid_argument("schedule entry '" + tok + "': unknown action");
        ev.block_index = std::stoull(tok.substr(at + 1));
        evs.push_back(ev);
    }
    return evs;
}

}  // namespace

SimConfig load_sim_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config: " + path);

    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key = value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    static const std::vector<std::string> known = {
        "frame_length", "frame_count", "utilization", "seed",
        "key_tx", "key_rx", "schedule", "error_positions",
        "warmup_idle_groups", "min_blocks",
        "reverse", "reverse_key_tx", "reverse_key_rx", "reverse_seed"};
    for (const auto& [k, v] : kv) {
        if (std::find(known.begin(), known.end(), k) == known.end()) {
            throw std::invalid_argument(path + ": unknown key '" + k + "'");
        }
    }

    auto get = [&](const std::string& k) -> const std::string* {
        auto it = kv.find(k);
        return it == kv.end() ? nullptr : &it->second;
    };
    auto require = [&](const std::string& k) -> const std::string& {
        const auto* v = get(k);
        if (!v) throw std::invalid_argument(path + ": missing required key '" + k + "'");
        return *v;
    };

    SimConfig cfg;
    auto& fwd = cfg.forward;
    if (const auto* v = get("frame_length")) fwd.frames.frame_length = std::stoull(*v);
    if (const auto* v = get("frame_count")) fwd.frames.frame_count = std::stoull(*v);
    if (const auto* v = get("utilization")) fwd.frames.utilization = std::stod(*v);
    if (const auto* v = get("seed")) fwd.frames.payload_seed = std::stoull(*v);
    fwd.tx_key = load_key_file(require("key_tx"));
    fwd.rx_key = load_key_file(require("key_rx"));
    if (const auto* v = get("schedule")) fwd.schedule = parse_schedule(*v);
    if (const auto* v = get("error_positions")) {
        for (const auto& tok : split(*v, ',')) fwd.error_bits.push_back(std::stoull(tok));
    }
    if (const auto* v = get("warmup_idle_groups")) {
        fwd.warmup_idle_groups = static_cast<unsigned>(std::stoul(*v));
    }
    if (const auto* v = get("min_blocks")) fwd.min_wire_blocks = std::stoull(*v);

    if (const auto* v = get("reverse"); v && *v != "0") {
        SimDirectionConfig rev = fwd;
        rev.error_bits.clear();
        if (const auto* k = get("reverse_key_tx")) rev.tx_key = load_key_file(*k);
        if (const auto* k = get("reverse_key_rx")) rev.rx_key = load_key_file(*k);
        if (const auto* s = get("reverse_seed")) rev.frames.payload_seed = std::stoull(*s);
        cfg.reverse = std::move(rev);
    }
    return cfg;
}

std::string format_report(const LinkReport& r, const std::string& prefix) {
    std::ostringstream out;
    auto emit = [&](const char* k, auto v) { out << prefix << k << "=" << v << "\n"; };
    emit("frames_sent", r.frames_sent);
    emit("frames_received", r.frames_received);
    emit("crc_errors", r.crc_errors);
    emit("frames_aborted", r.frames_aborted);
    emit("invalid_headers", r.invalid_headers);
    emit("blocks_sent", r.blocks_sent);
    emit("blocks_received", r.blocks_received);
    emit("wire_header_ones", r.wire_header_ones);
    emit("wire_payload_bits", r.wire_payload_bits);
    emit("wire_payload_one_bits", r.wire_payload_one_bits);
    emit("cipher_payload_bits", r.cipher_payload_bits);
    emit("cipher_payload_one_bits", r.cipher_payload_one_bits);
    emit("header_one_fraction", r.header_one_fraction);
    emit("measured_utilization", r.measured_utilization);
    emit("lock_acquired_at", r.lock_acquired_at);
    emit("tx_keystream_positions", r.tx_keystream_positions);
    emit("rx_keystream_positions", r.rx_keystream_positions);
    return out.str();
}

namespace {
volatile std::uint64_t g_bench_sink;
}

BenchReport bench_throughput(const CipherKey& key, std::uint64_t block_count) {
    key.validate();
    if (block_count == 0) throw std::invalid_argument("bench: block_count must be > 0");
    using clock = std::chrono::steady_clock;
    BenchReport rep;
    rep.blocks = block_count;

    {
        KeystreamBank64 bank(key.bank);
        SyncGenerator sync(key.sync);
        // warmup
        for (std::uint64_t i = 0; i < block_count / 10 + 1; ++i) {
            g_bench_sink = bank.next64() ^ static_cast<std::uint64_t>(sync.next_bit());
        }
        std::uint64_t sink = 0;
        const auto t0 = clock::now();
        for (std::uint64_t i = 0; i < block_count; ++i) {
            sink ^= bank.next64();
            sink ^= static_cast<std::uint64_t>(sync.next_bit()) << 1;
        }
        const auto t1 = clock::now();
        g_bench_sink = sink;
        const double s = std::chrono::duration<double>(t1 - t0).count();
        rep.keystream_blocks_per_sec = static_cast<double>(block_count) / s;
        rep.keystream_bits_per_sec = rep.keystream_blocks_per_sec * 66.0;
    }

    {
        KeystreamBank64 bank(key.bank);
        SyncGenerator sync(key.sync);
        Block66 b{kSyncData, 0x0123456789abcdefULL};
        for (std::uint64_t i = 0; i < block_count / 10 + 1; ++i) {
            b = cipher_block(b, bank.next64(), sync.next_bit());
        }
        const auto t0 = clock::now();
        for (std::uint64_t i = 0; i < block_count; ++i) {
            b = cipher_block(b, bank.next64(), sync.next_bit());
        }
        const auto t1 = clock::now();
        g_bench_sink = b.payload ^ b.sync;
        const double s = std::chrono::duration<double>(t1 - t0).count();
        rep.cipher_blocks_per_sec = static_cast<double>(block_count) / s;
        rep.cipher_bits_per_sec = rep.cipher_blocks_per_sec * 66.0;
    }
    return rep;
}

std::string format_bench(const BenchReport& b) {
    std::ostringstream out;
    out << "blocks=" << b.blocks << "\n"
        << "keystream_blocks_per_sec=" << b.keystream_blocks_per_sec << "\n"
        << "keystream_bits_per_sec=" << b.keystream_bits_per_sec << "\n"
        << "cipher_blocks_per_sec=" << b.cipher_blocks_per_sec << "\n"
        << "cipher_bits_per_sec=" << b.cipher_bits_per_sec << "\n";
    return out.str();
}

}  // namespace physec
