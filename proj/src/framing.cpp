#include "physec/framing.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace physec {

namespace {

constexpr std::size_t kMinIfgOctets = 12;
constexpr std::uint8_t kPreamble = 0x55;
constexpr std::uint8_t kSfd = 0xD5;
constexpr std::size_t kHeaderOctets = 8;  // 7 preamble + SFD
constexpr std::size_t kFcsOctets = 4;

std::array<std::uint32_t, 256> build_crc_table() {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int k = 0; k < 8; ++k) c = (c >> 1) ^ ((c & 1) ? 0xEDB88320u : 0);
        t[i] = c;
    }
    return t;
}

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Smallest gap >= wanted that keeps the next START on lane 0.
std::size_t align_gap(std::size_t frame_octets, std::size_t wanted) {
    const std::size_t rem = (8 - frame_octets % 8) % 8;
    std::size_t gap = wanted < kMinIfgOctets ? kMinIfgOctets : wanted;
    if (gap % 8 != rem) gap += (rem + 8 - gap % 8) % 8;
    return gap;
}

}  // namespace

std::uint32_t crc32(std::span<const std::uint8_t> data) {
    static const auto table = build_crc_table();
    std::uint32_t crc = 0xFFFFFFFFu;
    for (std::uint8_t b : data) crc = (crc >> 8) ^ table[(crc ^ b) & 0xFF];
    return crc ^ 0xFFFFFFFFu;
}

void FrameSpec::validate() const {
    if (frame_length < 64) {
        throw std::invalid_argument("frame_length must be >= 64 bytes");
    }
    if (!(utilization > 0.0) || utilization > 1.0) {
        throw std::invalid_argument("utilization must be in (0,1]");
    }
    const std::size_t f = frame_octets();
    const std::size_t min_gap = align_gap(f, kMinIfgOctets);
    const double max_util = static_cast<double>(f) / static_cast<double>(f + min_gap);
    if (frame_count > 0 && utilization > max_util) {
        throw std::invalid_argument(
            "utilization " + std::to_string(utilization) + " not realizable; maximum " +
            std::to_string(max_util) + " at frame_length " + std::to_string(frame_length));
    }
}

FrameGenerator::FrameGenerator(const FrameSpec& spec, unsigned leading_idle_groups)
    : spec_(spec),
      rng_state_(spec.payload_seed),
      warmup_pending_(leading_idle_groups > 0),
      leading_idle_groups_(leading_idle_groups) {
    spec_.validate();
}

void FrameGenerator::push_idles(std::size_t count) {
    buf_.insert(buf_.end(), count, TxChar::control(xgmii::kIdle));
}

void FrameGenerator::push_frame() {
    buf_.push_back(TxChar::control(xgmii::kStart));
    for (unsigned i = 0; i < 7; ++i) buf_.push_back(TxChar::data(kPreamble));
    buf_.push_back(TxChar::data(kSfd));

    // START + 7 preamble + SFD + payload + FCS + TERMINATE = frame_octets()
    const std::size_t payload_len =
        spec_.frame_octets() - (1 + kHeaderOctets + kFcsOctets + 1);
    std::vector<std::uint8_t> payload(payload_len);
    std::size_t i = 0;
    while (i < payload_len) {
        std::uint64_t w = splitmix64(rng_state_);
        for (int k = 0; k < 8 && i < payload_len; ++k, ++i) {
            payload[i] = static_cast<std::uint8_t>(w >> (8 * k));
        }
    }
    for (std::uint8_t b : payload) buf_.push_back(TxChar::data(b));

    const std::uint32_t fcs = crc32(payload);
    for (int k = 0; k < 4; ++k) {
        buf_.push_back(TxChar::data(static_cast<std::uint8_t>(fcs >> (8 * k))));
    }
    buf_.push_back(TxChar::control(xgmii::kTerminate));

    ++frames_emitted_;
    frame_octets_ += spec_.frame_octets();
    total_octets_ += spec_.frame_octets();

    // Gap sized so the cumulative utilization tracks the target.
    const double desired_total =
        static_cast<double>(frame_octets_) / spec_.utilization;
    const double deficit = desired_total - static_cast<double>(total_octets_);
    const std::size_t wanted =
        deficit > 0 ? static_cast<std::size_t>(std::llround(deficit)) : 0;
    const std::size_t gap = align_gap(spec_.frame_octets(), wanted);
    push_idles(gap);
    total_octets_ += gap;
}

void FrameGenerator::refill() {
    buf_.clear();
    head_ = 0;
    if (warmup_pending_) {
        warmup_pending_ = false;
        push_idles(std::size_t{leading_idle_groups_} * 8);
        total_octets_ += std::size_t{leading_idle_groups_} * 8;
        if (!buf_.empty()) return;
    }
    if (frames_emitted_ < spec_.frame_count) push_frame();
}

CharGroup8 FrameGenerator::next_group() {
    if (head_ >= buf_.size()) refill();
    CharGroup8 g;
    if (head_ >= buf_.size()) {
        return idle_group();  // drained; callers padding past `done` get idles
    }
    for (unsigned i = 0; i < 8; ++i) g.lane[i] = buf_[head_ + i];
    head_ += 8;
    return g;
}

void Deframer::feed(const CharGroup8& g) {
    for (const TxChar& c : g.lane) {
        if (st_ == St::Gap) {
            if (c.is(xgmii::kStart)) {
                st_ = St::InFrame;
                buf_.clear();
            }
            continue;
        }
        if (c.is_data()) {
            buf_.push_back(c.value);
        } else if (c.is(xgmii::kTerminate)) {
            finish();
            st_ = St::Gap;
        } else if (c.is(xgmii::kStart)) {
            ++c_.frames_aborted;
            buf_.clear();  // restart on premature START
        } else {
            ++c_.frames_aborted;
            st_ = St::Gap;
        }
    }
}

void Deframer::finish() {
    std::size_t i = 0;
    while (i < buf_.size() && buf_[i] == kPreamble) ++i;
    if (i < 1 || i >= buf_.size() || buf_[i] != kSfd) {
        ++c_.frames_aborted;
        return;
    }
    const std::size_t body = buf_.size() - (i + 1);
    if (body < kFcsOctets + 1) {
        ++c_.frames_aborted;
        return;
    }
    const std::uint8_t* data = buf_.data() + i + 1;
    const std::size_t msg_len = body - kFcsOctets;
    std::uint32_t fcs = 0;
    for (int k = 0; k < 4; ++k) fcs |= std::uint32_t{data[msg_len + k]} << (8 * k);
    if (crc32({data, msg_len}) == fcs) {
        ++c_.frames_received;
    } else {
        ++c_.crc_errors;
    }
}

}  // namespace physec
