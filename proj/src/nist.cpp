#include "physec/nist.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace physec {

BitSequence BitSequence::from_packed(std::vector<std::uint8_t> bytes, std::size_t nbits) {
    if (bytes.size() * 8 < nbits) {
        throw std::invalid_argument("from_packed: byte buffer shorter than bit count");
    }
    BitSequence s;
    s.bytes_ = std::move(bytes);
    s.n_ = nbits;
    // clear slack so count_ones can work bytewise
    if (nbits % 8 != 0 && !s.bytes_.empty()) {
        s.bytes_[nbits / 8] &= static_cast<std::uint8_t>((1u << (nbits % 8)) - 1);
    }
    s.bytes_.resize((nbits + 7) / 8);
    return s;
}

void BitSequence::push_back(int bit) {
    if (n_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_[n_ >> 3] |= static_cast<std::uint8_t>(1u << (n_ & 7));
    ++n_;
}

void BitSequence::append_word(std::uint64_t word, unsigned nbits) {
    for (unsigned i = 0; i < nbits; ++i) push_back((word >> i) & 1);
}

std::uint64_t BitSequence::count_ones() const {
    std::uint64_t ones = 0;
    for (std::uint8_t b : bytes_) ones += std::popcount(unsigned{b});
    return ones;
}

namespace detail {

namespace {
constexpr int kMaxIter = 2000000;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
}  // namespace

// Q(a, x) by series for x < a+1, Lentz continued fraction otherwise.
double igamc(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("igamc: bad arguments");
    if (x == 0.0) return 1.0;

    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // P(a,x) series; Q = 1 - P
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int i = 0; i < kMaxIter; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * kEps) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - lg);
        return 1.0 - p;
    }
    // modified Lentz for the continued fraction of Q
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - lg) * h;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace detail

namespace {

TestResult insufficient(const char* name, std::size_t min_bits) {
    TestResult r;
    r.name = name;
    r.insufficient_data = true;
    r.min_bits = min_bits;
    return r;
}

TestResult result(const char* name, double statistic, double p) {
    TestResult r;
    r.name = name;
    r.statistic = statistic;
    r.p_value = p;
    r.pass = p >= kAlpha;
    return r;
}

}  // namespace

TestResult monobit_from_counts(std::uint64_t ones, std::uint64_t n) {
    if (n < 100) return insufficient("monobit", 100);
    const double s = 2.0 * static_cast<double>(ones) - static_cast<double>(n);
    const double s_obs = std::fabs(s) / std::sqrt(static_cast<double>(n));
    return result("monobit", s_obs, std::erfc(s_obs / std::sqrt(2.0)));
}

TestResult monobit(const BitSequence& s) {
    return monobit_from_counts(s.count_ones(), s.size());
}

TestResult block_frequency(const BitSequence& s, std::size_t block_len) {
    const std::size_t min_bits = 100 * block_len;
    if (s.size() < min_bits) return insufficient("block_frequency", min_bits);
    const std::size_t blocks = s.size() / block_len;
    double chi2 = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        std::uint64_t ones = 0;
        for (std::size_t i = 0; i < block_len; ++i) ones += s[b * block_len + i];
        const double pi = static_cast<double>(ones) / static_cast<double>(block_len);
        chi2 += (pi - 0.5) * (pi - 0.5);
    }
    chi2 *= 4.0 * static_cast<double>(block_len);
    const double p = detail::igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0);
    return result("block_frequency", chi2, p);
}

TestResult runs(const BitSequence& s) {
    const std::size_t n = s.size();
    if (n < 100) return insufficient("runs", 100);
    const double pi = static_cast<double>(s.count_ones()) / static_cast<double>(n);
    const double tau = 2.0 / std::sqrt(static_cast<double>(n));
    if (std::fabs(pi - 0.5) >= tau) {
        // frequency pre-test failed; runs statistic is meaningless
        return result("runs", 0.0, 0.0);
    }
    std::uint64_t v = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) v += s[i] != s[i + 1];
    const double nn = static_cast<double>(n);
    const double num = std::fabs(static_cast<double>(v) - 2.0 * nn * pi * (1.0 - pi));
    const double den = 2.0 * std::sqrt(2.0 * nn) * pi * (1.0 - pi);
    return result("runs", static_cast<double>(v), std::erfc(num / den));
}

TestResult longest_run_of_ones(const BitSequence& s) {
    const std::size_t n = s.size();
    if (n < 128) return insufficient("longest_run_of_ones", 128);

    std::size_t m;
    int k;
    int lo;
    const double* pi;
    // class probabilities from SP 800-22 for the three block sizes
    static const double kPi8[4] = {0.2148, 0.3672, 0.2305, 0.1875};
    static const double kPi128[6] = {0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124};
    static const double kPi10k[7] = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
    if (n < 6272) {
        m = 8; k = 3; lo = 1; pi = kPi8;
    } else if (n < 750000) {
        m = 128; k = 5; lo = 4; pi = kPi128;
    } else {
        m = 10000; k = 6; lo = 10; pi = kPi10k;
    }

    const std::size_t blocks = n / m;
    std::vector<std::uint64_t> v(static_cast<std::size_t>(k) + 1, 0);
    for (std::size_t b = 0; b < blocks; ++b) {
        int longest = 0;
        int run = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (s[b * m + i]) {
                if (++run > longest) longest = run;
            } else {
                run = 0;
            }
        }
        int cls = longest - lo;
        if (cls < 0) cls = 0;
        if (cls > k) cls = k;
        ++v[static_cast<std::size_t>(cls)];
    }

    double chi2 = 0.0;
    const double nb = static_cast<double>(blocks);
    for (int i = 0; i <= k; ++i) {
        const double expect = nb * pi[i];
        const double diff = static_cast<double>(v[static_cast<std::size_t>(i)]) - expect;
        chi2 += diff * diff / expect;
    }
    const double p = detail::igamc(static_cast<double>(k) / 2.0, chi2 / 2.0);
    return result("longest_run_of_ones", chi2, p);
}

TestResult cumulative_sums(const BitSequence& s, bool forward) {
    const std::size_t n = s.size();
    const char* name = forward ? "cumulative_sums_fwd" : "cumulative_sums_bwd";
    if (n < 100) return insufficient(name, 100);

    std::int64_t sum = 0;
    std::int64_t z = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t idx = forward ? i : n - 1 - i;
        sum += s[idx] ? 1 : -1;
        const std::int64_t a = sum < 0 ? -sum : sum;
        if (a > z) z = a;
    }
    if (z == 0) return result(name, 0.0, 0.0);

    const double nn = static_cast<double>(n);
    const double zz = static_cast<double>(z);
    const double sq = std::sqrt(nn);
    double p = 1.0;
    {
        const int k_lo = static_cast<int>(std::floor((-nn / zz + 1.0) / 4.0));
        const int k_hi = static_cast<int>(std::floor((nn / zz - 1.0) / 4.0));
        for (int k = k_lo; k <= k_hi; ++k) {
            p -= detail::normal_cdf((4.0 * k + 1.0) * zz / sq) -
                 detail::normal_cdf((4.0 * k - 1.0) * zz / sq);
        }
    }
    {
        const int k_lo = static_cast<int>(std::floor((-nn / zz - 3.0) / 4.0));
        const int k_hi = static_cast<int>(std::floor((nn / zz - 1.0) / 4.0));
        for (int k = k_lo; k <= k_hi; ++k) {
            p += detail::normal_cdf((4.0 * k + 3.0) * zz / sq) -
                 detail::normal_cdf((4.0 * k + 1.0) * zz / sq);
        }
    }
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return result(name, zz, p);
}

TestResult approximate_entropy(const BitSequence& s, unsigned m) {
    const std::size_t n = s.size();
    // needs m < log2(n) - 5 for the chi-square approximation to hold
    const std::size_t min_bits = std::size_t{1} << (m + 6);
    if (n < min_bits) return insufficient("approximate_entropy", min_bits);

    auto phi = [&](unsigned blk) -> double {
        const std::size_t patterns = std::size_t{1} << blk;
        std::vector<std::uint32_t> count(patterns, 0);
        const std::size_t mask = patterns - 1;
        std::size_t window = 0;
        for (std::size_t i = 0; i < blk; ++i) {
            window = (window << 1) | static_cast<std::size_t>(s[i]);
        }
        ++count[window];
        for (std::size_t i = 1; i < n; ++i) {
            const std::size_t next = (i + blk - 1) % n;  // wrap-around
            window = ((window << 1) | static_cast<std::size_t>(s[next])) & mask;
            ++count[window];
        }
        double acc = 0.0;
        const double nn = static_cast<double>(n);
        for (std::uint32_t c : count) {
            if (c == 0) continue;
            const double f = static_cast<double>(c) / nn;
            acc += f * std::log(f);
        }
        return acc;
    };

    const double apen = phi(m) - phi(m + 1);
    const double chi2 = 2.0 * static_cast<double>(n) * (std::log(2.0) - apen);
    const double p = detail::igamc(std::pow(2.0, static_cast<double>(m) - 1.0), chi2 / 2.0);
    return result("approximate_entropy", chi2, p);
}

std::vector<TestResult> run_suite(const BitSequence& s) {
    std::vector<TestResult> out;
    out.push_back(monobit(s));
    out.push_back(block_frequency(s));
    out.push_back(runs(s));
    out.push_back(longest_run_of_ones(s));
    out.push_back(cumulative_sums(s, true));
    out.push_back(cumulative_sums(s, false));
    out.push_back(approximate_entropy(s));
    return out;
}

}  // namespace physec
