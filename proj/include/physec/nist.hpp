#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Statistical randomness validation: the SP 800-22 tests most sensitive
// to the short-cycle failure mode of digitized chaotic maps. Pass
// threshold is p >= 0.01 throughout.

namespace physec {

/// Bit string packed LSB-first: bit i lives in byte i/8, bit position i%8.
class BitSequence {
public:
    BitSequence() = default;
    explicit BitSequence(std::size_t nbits) : bytes_((nbits + 7) / 8, 0), n_(nbits) {}
    static BitSequence from_packed(std::vector<std::uint8_t> bytes, std::size_t nbits);

    void push_back(int bit);
    void append_word(std::uint64_t word, unsigned nbits);

    int operator[](std::size_t i) const {
        return (bytes_[i >> 3] >> (i & 7)) & 1;
    }
    std::size_t size() const { return n_; }
    std::uint64_t count_ones() const;
    const std::vector<std::uint8_t>& packed() const { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t n_ = 0;
};

struct TestResult {
    std::string name;
    double p_value = 0.0;
    double statistic = 0.0;
    bool pass = false;
    bool insufficient_data = false;
    std::size_t min_bits = 0;  // minimum length when insufficient_data
};

inline constexpr double kAlpha = 0.01;

TestResult monobit(const BitSequence& s);
TestResult monobit_from_counts(std::uint64_t ones, std::uint64_t n);
TestResult block_frequency(const BitSequence& s, std::size_t block_len = 128);
TestResult runs(const BitSequence& s);
TestResult longest_run_of_ones(const BitSequence& s);
TestResult cumulative_sums(const BitSequence& s, bool forward);
TestResult approximate_entropy(const BitSequence& s, unsigned m = 10);

/// All implemented tests in a fixed order; tests whose length minimum is
/// unmet come back flagged insufficient instead of failing the run.
std::vector<TestResult> run_suite(const BitSequence& s);

namespace detail {
/// Regularized upper incomplete gamma Q(a, x).
double igamc(double a, double x);
double normal_cdf(double x);
}  // namespace detail

}  // namespace physec
