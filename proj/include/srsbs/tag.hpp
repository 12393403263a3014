#pragma once

// TAG identity: m-sequences and the Gold family built from a preferred pair
// of degree-5 polynomials, repetition encoding and the per-period OOK state.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace srsbs {

inline constexpr unsigned kLfsrDegree = 5;
inline constexpr std::size_t kCodeLength = 31;  // 2^5 - 1
inline constexpr std::size_t kGoldSetSize = kCodeLength + 2;
inline constexpr std::size_t kDefaultRepetitions = 7;

/// A ±1 chip sequence.
using Code = std::vector<int>;

/// Fibonacci LFSR description. `taps` lists the nonzero exponents of the
/// feedback polynomial except the constant term, e.g. {5, 2} for x^5+x^2+1.
/// The register is seeded MSB-first and emits its leftmost bit.
struct LfsrSpec {
    std::vector<unsigned> taps;
    std::uint32_t seed = 0b11111;

    /// Throws ConfigError unless degree is 5, seed is a nonzero 5-bit value
    /// and the polynomial yields period 31.
    void validate() const;
};

/// x^5 + x^2 + 1
LfsrSpec preferred_poly_a();
/// x^5 + x^4 + x^3 + x^2 + 1
LfsrSpec preferred_poly_b();

/// One period of the m-sequence, bit 0 -> +1, bit 1 -> -1.
Code generate_m_sequence(const LfsrSpec& spec);

/// sum_n a[n] * b[(n + lag) mod N]
int cyclic_correlation(std::span<const int> a, std::span<const int> b, std::size_t lag);

/// Immutable after construction. Ordering: [m_a, m_b, m_a*shift(m_b, tau) for tau = 0..30].
class GoldCodeSet {
public:
    /// Throws ConfigError when either spec is not primitive or the pair is
    /// not preferred (cross-correlation outside {-9, -1, 7}).
    GoldCodeSet(const LfsrSpec& poly_a, const LfsrSpec& poly_b);

    /// Set built from the two default preferred polynomials.
    static const GoldCodeSet& standard();

    std::size_t size() const { return codes_.size(); }
    std::size_t code_length() const { return codes_.front().size(); }
    const Code& code(std::size_t code_id) const;
    const std::vector<Code>& codes() const { return codes_; }

private:
    std::vector<Code> codes_;
};

inline GoldCodeSet generate_gold_set(const LfsrSpec& poly_a, const LfsrSpec& poly_b) {
    return GoldCodeSet(poly_a, poly_b);
}

struct TagMessage {
    Code samples;
    std::size_t code_id = 0;
    std::size_t repetitions = kDefaultRepetitions;  // v
    std::size_t code_length = kCodeLength;          // N
};

/// samples[q + n*v] = code[n]. Throws std::invalid_argument when v < 1.
TagMessage encode_repetition(std::span<const int> code, std::size_t v, std::size_t code_id = 0);

/// Majority vote over each run of v samples.
Code decode_repetition(std::span<const int> samples, std::size_t v);

enum class OokState { transparent, backscatter };

/// +1 -> backscatter, -1 -> transparent; the message repeats forever.
OokState ook_state(const TagMessage& message, std::uint64_t period_index);

struct OokSchedule {
    std::chrono::milliseconds bit_duration{10};  // T_s, one SRS period
    std::size_t message_length = kDefaultRepetitions * kCodeLength;
    bool repeat = true;

    std::chrono::milliseconds message_duration() const {
        return bit_duration * static_cast<std::int64_t>(message_length);
    }
};

}  // namespace srsbs
