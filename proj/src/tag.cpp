#include "srsbs/tag.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "srsbs/error.hpp"

namespace srsbs {
namespace {

using Register = std::array<int, kLfsrDegree>;

Register seed_register(std::uint32_t seed) {
    Register r{};
    for (unsigned i = 0; i < kLfsrDegree; ++i) r[i] = (seed >> (kLfsrDegree - 1 - i)) & 1u;
    return r;
}

// Shifts once and returns the emitted (leftmost) bit.
int clock(Register& r, const std::vector<unsigned>& taps) {
    int feedback = r[0];  // constant term of the polynomial
    for (unsigned t : taps)
        if (t < kLfsrDegree) feedback ^= r[t];
    const int out = r[0];
    std::rotate(r.begin(), r.begin() + 1, r.end());
    r[kLfsrDegree - 1] = feedback;
    return out;
}

std::size_t lfsr_period(const LfsrSpec& spec) {
    const Register start = seed_register(spec.seed);
    Register r = start;
    for (std::size_t n = 1; n <= (1u << kLfsrDegree); ++n) {
        clock(r, spec.taps);
        if (r == start) return n;
    }
    return 0;
}

bool three_valued(std::span<const int> a, std::span<const int> b) {
    for (std::size_t lag = 0; lag < a.size(); ++lag) {
        const int c = cyclic_correlation(a, b, lag);
        if (c != -9 && c != -1 && c != 7) return false;
    }
    return true;
}

}  // namespace

void LfsrSpec::validate() const {
    if (taps.empty() || *std::max_element(taps.begin(), taps.end()) != kLfsrDegree)
        throw ConfigError("lfsr: feedback polynomial must have degree 5");
    if (std::any_of(taps.begin(), taps.end(), [](unsigned t) { return t == 0; }))
        throw ConfigError("lfsr: list exponents without the constant term");
    if (seed == 0 || seed >= (1u << kLfsrDegree))
        throw ConfigError("lfsr: seed must be a nonzero 5-bit value");
    if (lfsr_period(*this) != kCodeLength)
        throw ConfigError("lfsr: polynomial is not primitive (period != 31)");
}

LfsrSpec preferred_poly_a() { return LfsrSpec{{5, 2}, 0b11111}; }
LfsrSpec preferred_poly_b() { return LfsrSpec{{5, 4, 3, 2}, 0b11111}; }

Code generate_m_sequence(const LfsrSpec& spec) {
    spec.validate();
    Register r = seed_register(spec.seed);
    Code out(kCodeLength);
    for (auto& chip : out) chip = clock(r, spec.taps) ? -1 : +1;
    return out;
}

int cyclic_correlation(std::span<const int> a, std::span<const int> b, std::size_t lag) {
    if (a.size() != b.size()) throw std::invalid_argument("cyclic_correlation: length mismatch");
    const std::size_t n = a.size();
    int acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[(i + lag) % n];
    return acc;
}

GoldCodeSet::GoldCodeSet(const LfsrSpec& poly_a, const LfsrSpec& poly_b) {
    const Code ma = generate_m_sequence(poly_a);
    const Code mb = generate_m_sequence(poly_b);
    if (!three_valued(ma, mb))
        throw ConfigError("gold: polynomials are not a preferred pair");
    codes_.reserve(kGoldSetSize);
    codes_.push_back(ma);
    codes_.push_back(mb);
    for (std::size_t tau = 0; tau < kCodeLength; ++tau) {
        Code g(kCodeLength);
        for (std::size_t n = 0; n < kCodeLength; ++n) g[n] = ma[n] * mb[(n + tau) % kCodeLength];
        codes_.push_back(std::move(g));
    }
}

const GoldCodeSet& GoldCodeSet::standard() {
    static const GoldCodeSet set(preferred_poly_a(), preferred_poly_b());
    return set;
}

const Code& GoldCodeSet::code(std::size_t code_id) const {
    if (code_id >= codes_.size())
        throw ConfigError("gold: code_id " + std::to_string(code_id) + " out of range");
    return codes_[code_id];
}

TagMessage encode_repetition(std::span<const int> code, std::size_t v, std::size_t code_id) {
    if (v < 1) throw std::invalid_argument("encode_repetition: v must be >= 1");
    TagMessage msg;
    msg.code_id = code_id;
    msg.repetitions = v;
    msg.code_length = code.size();
    msg.samples.reserve(v * code.size());
    for (int chip : code) msg.samples.insert(msg.samples.end(), v, chip);
    return msg;
}

Code decode_repetition(std::span<const int> samples, std::size_t v) {
    if (v < 1 || samples.size() % v != 0)
        throw std::invalid_argument("decode_repetition: length is not a multiple of v");
    Code out;
    out.reserve(samples.size() / v);
    for (std::size_t i = 0; i < samples.size(); i += v) {
        int sum = 0;
        for (std::size_t q = 0; q < v; ++q) sum += samples[i + q];
        out.push_back(sum >= 0 ? +1 : -1);
    }
    return out;
}

OokState ook_state(const TagMessage& message, std::uint64_t period_index) {
    const int chip = message.samples[period_index % message.samples.size()];
    return chip > 0 ? OokState::backscatter : OokState::transparent;
}

}  // namespace srsbs
