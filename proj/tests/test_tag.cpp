#include "doctest.h"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "srsbs/error.hpp"
#include "srsbs/tag.hpp"

using namespace srsbs;

namespace {

// Bits stepped by hand from s[n+5] = s[n+2] ^ s[n], s[0..4] = 1.
const char* kPolyA = "1111100011011101010000100101100";
// s[n+5] = s[n+4] ^ s[n+3] ^ s[n+2] ^ s[n], s[0..4] = 1.
const char* kPolyB = "1111101110001010110100001100100";

Code from_bits(const char* bits) {
    Code c;
    for (const char* p = bits; *p; ++p) c.push_back(*p == '1' ? -1 : +1);
    return c;
}

}  // namespace

TEST_CASE("m-sequence: frozen bit patterns") {
    CHECK(generate_m_sequence(preferred_poly_a()) == from_bits(kPolyA));
    CHECK(generate_m_sequence(preferred_poly_b()) == from_bits(kPolyB));
}

TEST_CASE("m-sequence: balance and two-valued autocorrelation for every seed") {
    for (const auto& poly : {preferred_poly_a(), preferred_poly_b()}) {
        for (std::uint32_t seed = 1; seed < 32; ++seed) {
            LfsrSpec spec = poly;
            spec.seed = seed;
            const Code m = generate_m_sequence(spec);
            const auto plus = std::count(m.begin(), m.end(), +1);
            CHECK(((plus == 15) || (plus == 16)));
            CHECK(cyclic_correlation(m, m, 0) == 31);
            for (std::size_t lag = 1; lag < 31; ++lag) CHECK(cyclic_correlation(m, m, lag) == -1);
        }
    }
}

TEST_CASE("lfsr validation") {
    CHECK_THROWS_AS(generate_m_sequence({{5, 1, 0}, 1}), ConfigError);  // constant term listed
    CHECK_THROWS_AS(generate_m_sequence({{5, 2}, 0}), ConfigError);
    CHECK_THROWS_AS(generate_m_sequence({{4, 1}, 1}), ConfigError);
    // x^5 + x^4 + x + 1 = (x+1)(x^4+1) is not primitive
    CHECK_THROWS_AS(generate_m_sequence({{5, 4, 1}, 1}), ConfigError);
}

TEST_CASE("gold set: size, ordering, distinctness") {
    const auto& set = GoldCodeSet::standard();
    REQUIRE(set.size() == 33);
    CHECK(set.code(0) == generate_m_sequence(preferred_poly_a()));
    CHECK(set.code(1) == generate_m_sequence(preferred_poly_b()));
    const Code& ma = set.code(0);
    const Code& mb = set.code(1);
    for (std::size_t tau = 0; tau < 31; ++tau)
        for (std::size_t n = 0; n < 31; ++n) CHECK(set.code(2 + tau)[n] == ma[n] * mb[(n + tau) % 31]);
    std::set<Code> unique(set.codes().begin(), set.codes().end());
    CHECK(unique.size() == 33);
    CHECK_THROWS_AS(set.code(33), ConfigError);
}

TEST_CASE("gold set: three-valued cross-correlation, brute force") {
    const auto& set = GoldCodeSet::standard();
    for (std::size_t i = 0; i < set.size(); ++i) {
        CHECK(cyclic_correlation(set.code(i), set.code(i), 0) == 31);
        for (std::size_t j = 0; j < set.size(); ++j) {
            if (i == j) continue;
            for (std::size_t lag = 0; lag < 31; ++lag) {
                const int c = cyclic_correlation(set.code(i), set.code(j), lag);
                CHECK((c == -9 || c == -1 || c == 7));
            }
        }
    }
}

TEST_CASE("gold set rejects a non-preferred pair") {
    // Both primitive, but x^5+x^2+1 with its own reciprocal x^5+x^3+1 is not a preferred pair.
    CHECK_THROWS_AS(GoldCodeSet(preferred_poly_a(), LfsrSpec{{5, 3}, 0b11111}), ConfigError);
}

TEST_CASE("repetition encoding") {
    const Code c{+1, -1};
    CHECK(encode_repetition(c, 3).samples == Code{+1, +1, +1, -1, -1, -1});
    CHECK(encode_repetition(c, 1).samples == c);
    CHECK_THROWS_AS(encode_repetition(c, 0), std::invalid_argument);

    const auto& set = GoldCodeSet::standard();
    const TagMessage msg = encode_repetition(set.code(7), 7, 7);
    REQUIRE(msg.samples.size() == 217);
    for (std::size_t n = 0; n < 31; ++n)
        for (std::size_t q = 0; q < 7; ++q) CHECK(msg.samples[q + n * 7] == set.code(7)[n]);
    CHECK(decode_repetition(msg.samples, 7) == set.code(7));

    OokSchedule schedule;
    CHECK(schedule.message_duration() == std::chrono::milliseconds(2170));
}

TEST_CASE("repetition round trip for every code and several v") {
    const auto& set = GoldCodeSet::standard();
    for (std::size_t v : {1u, 2u, 5u, 7u, 10u})
        for (std::size_t id = 0; id < set.size(); ++id)
            CHECK(decode_repetition(encode_repetition(set.code(id), v).samples, v) == set.code(id));
}

TEST_CASE("ook state is periodic with the message") {
    const auto& set = GoldCodeSet::standard();
    const TagMessage msg = encode_repetition(set.code(5), 7, 5);
    const Code probe{+1, -1};
    const TagMessage small = encode_repetition(probe, 1);
    CHECK(ook_state(small, 0) == OokState::backscatter);
    CHECK(ook_state(small, 1) == OokState::transparent);

    std::size_t transitions = 0;
    for (std::uint64_t k = 0; k < 2 * 217; ++k) {
        const auto s = ook_state(msg, k);
        CHECK(s == ook_state(msg, k % 217));
        CHECK((s == OokState::backscatter) == (msg.samples[k % 217] == +1));
        if (k > 0 && k < 217 && s != ook_state(msg, k - 1)) ++transitions;
    }
    std::size_t code_transitions = 0;
    for (std::size_t n = 1; n < 31; ++n) code_transitions += set.code(5)[n] != set.code(5)[n - 1];
    CHECK(transitions == code_transitions);
}
