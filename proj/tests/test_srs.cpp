#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "srsbs/error.hpp"
#include "srsbs/srs.hpp"

using namespace srsbs;

TEST_CASE("zc base: first element and unit modulus") {
    const auto base = generate_zc_base({1, 139, 144});
    REQUIRE(base.size() == 139);
    CHECK(base[0].real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(base[0].imag()) < 1e-15);
    for (unsigned root : {1u, 25u, 138u})
        for (const auto& v : generate_zc_base({root, 139, 144}))
            CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
}

TEST_CASE("zc base matches the direct phase formula") {
    const auto base = generate_zc_base({25, 139, 144});
    for (unsigned m = 0; m < 139; ++m) CHECK(std::abs(base[m] - oracle::zc_element(25, m, 139)) < 1e-9);
}

TEST_CASE("zc base: ideal cyclic autocorrelation, brute force over all lags") {
    for (unsigned root : {1u, 25u, 70u}) {
        const auto base = generate_zc_base({root, 139, 144});
        CHECK(oracle::cyclic_autocorr(base, 0) == doctest::Approx(1.0));
        double worst = 0.0;
        for (std::size_t lag = 1; lag < base.size(); ++lag)
            worst = std::max(worst, oracle::cyclic_autocorr(base, lag));
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("zc config validation") {
    CHECK_THROWS_AS(generate_zc_base({1, 140, 144}), ConfigError);
    CHECK_THROWS_AS(generate_zc_base({0, 139, 144}), ConfigError);
    CHECK_THROWS_AS(generate_zc_base({139, 139, 144}), ConfigError);
    CHECK_THROWS_AS(generate_zc_base({1, 139, 100}), ConfigError);
}

TEST_CASE("cyclic extension") {
    const auto base = generate_zc_base({});
    const auto ext = extend_to_srs(base, 144);
    REQUIRE(ext.size() == 144);
    for (std::size_t n = 0; n < 5; ++n) CHECK(ext[139 + n] == base[n]);
    for (const auto& v : ext) CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);

    const std::vector<cplx> four{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    CHECK(extend_to_srs(four, 4) == four);
    CHECK_THROWS_AS(extend_to_srs(four, 3), std::invalid_argument);
}

TEST_CASE("grid mapping: comb, PRB span and round trip") {
    const auto mapping = GridMapping::lte_default();
    mapping.validate();
    const auto srs = make_srs_symbol({});
    const auto row = map_to_grid(srs, mapping);
    REQUIRE(row.size() == 144);

    unsigned prev = 0;
    bool first = true;
    for (const auto& [sc, _] : row) {
        if (!first) CHECK(sc == prev + 2);
        prev = sc;
        first = false;
    }
    CHECK(row.begin()->first / kSubcarriersPerPrb == 13);
    CHECK(row.rbegin()->first / kSubcarriersPerPrb == 36);
    // 13 PRBs free on each side of the 50-PRB carrier
    CHECK(mapping.first_prb == 50 - 1 - mapping.last_prb);

    CHECK(extract_from_grid(row, mapping) == srs.values);
}

TEST_CASE("grid mapping rejects a broken comb") {
    auto mapping = GridMapping::lte_default();
    mapping.occupied_subcarriers[10] += 1;
    CHECK_THROWS_AS(mapping.validate(), ConfigError);
    mapping = GridMapping::lte_default();
    mapping.occupied_subcarriers.pop_back();
    CHECK_THROWS_AS(mapping.validate(), ConfigError);
}
