#pragma once

// Sounding reference signal: Zadoff-Chu base sequence, cyclic extension to
// the occupied bandwidth and the single-symbol grid model.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace srsbs {

using cplx = std::complex<double>;

inline constexpr std::size_t kSrsLength = 144;
inline constexpr std::size_t kSubcarriersPerPrb = 12;

struct ZcConfig {
    unsigned root = 25;
    unsigned base_length = 139;
    unsigned target_length = static_cast<unsigned>(kSrsLength);

    /// Throws ConfigError when base_length is not prime, root is outside
    /// [1, base_length) or target_length < base_length.
    void validate() const;
};

struct SrsSymbol {
    std::vector<cplx> values;
    std::uint64_t period_index = 0;
};

/// x_u(m) = exp(-i*pi*u*m*(m+1)/Nzc), m = 0..Nzc-1.
std::vector<cplx> generate_zc_base(const ZcConfig& config);

/// output[n] = base[n mod len(base)]. Throws std::invalid_argument when
/// target_length is shorter than the base.
std::vector<cplx> extend_to_srs(std::span<const cplx> base, std::size_t target_length);

/// Base sequence extended to config.target_length.
SrsSymbol make_srs_symbol(const ZcConfig& config, std::uint64_t period_index = 0);

/// SRS placement inside one uplink sub-frame of a 50-PRB carrier.
struct GridMapping {
    unsigned srs_subframe = 8;         // 1-based, 8th sub-frame
    unsigned srs_symbol_position = 13; // last OFDM symbol, normal CP
    unsigned first_prb = 13;
    unsigned last_prb = 36;
    std::vector<unsigned> occupied_subcarriers;

    /// Comb of 144 subcarriers with stride 2 spanning PRB 13..36 of a
    /// 50-PRB (600 subcarrier) carrier.
    static GridMapping lte_default();

    /// Throws ConfigError if the comb is not strictly increasing with stride 2
    /// or does not span exactly (last_prb - first_prb + 1) PRBs.
    void validate() const;
};

using GridRow = std::map<unsigned, cplx>;

GridRow map_to_grid(const SrsSymbol& srs, const GridMapping& mapping);

/// Reads the mapped subcarriers back in comb order.
std::vector<cplx> extract_from_grid(const GridRow& row, const GridMapping& mapping);

bool is_prime(unsigned n);

}  // namespace srsbs
