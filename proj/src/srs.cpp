#include "srsbs/srs.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

#include "srsbs/error.hpp"

namespace srsbs {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void ZcConfig::validate() const {
    if (!is_prime(base_length))
        throw ConfigError("zc: base_length " + std::to_string(base_length) + " is not prime");
    if (root < 1 || root >= base_length)
        throw ConfigError("zc: root " + std::to_string(root) + " outside [1, " +
                          std::to_string(base_length) + ")");
    if (target_length < base_length)
        throw ConfigError("zc: target_length shorter than base_length");
}

std::vector<cplx> generate_zc_base(const ZcConfig& config) {
    config.validate();
    const std::uint64_t n_zc = config.base_length;
    std::vector<cplx> seq(n_zc);
    for (std::uint64_t m = 0; m < n_zc; ++m) {
        // m(m+1) is even, so the phase reduces to an integer index modulo Nzc.
        const std::uint64_t k = (config.root * ((m * (m + 1) / 2) % n_zc)) % n_zc;
        const double phase = -2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(n_zc);
        seq[m] = std::polar(1.0, phase);
    }
    return seq;
}

std::vector<cplx> extend_to_srs(std::span<const cplx> base, std::size_t target_length) {
    if (base.empty()) throw std::invalid_argument("extend_to_srs: empty base sequence");
    if (target_length < base.size())
        throw std::invalid_argument("extend_to_srs: target length " +
                                    std::to_string(target_length) + " < base length " +
                                    std::to_string(base.size()));
    std::vector<cplx> out(target_length);
    for (std::size_t n = 0; n < target_length; ++n) out[n] = base[n % base.size()];
    return out;
}

SrsSymbol make_srs_symbol(const ZcConfig& config, std::uint64_t period_index) {
    const auto base = generate_zc_base(config);
    return SrsSymbol{extend_to_srs(base, config.target_length), period_index};
}

GridMapping GridMapping::lte_default() {
    GridMapping g;
    const unsigned first = g.first_prb * static_cast<unsigned>(kSubcarriersPerPrb);
    g.occupied_subcarriers.reserve(kSrsLength);
    for (unsigned i = 0; i < kSrsLength; ++i) g.occupied_subcarriers.push_back(first + 2 * i);
    return g;
}

void GridMapping::validate() const {
    if (last_prb < first_prb) throw ConfigError("grid: last_prb < first_prb");
    const auto& sc = occupied_subcarriers;
    const std::size_t span = (last_prb - first_prb + 1) * kSubcarriersPerPrb;
    if (sc.size() * 2 != span)
        throw ConfigError("grid: comb does not cover " + std::to_string(last_prb - first_prb + 1) +
                          " PRBs");
    for (std::size_t i = 1; i < sc.size(); ++i)
        if (sc[i] != sc[i - 1] + 2) throw ConfigError("grid: subcarrier comb stride is not 2");
    const unsigned lo = first_prb * static_cast<unsigned>(kSubcarriersPerPrb);
    const unsigned hi = (last_prb + 1) * static_cast<unsigned>(kSubcarriersPerPrb);
    if (sc.front() < lo || sc.back() >= hi) throw ConfigError("grid: comb leaves the PRB range");
}

GridRow map_to_grid(const SrsSymbol& srs, const GridMapping& mapping) {
    mapping.validate();
    if (srs.values.size() != mapping.occupied_subcarriers.size())
        throw std::invalid_argument("map_to_grid: symbol length does not match the comb");
    GridRow row;
    for (std::size_t i = 0; i < srs.values.size(); ++i)
        row.emplace(mapping.occupied_subcarriers[i], srs.values[i]);
    return row;
}

std::vector<cplx> extract_from_grid(const GridRow& row, const GridMapping& mapping) {
    std::vector<cplx> out;
    out.reserve(mapping.occupied_subcarriers.size());
    for (unsigned sc : mapping.occupied_subcarriers) {
        auto it = row.find(sc);
        out.push_back(it == row.end() ? cplx{} : it->second);
    }
    return out;
}

}  // namespace srsbs
