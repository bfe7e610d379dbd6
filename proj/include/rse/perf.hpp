#pragma once

// Analytical cycle-count and throughput model of the hardware decoder built
// around P single-cycle multiplier cores. Worst-case decode of e erasures:
//
//   erasure addressing   n_x      = n + 2e          (serial, not split by P)
//   syndromes            n_s      = n(n-k)/P
//   locator polynomial   n_lambda = e^2/2P
//   key equation         n_omega  = e(n-k)/2P
//   Forney num+denom     n_forney = (e^2 + (n-k)e)/P
//   inversions           n_inv    = 2m·e/P
//
// All divisions round up (cycles are integral). Throughput divides k·m data
// bits by the total cycle count at the configured clock.

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rse {

struct HardwareConfig {
    std::uint32_t parallel_multipliers = 1;  // P
    std::uint64_t clock_hz = 100'000'000;
};

struct CyclePlan {
    std::uint64_t n_x = 0;
    std::uint64_t n_s = 0;
    std::uint64_t n_lambda = 0;
    std::uint64_t n_omega = 0;
    std::uint64_t n_forney = 0;
    std::uint64_t n_inv = 0;

    std::uint64_t total() const { return n_x + n_s + n_lambda + n_omega + n_forney + n_inv; }

    bool operator==(const CyclePlan&) const = default;
};

struct ThroughputPoint {
    std::uint64_t data_bits = 0;  // k·m
    std::uint64_t cycles = 0;
    double throughput_bps = 0.0;
};

namespace detail {
inline std::uint64_t ceil_div(std::uint64_t num, std::uint64_t den) {
    return num / den + (num % den != 0);
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 wide = static_cast<unsigned __int128>(a) * b;
    if (wide >> 64)
        throw std::invalid_argument("cycle model parameter overflow");
    return static_cast<std::uint64_t>(wide);
}
}  // namespace detail

inline CyclePlan cycle_counts(std::uint64_t n, std::uint64_t k, std::uint64_t e, int m,
                              const HardwareConfig& hw) {
    if (m < 2 || m > 32)
        throw std::invalid_argument("symbol width out of range (need 2 <= m <= 32)");
    if (k == 0 || k > n)
        throw std::invalid_argument("need 0 < k <= n");
    if (e > n - k)
        throw std::invalid_argument("erasure count exceeds n - k");
    if (hw.parallel_multipliers == 0 || hw.clock_hz == 0)
        throw std::invalid_argument("hardware config requires P >= 1 and a nonzero clock");

    using detail::ceil_div;
    using detail::checked_mul;
    const std::uint64_t p = hw.parallel_multipliers;
    const unsigned __int128 addressing = static_cast<unsigned __int128>(n) + 2 * static_cast<unsigned __int128>(e);
    CyclePlan plan;
    plan.n_s = ceil_div(checked_mul(n, n - k), p);
    plan.n_lambda = ceil_div(checked_mul(e, e), 2 * p);
    plan.n_omega = ceil_div(checked_mul(e, n - k), 2 * p);
    const unsigned __int128 forney_work = static_cast<unsigned __int128>(checked_mul(e, e)) +
                                          checked_mul(n - k, e);
    if (forney_work >> 64)
        throw std::invalid_argument("cycle model parameter overflow");
    plan.n_forney = ceil_div(static_cast<std::uint64_t>(forney_work), p);
    plan.n_inv = ceil_div(2 * static_cast<std::uint64_t>(m) * e, p);
    const unsigned __int128 total = addressing + plan.n_s + plan.n_lambda + plan.n_omega +
                                    plan.n_forney + plan.n_inv;
    if (total >> 64)
        throw std::invalid_argument("cycle model parameter overflow");
    plan.n_x = static_cast<std::uint64_t>(addressing);
    return plan;
}

inline ThroughputPoint throughput(std::uint64_t n, std::uint64_t k, std::uint64_t e, int m,
                                  const HardwareConfig& hw) {
    const CyclePlan plan = cycle_counts(n, k, e, m, hw);
    ThroughputPoint point;
    point.data_bits = k * static_cast<std::uint64_t>(m);
    point.cycles = plan.total();
    point.throughput_bps = static_cast<double>(point.data_bits) *
                           static_cast<double>(hw.clock_hz) /
                           static_cast<double>(point.cycles);
    return point;
}

// One sweep grid point: k = ceil(bits/m), n = k + e, decoded at the full
// erasure budget. Infeasible combinations keep their parameters but carry
// no plan (warning row in the CSV).
struct SweepRow {
    std::uint64_t requested_bits = 0;
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t max_erasures = 0;
    int m = 0;
    HardwareConfig hw;
    bool feasible = false;
    CyclePlan plan;
    ThroughputPoint point;
};

inline std::vector<SweepRow> sweep_curves(std::span<const std::uint64_t> data_bits,
                                          std::span<const std::uint64_t> max_erasures, int m,
                                          const HardwareConfig& hw) {
    if (m < 2 || m > 32)
        throw std::invalid_argument("symbol width out of range (need 2 <= m <= 32)");
    std::vector<SweepRow> rows;
    rows.reserve(data_bits.size() * max_erasures.size());
    const std::uint64_t max_n = (std::uint64_t{1} << m) - 1;
    for (const std::uint64_t bits : data_bits) {
        for (const std::uint64_t e : max_erasures) {
            SweepRow row;
            row.requested_bits = bits;
            row.k = detail::ceil_div(bits, static_cast<std::uint64_t>(m));
            const unsigned __int128 wide_n = static_cast<unsigned __int128>(row.k) + e;
            row.n = wide_n > ~std::uint64_t{0} ? ~std::uint64_t{0}
                                               : static_cast<std::uint64_t>(wide_n);
            row.max_erasures = e;
            row.m = m;
            row.hw = hw;
            row.feasible = row.k >= 1 && wide_n <= max_n;
            if (row.feasible) {
                row.plan = cycle_counts(row.n, row.k, e, m, hw);
                row.point = throughput(row.n, row.k, e, m, hw);
            }
            rows.push_back(row);
        }
    }
    return rows;
}

/// CSV emission, header mandatory. Infeasible rows keep the grid columns and
/// leave total_cycles/throughput_mbps empty.
inline void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "data_bits,n,k,max_erasures,m,P,clock_hz,total_cycles,throughput_mbps\n";
    char buf[64];
    for (const SweepRow& row : rows) {
        out << row.k * static_cast<std::uint64_t>(row.m) << ',' << row.n << ',' << row.k << ','
            << row.max_erasures << ',' << row.m << ',' << row.hw.parallel_multipliers << ','
            << row.hw.clock_hz << ',';
        if (row.feasible) {
            std::snprintf(buf, sizeof buf, "%.6f", row.point.throughput_bps / 1e6);
            out << row.point.cycles << ',' << buf << '\n';
        } else {
            out << ",\n";
        }
    }
}

// Bundled synthesis figures for the reference decoder build (XC7Z020,
// GF(2^32), RS(200,136), 64 erasures, 100 MHz). Static reference data, never
// computed by the model.
struct ResourceRef {
    std::uint32_t parallel_multipliers;
    std::uint32_t lut;
    std::uint32_t ff;
    std::uint32_t ramb36;
    double measured_mbps;
};

inline constexpr ResourceRef kReferenceDecoderBuilds[4] = {
    {1, 1641, 188, 1, 14.7},
    {2, 2282, 250, 1, 29.1},
    {4, 3564, 376, 1, 57.1},
    {8, 6128, 628, 1, 101.0},
};

struct ReferencePoint {
    std::uint64_t n = 200;
    std::uint64_t k = 136;
    std::uint64_t e = 64;
    int m = 32;
    std::uint64_t clock_hz = 100'000'000;
};

}  // namespace rse
