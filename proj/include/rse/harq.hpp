#pragma once

// Monte-Carlo packet-erasure channel simulator comparing three delivery
// strategies over the RS codec, one codeword per block, one symbol per
// packet, i.i.d. per-packet loss:
//
//   fec_only  send all n packets once; decodable iff erasures <= n-k
//   arq_only  send the k data packets; each round retransmits exactly the
//             still-missing ones, up to max_rounds retransmission rounds
//   hybrid    send all n packets; while more than n-k are missing, retransmit
//             exactly (missing - (n-k)) of them, smallest positions first,
//             the deterministic repair count the code guarantees, then decode
//
// Every delivered block runs the real decoder and compares the recovered
// payload against the original data; a success flag is never trusted on its
// own. The feedback channel is lossless and instantaneous.
//
// Determinism: trial t draws from mt19937_64 seeded with
// splitmix64(seed + (t+1)·0x9e3779b97f4a7c15), so trials are independent,
// reproducible, and aligned across strategies (round-1 loss patterns match).

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rse/decoder.hpp"
#include "rse/rs.hpp"

namespace rse {

enum class Strategy { kFecOnly, kArqOnly, kHybrid };

inline const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::kFecOnly: return "fec_only";
        case Strategy::kArqOnly: return "arq_only";
        case Strategy::kHybrid: return "hybrid";
    }
    return "?";
}

struct ChannelModel {
    double loss_probability = 0.0;  // i.i.d. per packet, in [0, 1)
    std::uint64_t seed = 0;
};

struct SessionConfig {
    Strategy strategy = Strategy::kHybrid;
    std::uint32_t max_rounds = 4;  // retransmission rounds after the first send
};

struct BlockResult {
    bool delivered = false;
    std::uint32_t rounds = 1;  // transmission rounds used, first send included
    std::uint64_t packets_sent = 0;
};

struct SessionStats {
    std::uint64_t blocks = 0;
    std::uint64_t delivered = 0;
    std::uint64_t total_packets_sent = 0;
    std::map<std::uint32_t, std::uint64_t> rounds_histogram;

    double delivery_rate() const {
        return blocks ? static_cast<double>(delivered) / static_cast<double>(blocks) : 0.0;
    }
    double residual_failure_rate() const { return 1.0 - delivery_rate(); }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_index) {
    return splitmix64(seed + (trial_index + 1) * 0x9e3779b97f4a7c15ULL);
}

// canonical 53-bit double in [0,1) from raw engine output; avoids
// std::uniform_real_distribution so traces do not depend on the stdlib
inline double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool lost(std::mt19937_64& rng, double p) { return unit_draw(rng) < p; }

}  // namespace detail

inline void validate_channel(const ChannelModel& channel) {
    if (!(channel.loss_probability >= 0.0) || !(channel.loss_probability < 1.0))
        throw std::invalid_argument("loss probability must lie in [0, 1)");
}

/// Simulate one block (trial_index selects the per-trial RNG stream).
inline BlockResult simulate_block(const Code& code, const SessionConfig& config,
                                  const ChannelModel& channel, std::uint64_t trial_index) {
    validate_channel(channel);
    std::mt19937_64 rng(detail::trial_seed(channel.seed, trial_index));
    const double p = channel.loss_probability;
    const std::uint32_t n = code.n();
    const std::uint32_t k = code.k();
    const std::uint32_t budget = code.parity();

    // payload first, so all strategies see identical data and channel streams
    DataBlock data(k);
    for (auto& d : data) d = static_cast<Elem>(rng()) & code.field().elem_mask();

    BlockResult result;

    if (config.strategy == Strategy::kArqOnly) {
        std::vector<bool> have(k, false);
        DataBlock reassembled(k, 0);
        std::uint32_t missing = k;
        for (std::uint32_t round = 0; round <= config.max_rounds && missing > 0; ++round) {
            result.rounds = round + 1;
            for (std::uint32_t i = 0; i < k; ++i) {
                if (have[i]) continue;
                ++result.packets_sent;
                if (!detail::lost(rng, p)) {
                    have[i] = true;
                    reassembled[i] = data[i];
                    --missing;
                }
            }
        }
        result.delivered = missing == 0 && reassembled == data;
        return result;
    }

    // fec_only and hybrid transmit whole codewords
    const Codeword sent = code.encode(data);
    std::vector<bool> have(n, false);
    result.packets_sent = n;
    for (std::uint32_t i = 0; i < n; ++i)
        have[i] = !detail::lost(rng, p);

    auto missing_positions = [&] {
        std::vector<std::uint32_t> miss;
        for (std::uint32_t i = 0; i < n; ++i)
            if (!have[i]) miss.push_back(i);
        return miss;
    };

    std::vector<std::uint32_t> miss = missing_positions();
    if (config.strategy == Strategy::kHybrid) {
        std::uint32_t retransmissions = 0;
        while (miss.size() > budget && retransmissions < config.max_rounds) {
            ++retransmissions;
            result.rounds = retransmissions + 1;
            const std::uint32_t repair =
                static_cast<std::uint32_t>(miss.size()) - budget;
            for (std::uint32_t i = 0; i < repair; ++i) {
                ++result.packets_sent;
                if (!detail::lost(rng, p)) have[miss[i]] = true;
            }
            miss = missing_positions();
        }
    }

    if (miss.size() > budget) return result;  // not decodable, recorded failure

    Codeword received = sent;
    for (std::uint32_t pos : miss) received[pos] = 0;
    const DecodeReport report = decode(code, received, ErasurePattern(miss));
    result.delivered = report.ok() && code.data_of(report.corrected) == data;
    return result;
}

inline SessionStats run_monte_carlo(const Code& code, const SessionConfig& config,
                                    const ChannelModel& channel, std::uint64_t trials) {
    if (trials == 0)
        throw std::invalid_argument("need at least one trial");
    SessionStats stats;
    stats.blocks = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const BlockResult block = simulate_block(code, config, channel, t);
        stats.delivered += block.delivered;
        stats.total_packets_sent += block.packets_sent;
        ++stats.rounds_histogram[block.rounds];
    }
    return stats;
}

struct StrategyComparison {
    SessionStats fec_only;
    SessionStats arq_only;
    SessionStats hybrid;

    const SessionStats& of(Strategy s) const {
        switch (s) {
            case Strategy::kFecOnly: return fec_only;
            case Strategy::kArqOnly: return arq_only;
            case Strategy::kHybrid: return hybrid;
        }
        throw std::logic_error("bad strategy");
    }
};

/// All three strategies against the same channel seed (trial streams align,
/// so round-1 loss patterns coincide across strategies).
inline StrategyComparison compare_strategies(const Code& code, const ChannelModel& channel,
                                             std::uint64_t trials, std::uint32_t max_rounds) {
    StrategyComparison cmp;
    cmp.fec_only = run_monte_carlo(code, {Strategy::kFecOnly, max_rounds}, channel, trials);
    cmp.arq_only = run_monte_carlo(code, {Strategy::kArqOnly, max_rounds}, channel, trials);
    cmp.hybrid = run_monte_carlo(code, {Strategy::kHybrid, max_rounds}, channel, trials);
    return cmp;
}

}  // namespace rse
