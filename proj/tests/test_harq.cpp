#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "rse/harq.hpp"
#include "rse/io.hpp"
#include "rse/rs.hpp"

using namespace rse;

namespace {

constexpr std::uint64_t kPoly32 = 0x18000000Bull;
constexpr std::uint64_t kPoly8 = 0x11D;

// exact P(Bin(n, p) <= budget) by term recurrence in extended precision
double binomial_success_oracle(std::uint32_t n, std::uint32_t budget, double p) {
    const long double q = 1.0L - static_cast<long double>(p);
    long double term = std::pow(q, static_cast<long double>(n));
    long double sum = term;
    for (std::uint32_t i = 1; i <= budget; ++i) {
        term *= static_cast<long double>(n - i + 1) / static_cast<long double>(i) *
                (static_cast<long double>(p) / q);
        sum += term;
    }
    return static_cast<double>(sum);
}

std::string stats_fingerprint(const SessionStats& s) {
    std::ostringstream out;
    out << s.blocks << '|' << s.delivered << '|' << s.total_packets_sent;
    for (const auto& [rounds, count] : s.rounds_histogram) out << '|' << rounds << ':' << count;
    return out.str();
}

}  // namespace

TEST_CASE("lossless channel") {
    Field f(8, kPoly8);
    Code code(f, 40, 28);
    const ChannelModel channel{0.0, 7};
    for (const Strategy s : {Strategy::kFecOnly, Strategy::kArqOnly, Strategy::kHybrid}) {
        const BlockResult block = simulate_block(code, {s, 4}, channel, 0);
        CHECK(block.delivered);
        CHECK(block.rounds == 1);
        CHECK(block.packets_sent == (s == Strategy::kArqOnly ? 28u : 40u));
    }
    // arq sends the fewest packets when nothing is lost (k versus n)
    const StrategyComparison cmp = compare_strategies(code, channel, 50, 4);
    CHECK(cmp.fec_only.delivered == 50);
    CHECK(cmp.arq_only.delivered == 50);
    CHECK(cmp.hybrid.delivered == 50);
    CHECK(cmp.arq_only.total_packets_sent < cmp.fec_only.total_packets_sent);
    CHECK(cmp.arq_only.total_packets_sent < cmp.hybrid.total_packets_sent);
}

TEST_CASE("hybrid keeps to one round while erasures stay within budget") {
    Field f(8, kPoly8);
    Code code(f, 40, 28);  // budget 12, p small => round-1 losses well under it
    const ChannelModel channel{0.02, 11};
    SessionStats stats = run_monte_carlo(code, {Strategy::kHybrid, 4}, channel, 300);
    CHECK(stats.delivered == 300);
    REQUIRE(stats.rounds_histogram.count(1) == 1);
    CHECK(stats.rounds_histogram.at(1) == 300);  // zero retransmissions
    CHECK(stats.total_packets_sent == 300u * 40u);
}

TEST_CASE("hybrid retransmits exactly the shortfall") {
    Field f(8, kPoly8);
    Code code(f, 40, 28);
    // max_rounds = 0 disables repair: hybrid degenerates to fec_only
    const ChannelModel channel{0.4, 13};
    const SessionStats fec = run_monte_carlo(code, {Strategy::kFecOnly, 0}, channel, 400);
    const SessionStats hyb0 = run_monte_carlo(code, {Strategy::kHybrid, 0}, channel, 400);
    CHECK(fec.delivered == hyb0.delivered);
    CHECK(fec.total_packets_sent == hyb0.total_packets_sent);
    // with repair enabled the same channel delivers strictly more
    const SessionStats hyb4 = run_monte_carlo(code, {Strategy::kHybrid, 4}, channel, 400);
    CHECK(hyb4.delivered > hyb0.delivered);
    CHECK(hyb4.total_packets_sent > hyb0.total_packets_sent);
}

TEST_CASE("runs are deterministic per seed") {
    Field f(8, kPoly8);
    Code code(f, 60, 44);
    const ChannelModel channel{0.25, 12345};
    const SessionConfig config{Strategy::kHybrid, 3};
    const SessionStats a = run_monte_carlo(code, config, channel, 500);
    const SessionStats b = run_monte_carlo(code, config, channel, 500);
    CHECK(stats_fingerprint(a) == stats_fingerprint(b));
    const SessionStats c = run_monte_carlo(code, config, {0.25, 54321}, 500);
    CHECK(stats_fingerprint(a) != stats_fingerprint(c));
    SECTION("one trial matches its block record") {
        const SessionStats one = run_monte_carlo(code, config, channel, 1);
        const BlockResult block = simulate_block(code, config, channel, 0);
        CHECK(one.blocks == 1);
        CHECK(one.delivered == (block.delivered ? 1u : 0u));
        CHECK(one.total_packets_sent == block.packets_sent);
        CHECK(one.rounds_histogram.at(block.rounds) == 1);
    }
}

TEST_CASE("fec success matches the binomial budget rule") {
    Field f(8, kPoly8);
    Code code(f, 50, 30);  // budget 20
    const double p = 0.35;
    const ChannelModel channel{p, 99};
    const std::uint64_t trials = 4000;
    const SessionStats stats = run_monte_carlo(code, {Strategy::kFecOnly, 0}, channel, trials);
    const double expect = binomial_success_oracle(50, 20, p);
    const double got = stats.delivery_rate();
    const double se = std::sqrt(expect * (1 - expect) / static_cast<double>(trials));
    CHECK(std::abs(got - expect) < 3 * se);
}

TEST_CASE("reference code at a mild loss rate stays below 1e-3 residual failure") {
    Field f(32, kPoly32);
    Code code(f, 200, 136);
    const SessionStats stats =
        run_monte_carlo(code, {Strategy::kFecOnly, 0}, {0.1, 2024}, 10000);
    CHECK(stats.residual_failure_rate() < 1e-3);
    // exact tail is astronomically small at p = 0.1
    CHECK(binomial_success_oracle(200, 64, 0.1) > 1.0 - 1e-9);
}

TEST_CASE("hybrid outperforms plain fec on residual failure under heavy loss") {
    Field f(32, kPoly32);
    Code code(f, 200, 136);
    const ChannelModel channel{0.3, 31337};
    const StrategyComparison cmp = compare_strategies(code, channel, 2000, 4);
    CHECK(cmp.hybrid.residual_failure_rate() < cmp.fec_only.residual_failure_rate());
    // at p = 0.3 the mean loss (60) sits below the budget (64), so fec alone
    // already delivers most blocks; hybrid must still be a strict improvement
    CHECK(cmp.fec_only.delivery_rate() > 0.5);
    CHECK(cmp.hybrid.delivery_rate() > 0.97);
}

TEST_CASE("channel validation") {
    Field f(8, kPoly8);
    Code code(f, 40, 28);
    CHECK_THROWS_AS(simulate_block(code, {Strategy::kFecOnly, 0}, {1.0, 1}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_block(code, {Strategy::kFecOnly, 0}, {-0.1, 1}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_monte_carlo(code, {Strategy::kFecOnly, 0}, {0.1, 1}, 0),
                    std::invalid_argument);
}

TEST_CASE("session stats serialization") {
    Field f(8, kPoly8);
    Code code(f, 40, 28);
    const StrategyComparison cmp = compare_strategies(code, {0.2, 5}, 100, 2);
    const std::vector<std::pair<std::string, SessionStats>> rows = {
        {"fec_only", cmp.fec_only}, {"arq_only", cmp.arq_only}, {"hybrid", cmp.hybrid}};
    std::ostringstream csv;
    io::write_session_csv(csv, rows);
    std::istringstream in(csv.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line ==
          "strategy,blocks,delivered,residual_failure_rate,total_packets_sent,avg_rounds");
    int count = 0;
    while (std::getline(in, line)) {
        CHECK(line.find("100") != std::string::npos);
        ++count;
    }
    CHECK(count == 3);
    std::ostringstream summary;
    io::write_session_summary(summary, rows);
    CHECK(summary.str().find("hybrid: delivered") != std::string::npos);
}
