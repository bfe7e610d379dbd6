#pragma once

// File formats:
//   symbol files   one symbol per line as fixed-width hex (ceil(m/4) digits),
//                  or raw binary little-endian ceil(m/8)-byte symbols; the
//                  reader is selected by flag, never by sniffing
//   erasure file   comma-separated decimal positions on one line
//   decode report  structured text: position:value pairs plus op-count table
//   sim config     JSON object (m/poly/n/k/p/strategy/trials/seed/max_rounds)

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rse/decoder.hpp"
#include "rse/gf.hpp"
#include "rse/harq.hpp"

namespace rse::io {

enum class SymbolFormat { kHex, kBinary };

inline int hex_digits(const Field& field) { return (field.degree() + 3) / 4; }
inline int symbol_bytes(const Field& field) { return (field.degree() + 7) / 8; }

inline void write_symbols(std::ostream& out, std::span<const Elem> symbols, const Field& field,
                          SymbolFormat format) {
    if (format == SymbolFormat::kHex) {
        const int width = hex_digits(field);
        for (const Elem s : symbols)
            out << std::hex << std::setw(width) << std::setfill('0') << s << '\n'
                << std::dec;
    } else {
        const int bytes = symbol_bytes(field);
        for (const Elem s : symbols)
            for (int b = 0; b < bytes; ++b)
                out.put(static_cast<char>((s >> (8 * b)) & 0xff));
    }
}

inline std::vector<Elem> read_symbols(std::istream& in, const Field& field,
                                      SymbolFormat format) {
    std::vector<Elem> symbols;
    if (format == SymbolFormat::kHex) {
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::size_t b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            const std::size_t e = line.find_last_not_of(" \t\r");
            std::size_t used = 0;
            std::uint64_t value = 0;
            try {
                value = std::stoull(line.substr(b, e - b + 1), &used, 16);
            } catch (const std::exception&) {
                throw std::runtime_error("bad hex symbol on line " + std::to_string(lineno));
            }
            if (used != e - b + 1 || value > field.elem_mask())
                throw std::runtime_error("bad hex symbol on line " + std::to_string(lineno));
            symbols.push_back(static_cast<Elem>(value));
        }
    } else {
        const int bytes = symbol_bytes(field);
        char byte = 0;
        while (in.peek() != std::char_traits<char>::eof()) {
            Elem value = 0;
            for (int b = 0; b < bytes; ++b) {
                if (!in.get(byte))
                    throw std::runtime_error("truncated binary symbol file");
                value |= static_cast<Elem>(static_cast<unsigned char>(byte)) << (8 * b);
            }
            if (value > field.elem_mask())
                throw std::runtime_error("binary symbol exceeds field width");
            symbols.push_back(value);
        }
    }
    return symbols;
}

inline void write_symbol_file(const std::filesystem::path& path, std::span<const Elem> symbols,
                              const Field& field, SymbolFormat format) {
    std::ofstream out(path, format == SymbolFormat::kBinary ? std::ios::binary : std::ios::out);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    write_symbols(out, symbols, field, format);
}

inline std::vector<Elem> read_symbol_file(const std::filesystem::path& path, const Field& field,
                                          SymbolFormat format) {
    std::ifstream in(path, format == SymbolFormat::kBinary ? std::ios::binary : std::ios::in);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path.string());
    return read_symbols(in, field, format);
}

inline ErasurePattern read_erasures(std::istream& in) {
    std::vector<std::uint32_t> positions;
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == ','))
            ++pos;
        if (pos >= text.size()) break;
        std::size_t used = 0;
        long long value = 0;
        try {
            value = std::stoll(text.substr(pos), &used, 10);
        } catch (const std::exception&) {
            throw std::runtime_error("bad erasure position near: " + text.substr(pos, 8));
        }
        if (value < 0)
            throw std::runtime_error("negative erasure position");
        positions.push_back(static_cast<std::uint32_t>(value));
        pos += used;
    }
    return ErasurePattern(std::move(positions));
}

inline ErasurePattern read_erasure_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path.string());
    return read_erasures(in);
}

inline std::string format_elem(Elem value, const Field& field) {
    std::ostringstream out;
    out << "0x" << std::hex << std::setw(hex_digits(field)) << std::setfill('0') << value;
    return out.str();
}

inline void write_decode_report(std::ostream& out, const DecodeReport& report,
                                const Field& field) {
    switch (report.status) {
        case DecodeStatus::kOk: out << "status: ok\n"; break;
        case DecodeStatus::kUncorrectable: out << "status: uncorrectable\n"; break;
        case DecodeStatus::kVerifyFailed: out << "status: verify-failed\n"; break;
    }
    out << "corrections: " << report.values.size() << '\n';
    for (const auto& [pos, value] : report.values)
        out << "  " << pos << ':' << format_elem(value, field) << '\n';
    out << "op-counts (multiplications / inversions):\n";
    const auto row = [&](const char* name, const OpCounts& c) {
        out << "  " << std::left << std::setw(9) << name << std::right << std::setw(10) << c.mul
            << " / " << c.inv << '\n';
    };
    row("syndrome", report.op_counts.syndrome);
    row("locator", report.op_counts.locator);
    row("lambda", report.op_counts.lambda);
    row("omega", report.op_counts.omega);
    row("forney", report.op_counts.forney);
    row("inverse", report.op_counts.inverse);
    row("total", report.op_counts.total());
}

struct SimConfig {
    int m = 32;
    std::uint64_t poly_mask = 0;
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    double p = 0.0;
    std::string strategy = "all";  // fec | arq | hybrid | all
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    std::uint32_t max_rounds = 4;
};

inline SimConfig load_sim_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path.string());
    nlohmann::json j;
    in >> j;
    SimConfig cfg;
    cfg.m = j.at("m").get<int>();
    if (j.at("poly").is_string())
        cfg.poly_mask = parse_poly_mask(j.at("poly").get<std::string>());
    else
        cfg.poly_mask = j.at("poly").get<std::uint64_t>();
    cfg.n = j.at("n").get<std::uint32_t>();
    cfg.k = j.at("k").get<std::uint32_t>();
    cfg.p = j.at("p").get<double>();
    if (j.contains("strategy")) cfg.strategy = j.at("strategy").get<std::string>();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<std::uint64_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("max_rounds")) cfg.max_rounds = j.at("max_rounds").get<std::uint32_t>();
    return cfg;
}

inline void write_session_csv(std::ostream& out,
                              std::span<const std::pair<std::string, SessionStats>> rows) {
    out << "strategy,blocks,delivered,residual_failure_rate,total_packets_sent,avg_rounds\n";
    for (const auto& [name, stats] : rows) {
        double rounds_sum = 0;
        for (const auto& [rounds, count] : stats.rounds_histogram)
            rounds_sum += static_cast<double>(rounds) * static_cast<double>(count);
        char rate[32];
        char avg_rounds[32];
        std::snprintf(rate, sizeof rate, "%.6f", stats.residual_failure_rate());
        std::snprintf(avg_rounds, sizeof avg_rounds, "%.4f",
                      stats.blocks ? rounds_sum / static_cast<double>(stats.blocks) : 0.0);
        out << name << ',' << stats.blocks << ',' << stats.delivered << ',' << rate << ','
            << stats.total_packets_sent << ',' << avg_rounds << '\n';
    }
}

inline void write_session_summary(std::ostream& out,
                                  std::span<const std::pair<std::string, SessionStats>> rows) {
    for (const auto& [name, stats] : rows) {
        out << name << ": delivered " << stats.delivered << '/' << stats.blocks << " ("
            << stats.delivery_rate() * 100.0 << "%), packets " << stats.total_packets_sent
            << ", rounds";
        for (const auto& [rounds, count] : stats.rounds_histogram)
            out << ' ' << rounds << 'x' << count;
        out << '\n';
    }
}

}  // namespace rse::io
