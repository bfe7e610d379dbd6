// rse: Reed-Solomon erasure codec, GF(2^m) field utilities, decoder
// cycle/throughput model, and packet-erasure channel simulation.
//
// Exit codes: 0 success, 1 runtime error, 3 uncorrectable erasure pattern,
// 4 post-correction verification failure; CLI parse errors use the parser's
// own nonzero codes. Errors go to stderr, data to stdout or --out files.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rse/decoder.hpp"
#include "rse/gf.hpp"
#include "rse/harq.hpp"
#include "rse/io.hpp"
#include "rse/perf.hpp"
#include "rse/rs.hpp"

namespace {

struct FieldFlags {
    int m = 0;  // 0 = infer from polynomial
    std::string poly;
    std::string preset;

    void attach(CLI::App* app) {
        app->add_option("--m", m, "field degree (2..32); inferred from --poly if omitted");
        app->add_option("--poly", poly,
                        "defining polynomial, hex mask (0x13) or exponent list ([4,1,0])");
        app->add_option("--preset", preset, "field preset: gf4, gf8 or gf32")
            ->check(CLI::IsMember({"gf4", "gf8", "gf32"}));
    }

    rse::Field resolve() const {
        std::string text = poly;
        if (!preset.empty()) {
            if (!poly.empty())
                throw std::invalid_argument("give either --poly or --preset, not both");
            if (preset == "gf4") text = "[4,1,0]";
            else if (preset == "gf8") text = "[8,4,3,2,0]";
            else text = "[32,31,3,1,0]";
        }
        if (text.empty())
            throw std::invalid_argument("no field given (use --poly or --preset)");
        const std::uint64_t mask = rse::parse_poly_mask(text);
        const int degree = m ? m : rse::poly_mask_degree(mask);
        return rse::Field(degree, mask);
    }
};

rse::Elem parse_elem(const std::string& text, const rse::Field& field) {
    std::size_t used = 0;
    std::uint64_t value = 0;
    try {
        if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
            value = std::stoull(text.substr(2), &used, 16);
            used += 2;
        } else {
            value = std::stoull(text, &used, 10);
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("bad field element: " + text);
    }
    if (used != text.size() || value > field.elem_mask())
        throw std::invalid_argument("element out of field range: " + text);
    return static_cast<rse::Elem>(value);
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file)
        throw std::runtime_error("cannot open for writing: " + path);
    return file;
}

// ---------------------------------------------------------------- gf

int run_gf_mul(const FieldFlags& flags, const std::string& a, const std::string& b) {
    const rse::Field f = flags.resolve();
    const rse::Elem c = f.mul(parse_elem(a, f), parse_elem(b, f));
    std::cout << "0x" << std::hex << c << std::dec << '\n';
    return 0;
}

int run_gf_inv(const FieldFlags& flags, const std::string& a) {
    const rse::Field f = flags.resolve();
    const rse::Elem inv = f.inverse(parse_elem(a, f));
    std::cout << "0x" << std::hex << inv << std::dec << '\n';
    return 0;
}

int run_gf_cost(const FieldFlags& flags) {
    const rse::Field f = flags.resolve();
    const rse::MulCostReport report = rse::xor_cost_estimate(f);
    std::cout << "xor_term_count: " << report.xor_term_count << '\n'
              << "depth_estimate: " << report.depth_estimate << '\n';
    return 0;
}

int run_gf_check_primitive(const FieldFlags& flags) {
    const rse::Field f = flags.resolve();
    switch (rse::check_primitive(f)) {
        case rse::Primitivity::kPrimitive: std::cout << "primitive\n"; break;
        case rse::Primitivity::kNotPrimitive: std::cout << "not-primitive\n"; break;
        case rse::Primitivity::kUnchecked:
            std::cout << "unchecked (trusted fixture; exhaustive test covers m <= 24)\n";
            break;
    }
    return 0;
}

// ---------------------------------------------------------------- rs

struct CodeFlags {
    FieldFlags field;
    std::uint32_t n = 0;
    std::uint32_t k = 0;

    void attach(CLI::App* app) {
        field.attach(app);
        app->add_option("--n", n, "codeword length in symbols")->required();
        app->add_option("--k", k, "data length in symbols")->required();
    }

    rse::Code resolve() const { return rse::Code(field.resolve(), n, k); }
};

int run_rs_encode(const CodeFlags& flags, const std::string& in, const std::string& out,
                  rse::io::SymbolFormat format) {
    const rse::Code code = flags.resolve();
    const rse::DataBlock data = rse::io::read_symbol_file(in, code.field(), format);
    if (data.size() != code.k())
        throw std::runtime_error("data file holds " + std::to_string(data.size()) +
                                 " symbols, expected k = " + std::to_string(code.k()));
    rse::io::write_symbol_file(out, code.encode(data), code.field(), format);
    return 0;
}

int run_rs_decode(const CodeFlags& flags, const std::string& in, const std::string& erasures,
                  const std::string& out, const std::string& report_path,
                  rse::io::SymbolFormat format) {
    const rse::Code code = flags.resolve();
    const rse::Codeword received = rse::io::read_symbol_file(in, code.field(), format);
    if (received.size() != code.n())
        throw std::runtime_error("codeword file holds " + std::to_string(received.size()) +
                                 " symbols, expected n = " + std::to_string(code.n()));
    const rse::ErasurePattern pattern =
        erasures.empty() ? rse::ErasurePattern{} : rse::io::read_erasure_file(erasures);
    const rse::DecodeReport report = rse::decode(code, received, pattern);

    std::ofstream report_file;
    rse::io::write_decode_report(report_path.empty() ? std::cout
                                                     : open_out(report_file, report_path),
                                 report, code.field());

    switch (report.status) {
        case rse::DecodeStatus::kUncorrectable:
            std::cerr << "uncorrectable: " << pattern.size() << " erasures exceed n-k = "
                      << code.parity() << '\n';
            return 3;
        case rse::DecodeStatus::kVerifyFailed:
            std::cerr << "verification failed: corrected word is not a codeword "
                         "(corruption outside the erasure set?)\n";
            return 4;
        case rse::DecodeStatus::kOk: break;
    }
    if (!out.empty())
        rse::io::write_symbol_file(out, code.data_of(report.corrected), code.field(), format);
    return 0;
}

// ---------------------------------------------------------------- perf

int run_perf(bool table3, std::vector<std::uint64_t> data_bits,
             std::vector<std::uint64_t> max_erasures, int m,
             std::vector<std::uint32_t> parallel, std::uint64_t clock_hz,
             const std::string& out_path) {
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);

    if (table3) {
        const rse::ReferencePoint ref;
        std::vector<rse::SweepRow> rows;
        for (const rse::ResourceRef& build : rse::kReferenceDecoderBuilds) {
            const rse::HardwareConfig hw{build.parallel_multipliers, ref.clock_hz};
            const auto point =
                rse::sweep_curves(std::vector<std::uint64_t>{ref.k * ref.m},
                                  std::vector<std::uint64_t>{ref.e}, ref.m, hw);
            rows.insert(rows.end(), point.begin(), point.end());
        }
        rse::write_sweep_csv(out, rows);
        out << "\nreference synthesis, XC7Z020, GF(2^32) RS(200,136), 64 erasures, 100 MHz\n"
            << "P,LUT,FF,RAMB36,measured_mbps\n";
        for (const rse::ResourceRef& build : rse::kReferenceDecoderBuilds) {
            char mbps[16];
            std::snprintf(mbps, sizeof mbps, "%.1f", build.measured_mbps);
            out << build.parallel_multipliers << ',' << build.lut << ',' << build.ff << ','
                << build.ramb36 << ',' << mbps << '\n';
        }
        return 0;
    }

    if (data_bits.empty() || max_erasures.empty())
        throw std::invalid_argument("need --data-bits and --max-erasures (or --table3)");
    if (parallel.empty()) parallel = {1};
    std::vector<rse::SweepRow> rows;
    for (const std::uint32_t p : parallel) {
        const auto part = rse::sweep_curves(data_bits, max_erasures, m, {p, clock_hz});
        rows.insert(rows.end(), part.begin(), part.end());
    }
    for (const rse::SweepRow& row : rows)
        if (!row.feasible)
            std::cerr << "warning: infeasible grid point (bits=" << row.requested_bits
                      << ", e=" << row.max_erasures << "): n = " << row.n
                      << " exceeds 2^m - 1\n";
    rse::write_sweep_csv(out, rows);
    return 0;
}

// ---------------------------------------------------------------- sim

int run_sim(const rse::io::SimConfig& cfg, const std::string& csv_path) {
    const rse::Field field(cfg.m, cfg.poly_mask);
    const rse::Code code(field, cfg.n, cfg.k);
    const rse::ChannelModel channel{cfg.p, cfg.seed};

    std::vector<std::pair<std::string, rse::SessionStats>> rows;
    if (cfg.strategy == "all") {
        const rse::StrategyComparison cmp =
            rse::compare_strategies(code, channel, cfg.trials, cfg.max_rounds);
        rows = {{"fec_only", cmp.fec_only},
                {"arq_only", cmp.arq_only},
                {"hybrid", cmp.hybrid}};
    } else {
        rse::Strategy strategy;
        if (cfg.strategy == "fec" || cfg.strategy == "fec_only")
            strategy = rse::Strategy::kFecOnly;
        else if (cfg.strategy == "arq" || cfg.strategy == "arq_only")
            strategy = rse::Strategy::kArqOnly;
        else if (cfg.strategy == "hybrid")
            strategy = rse::Strategy::kHybrid;
        else
            throw std::invalid_argument("unknown strategy: " + cfg.strategy);
        rows = {{rse::strategy_name(strategy),
                 rse::run_monte_carlo(code, {strategy, cfg.max_rounds}, channel, cfg.trials)}};
    }

    std::ofstream file;
    rse::io::write_session_csv(csv_path.empty() ? std::cout : open_out(file, csv_path), rows);
    if (!csv_path.empty()) std::cout << "csv written to " << csv_path << '\n';
    rse::io::write_session_summary(std::cout, rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reed-Solomon erasure codec, field utilities, decoder performance model "
                 "and hybrid-ARQ channel simulator"};
    app.require_subcommand(1);

    int rc = 0;

    // gf
    CLI::App* gf = app.add_subcommand("gf", "GF(2^m) field utilities");
    gf->require_subcommand(1);

    FieldFlags mul_flags;
    std::string mul_a, mul_b;
    CLI::App* gf_mul = gf->add_subcommand("mul", "multiply two elements");
    mul_flags.attach(gf_mul);
    gf_mul->add_option("a", mul_a, "left operand (0x hex or decimal)")->required();
    gf_mul->add_option("b", mul_b, "right operand")->required();
    gf_mul->callback([&] { rc = run_gf_mul(mul_flags, mul_a, mul_b); });

    FieldFlags inv_flags;
    std::string inv_a;
    CLI::App* gf_inv = gf->add_subcommand("inv", "invert an element");
    inv_flags.attach(gf_inv);
    gf_inv->add_option("a", inv_a, "operand")->required();
    gf_inv->callback([&] { rc = run_gf_inv(inv_flags, inv_a); });

    FieldFlags cost_flags;
    CLI::App* gf_cost = gf->add_subcommand("cost", "combinational multiplier cost estimate");
    cost_flags.attach(gf_cost);
    gf_cost->callback([&] { rc = run_gf_cost(cost_flags); });

    FieldFlags prim_flags;
    CLI::App* gf_prim =
        gf->add_subcommand("check-primitive", "test whether x generates the full group");
    prim_flags.attach(gf_prim);
    gf_prim->callback([&] { rc = run_gf_check_primitive(prim_flags); });

    // rs
    CLI::App* rs = app.add_subcommand("rs", "encode and decode");
    rs->require_subcommand(1);

    const std::map<std::string, rse::io::SymbolFormat> format_map{
        {"hex", rse::io::SymbolFormat::kHex}, {"bin", rse::io::SymbolFormat::kBinary}};

    CodeFlags enc_flags;
    std::string enc_in, enc_out;
    rse::io::SymbolFormat enc_format = rse::io::SymbolFormat::kHex;
    CLI::App* rs_enc = rs->add_subcommand("encode", "data file -> codeword file");
    enc_flags.attach(rs_enc);
    rs_enc->add_option("--in", enc_in, "data file (k symbols)")->required();
    rs_enc->add_option("--out", enc_out, "codeword file (n symbols)")->required();
    rs_enc->add_option("--format", enc_format, "symbol file format: hex or bin")
        ->transform(CLI::CheckedTransformer(format_map, CLI::ignore_case));
    rs_enc->callback([&] { rc = run_rs_encode(enc_flags, enc_in, enc_out, enc_format); });

    CodeFlags dec_flags;
    std::string dec_in, dec_eras, dec_out, dec_report;
    rse::io::SymbolFormat dec_format = rse::io::SymbolFormat::kHex;
    CLI::App* rs_dec = rs->add_subcommand(
        "decode", "codeword file + erasure file -> recovered data file + report");
    dec_flags.attach(rs_dec);
    rs_dec->add_option("--in", dec_in,
                       "received codeword file (n symbols; erased lines are ignored "
                       "but must be present)")
        ->required();
    rs_dec->add_option("--erasures", dec_eras,
                       "erasure file: comma-separated decimal positions on one line");
    rs_dec->add_option("--out", dec_out, "recovered data file (k symbols)");
    rs_dec->add_option("--report", dec_report,
                       "write the decode report here (default stdout)");
    rs_dec->add_option("--format", dec_format, "symbol file format: hex or bin")
        ->transform(CLI::CheckedTransformer(format_map, CLI::ignore_case));
    rs_dec->callback([&] {
        rc = run_rs_decode(dec_flags, dec_in, dec_eras, dec_out, dec_report, dec_format);
    });

    // perf
    bool table3 = false;
    std::vector<std::uint64_t> perf_bits, perf_erasures;
    std::vector<std::uint32_t> perf_parallel;
    int perf_m = 32;
    std::uint64_t perf_clock = 100'000'000;
    std::string perf_out;
    CLI::App* perf = app.add_subcommand("perf", "cycle/throughput model sweeps (CSV)");
    perf->add_flag("--table3", table3,
                   "emit the bundled reference operating point (GF(2^32) RS(200,136), "
                   "64 erasures, 100 MHz) across P = 1,2,4,8 with synthesis figures");
    perf->add_option("--data-bits", perf_bits, "uncoded data lengths in bits")
        ->delimiter(',');
    perf->add_option("--max-erasures", perf_erasures, "erasure budgets e (n = k + e)")
        ->delimiter(',');
    perf->add_option("--m", perf_m, "symbol width (default 32)");
    perf->add_option("-P,--parallel", perf_parallel,
                     "parallel multiplier counts (default 1)")
        ->delimiter(',');
    perf->add_option("--clock-hz", perf_clock, "clock frequency (default 100 MHz)");
    perf->add_option("--out", perf_out, "write CSV here instead of stdout");
    perf->callback([&] {
        rc = run_perf(table3, perf_bits, perf_erasures, perf_m, perf_parallel, perf_clock,
                      perf_out);
    });

    // sim
    rse::io::SimConfig sim_cfg;
    std::string sim_config_path, sim_csv, sim_poly = "[32,31,3,1,0]";
    CLI::App* sim = app.add_subcommand("sim", "hybrid-ARQ channel simulation");
    sim->add_option("--config", sim_config_path,
                    "JSON config file (m, poly, n, k, p, strategy, trials, seed, max_rounds)");
    sim->add_option("--m", sim_cfg.m, "field degree (default 32)");
    sim->add_option("--poly", sim_poly, "field polynomial (default [32,31,3,1,0])");
    sim->add_option("--n", sim_cfg.n, "codeword length");
    sim->add_option("--k", sim_cfg.k, "data length");
    sim->add_option("-p,--loss", sim_cfg.p, "per-packet loss probability");
    sim->add_option("--strategy", sim_cfg.strategy, "fec | arq | hybrid | all (default all)");
    sim->add_option("--trials", sim_cfg.trials, "Monte-Carlo blocks (default 1000)");
    sim->add_option("--seed", sim_cfg.seed, "RNG seed (default 1)");
    sim->add_option("--max-rounds", sim_cfg.max_rounds,
                    "retransmission round cap (default 4)");
    sim->add_option("--csv", sim_csv, "write the CSV here instead of stdout");
    sim->callback([&] {
        if (!sim_config_path.empty())
            sim_cfg = rse::io::load_sim_config(sim_config_path);
        else
            sim_cfg.poly_mask = rse::parse_poly_mask(sim_poly);
        rc = run_sim(sim_cfg, sim_csv);
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}
