#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "rse/decoder.hpp"
#include "rse/gf.hpp"
#include "rse/io.hpp"

using namespace rse;

namespace {
constexpr std::uint64_t kPoly32 = 0x18000000Bull;
constexpr std::uint64_t kPoly4 = 0b10011;
constexpr std::uint64_t kPoly9 = (1u << 9) | (1u << 4) | 1u;
}  // namespace

TEST_CASE("symbol files round-trip in both formats") {
    std::mt19937_64 rng(101);
    for (const auto& [m, poly] : std::vector<std::pair<int, std::uint64_t>>{
             {4, kPoly4}, {9, kPoly9}, {32, kPoly32}}) {
        Field f(m, poly);
        std::vector<Elem> symbols(64);
        for (auto& s : symbols) s = static_cast<Elem>(rng()) & f.elem_mask();
        symbols[0] = 0;
        symbols[1] = f.elem_mask();
        for (const auto format : {io::SymbolFormat::kHex, io::SymbolFormat::kBinary}) {
            std::stringstream stream;
            io::write_symbols(stream, symbols, f, format);
            CHECK(io::read_symbols(stream, f, format) == symbols);
        }
    }
}

TEST_CASE("hex symbol lines carry a fixed width") {
    Field f(32, kPoly32);
    std::ostringstream out;
    io::write_symbols(out, std::vector<Elem>{0x1, 0xdeadbeef}, f, io::SymbolFormat::kHex);
    CHECK(out.str() == "00000001\ndeadbeef\n");
    Field f4(4, kPoly4);
    std::ostringstream out4;
    io::write_symbols(out4, std::vector<Elem>{0xa, 0x0}, f4, io::SymbolFormat::kHex);
    CHECK(out4.str() == "a\n0\n");
}

TEST_CASE("binary symbols use ceil(m/8) little-endian bytes") {
    Field f9(9, kPoly9);
    std::stringstream stream;
    io::write_symbols(stream, std::vector<Elem>{0x1ff, 0x002}, f9, io::SymbolFormat::kBinary);
    const std::string bytes = stream.str();
    REQUIRE(bytes.size() == 4);
    CHECK(static_cast<unsigned char>(bytes[0]) == 0xff);
    CHECK(static_cast<unsigned char>(bytes[1]) == 0x01);
    CHECK(static_cast<unsigned char>(bytes[2]) == 0x02);
    CHECK(static_cast<unsigned char>(bytes[3]) == 0x00);
}

TEST_CASE("symbol readers reject malformed input") {
    Field f4(4, kPoly4);
    SECTION("hex value wider than the field") {
        std::istringstream in("1f\n");
        CHECK_THROWS_AS(io::read_symbols(in, f4, io::SymbolFormat::kHex), std::runtime_error);
    }
    SECTION("junk hex") {
        std::istringstream in("0xzz\n");
        CHECK_THROWS_AS(io::read_symbols(in, f4, io::SymbolFormat::kHex), std::runtime_error);
    }
    SECTION("truncated binary stream") {
        Field f9(9, kPoly9);
        std::istringstream in(std::string(3, '\x01'));
        CHECK_THROWS_AS(io::read_symbols(in, f9, io::SymbolFormat::kBinary),
                        std::runtime_error);
    }
    SECTION("binary symbol above the field mask") {
        Field f9(9, kPoly9);
        const char bytes[2] = {'\x00', '\x02'};  // 0x200 > 0x1ff
        std::istringstream in(std::string(bytes, 2));
        CHECK_THROWS_AS(io::read_symbols(in, f9, io::SymbolFormat::kBinary),
                        std::runtime_error);
    }
    SECTION("blank lines are skipped in hex mode") {
        std::istringstream in("\n3\n\n 7 \n");
        CHECK(io::read_symbols(in, f4, io::SymbolFormat::kHex) ==
              std::vector<Elem>{3, 7});
    }
}

TEST_CASE("erasure pattern files") {
    SECTION("comma-separated positions, sorted on load") {
        std::istringstream in("9, 3,1\n");
        CHECK(io::read_erasures(in).positions() == std::vector<std::uint32_t>{1, 3, 9});
    }
    SECTION("empty file means no erasures") {
        std::istringstream in("\n");
        CHECK(io::read_erasures(in).empty());
    }
    SECTION("duplicates rejected") {
        std::istringstream in("4,4");
        CHECK_THROWS_AS(io::read_erasures(in), std::invalid_argument);
    }
    SECTION("negative positions rejected") {
        std::istringstream in("3,-1");
        CHECK_THROWS_AS(io::read_erasures(in), std::runtime_error);
    }
}

TEST_CASE("decode report serialization") {
    Field f(4, kPoly4);
    DecodeReport report;
    report.status = DecodeStatus::kOk;
    report.corrected = {0, 1, 2, 3};
    report.values = {{1, 0xA}, {3, 0x2}};
    report.op_counts.syndrome.mul = 42;
    report.op_counts.inverse.mul = 10;
    report.op_counts.inverse.inv = 2;
    std::ostringstream out;
    io::write_decode_report(out, report, f);
    const std::string text = out.str();
    CHECK(text.find("status: ok") != std::string::npos);
    CHECK(text.find("corrections: 2") != std::string::npos);
    CHECK(text.find("1:0xa") != std::string::npos);
    CHECK(text.find("3:0x2") != std::string::npos);
    CHECK(text.find("syndrome") != std::string::npos);
    CHECK(text.find("42") != std::string::npos);
    CHECK(text.find("total") != std::string::npos);
}

TEST_CASE("sim config JSON") {
    const auto path = std::filesystem::temp_directory_path() / "rse_test_sim_config.json";
    SECTION("full object with string polynomial") {
        std::ofstream(path) << R"({"m":32,"poly":"[32,31,3,1,0]","n":200,"k":136,
            "p":0.3,"strategy":"hybrid","trials":5000,"seed":7,"max_rounds":6})";
        const io::SimConfig cfg = io::load_sim_config(path);
        CHECK(cfg.m == 32);
        CHECK(cfg.poly_mask == kPoly32);
        CHECK(cfg.n == 200);
        CHECK(cfg.k == 136);
        CHECK(cfg.p == 0.3);
        CHECK(cfg.strategy == "hybrid");
        CHECK(cfg.trials == 5000);
        CHECK(cfg.seed == 7);
        CHECK(cfg.max_rounds == 6);
    }
    SECTION("defaults fill optional fields") {
        std::ofstream(path) << R"({"m":4,"poly":19,"n":15,"k":11,"p":0.05})";
        const io::SimConfig cfg = io::load_sim_config(path);
        CHECK(cfg.poly_mask == kPoly4);
        CHECK(cfg.strategy == "all");
        CHECK(cfg.trials == 1000);
        CHECK(cfg.max_rounds == 4);
    }
    SECTION("missing required key") {
        std::ofstream(path) << R"({"m":4,"poly":19,"n":15,"k":11})";
        CHECK_THROWS(io::load_sim_config(path));
    }
    std::filesystem::remove(path);
}
