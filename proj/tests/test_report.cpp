#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <random>

#include "besselab/report.hpp"

using namespace besselab;

TEST_CASE("format_value round-trips doubles") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> unif(-1e6, 1e6);
    for (int i = 0; i < 200; ++i) {
        const double x = unif(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
        const std::string s = format_value(x);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == x);
    }
    CHECK(format_value(0.1) == "0.10000000000000001");
}

TEST_CASE("csv serialization quotes only where needed, LF endings") {
    CsvTable t;
    t.header = {"a", "b"};
    t.rows = {{"plain", "with,comma"}, {"quote\"inside", "line\nbreak"}};
    const std::string s = to_csv_string(t);
    CHECK(s == "a,b\nplain,\"with,comma\"\n\"quote\"\"inside\",\"line\nbreak\"\n");
    CHECK(s.find('\r') == std::string::npos);
}

TEST_CASE("csv rejects ragged tables") {
    CsvTable t;
    t.header = {"a", "b"};
    t.rows = {{"1"}};
    CHECK_THROWS_AS(to_csv_string(t), std::invalid_argument);
}

TEST_CASE("atomic text write leaves no temp file behind") {
    const auto dir = std::filesystem::temp_directory_path() / "besselab_report_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.txt";
    write_text_atomic(path.string(), "hello\n");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "hello");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
    CHECK(entries == 1);
    std::filesystem::remove_all(dir);
}
