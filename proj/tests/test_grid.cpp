#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "besselab/grid.hpp"
#include "support.hpp"

using namespace besselab;

TEST_CASE("make_grid validates its arguments") {
    CHECK_THROWS_AS(make_grid(0, 1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(4, 1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, -1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, 1.0, 12), std::invalid_argument);  // not a power of two
    CHECK_THROWS_AS(make_grid(1, 1.0, 4), std::invalid_argument);   // below the minimum
    const GridSpec g = make_grid(2, 3.0, 16);
    CHECK(g.h == doctest::Approx(6.0 / 16).epsilon(1e-15));
    CHECK(g.size() == 256);
}

TEST_CASE("point and frequency lattices") {
    const GridSpec g = make_grid(1, 4.0, 8);
    CHECK(g.point(0)[0] == doctest::Approx(-4.0));
    CHECK(g.point(4)[0] == doctest::Approx(0.0));
    CHECK(g.freq(4)[0] == doctest::Approx(0.0));
    CHECK(g.freq(0)[0] == doctest::Approx(-4.0 * g.freq_step()));
    CHECK(g.freq(7)[0] == doctest::Approx(3.0 * g.freq_step()));
}

TEST_CASE("flatten and unflatten are inverse") {
    const GridSpec g = make_grid(3, 1.0, 8);
    for (std::size_t flat : {std::size_t(0), std::size_t(7), std::size_t(100), g.size() - 1}) {
        std::size_t idx[3];
        g.unflatten(flat, idx);
        CHECK(g.flatten(idx) == flat);
    }
}

TEST_CASE("pairwise_sum matches sequential accumulation") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> v(1337);
    for (double& x : v) x = unif(rng);
    const double seq = std::accumulate(v.begin(), v.end(), 0.0);
    CHECK(pairwise_sum(std::span<const double>(v)) ==
          doctest::Approx(seq).epsilon(1e-13));
    // integers sum exactly regardless of the reduction tree
    std::vector<double> ints(1000);
    std::iota(ints.begin(), ints.end(), 1.0);
    CHECK(pairwise_sum(std::span<const double>(ints)) == 500500.0);
}

TEST_CASE("lp_norm of a constant field") {
    const GridSpec g = make_grid(2, 2.0, 16);
    Field u;
    u.grid = g;
    u.values.assign(g.size(), Complex(3.0, 0.0));
    for (double p : {1.5, 2.0, 3.0}) {
        const double expected = 3.0 * std::pow(4.0 * 4.0, 1.0 / p);  // measure (2L)^n
        CHECK(lp_norm(u, p) == doctest::Approx(expected).epsilon(1e-13));
    }
    CHECK_THROWS_AS(lp_norm(u, 0.5), std::invalid_argument);
}

TEST_CASE("cyclic_translate permutes values exactly") {
    const GridSpec g = make_grid(1, 1.0, 16);
    const Field u = testsupport::random_field(g, 5);
    const Field full = cyclic_translate(u, {16, 0, 0});
    for (std::size_t k = 0; k < u.values.size(); ++k) CHECK(full.values[k] == u.values[k]);
    const Field once = cyclic_translate(u, {3, 0, 0});
    const Field back = cyclic_translate(once, {-3, 0, 0});
    for (std::size_t k = 0; k < u.values.size(); ++k) CHECK(back.values[k] == u.values[k]);
    CHECK(once.values[3] == u.values[0]);
}

TEST_CASE("fit_loglog_slope recovers an exact power law") {
    std::vector<std::pair<double, double>> pts;
    for (double m : {2.0, 4.0, 8.0, 16.0}) pts.emplace_back(m, 5.0 * std::pow(m, 1.75));
    const SlopeFit fit = fit_loglog_slope(pts);
    CHECK(fit.slope == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(5.0)).epsilon(1e-10));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("field dump round-trips bit for bit") {
    const GridSpec g = make_grid(2, 2.5, 8);
    const Field u = testsupport::random_field(g, 77, Domain::Spectral);
    const auto path = std::filesystem::temp_directory_path() / "besselab_test_dump.blab";
    write_field(u, path.string());
    const Field v = read_field(path.string());
    CHECK(v.grid == u.grid);
    CHECK(v.domain == u.domain);
    REQUIRE(v.values.size() == u.values.size());
    for (std::size_t k = 0; k < u.values.size(); ++k) CHECK(v.values[k] == u.values[k]);

    std::ifstream in(path, std::ios::binary);
    char magic[4];
    in.read(magic, 4);
    CHECK(std::string(magic, 4) == "BLAB");
    std::filesystem::remove(path);
}

TEST_CASE("sample_function rejects non-finite values and names the point") {
    const GridSpec g = make_grid(1, 1.0, 8);
    try {
        sample_function([](const Point& x) { return Complex(1.0 / (x[0] + 1.0), 0.0); }, g);
        FAIL("expected an exception for the pole at x = -1");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("-1") != std::string::npos);
    }
}
