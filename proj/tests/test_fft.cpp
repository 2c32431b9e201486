#include <doctest.h>

#include "besselab/fft.hpp"
#include "support.hpp"

using namespace besselab;
using testsupport::max_abs;
using testsupport::max_abs_diff;
using testsupport::naive_dft;
using testsupport::random_field;

TEST_CASE("dft matches the defining sum on small grids") {
    struct Case {
        int n;
        std::size_t N;
    };
    for (const Case c : {Case{1, 16}, Case{1, 32}, Case{2, 8}, Case{3, 8}}) {
        const GridSpec g = make_grid(c.n, 1.5, c.N);
        const Field u = random_field(g, 100 + c.n);
        const Field fast = dft(u);
        const Field slow = naive_dft(u);
        CHECK(max_abs_diff(fast, slow) / max_abs(slow) < 1e-12);
    }
}

TEST_CASE("serial reference transform is bitwise identical to the parallel kernel") {
    for (int n : {1, 2, 3}) {
        const GridSpec g = make_grid(n, 2.0, n == 1 ? 64 : 16);
        const Field u = random_field(g, 7 * n);
        const Field a = dft(u);
        const Field b = serial::dft(u);
        for (std::size_t k = 0; k < a.values.size(); ++k) CHECK(a.values[k] == b.values[k]);
        const Field ia = idft(a);
        const Field ib = serial::idft(a);
        for (std::size_t k = 0; k < ia.values.size(); ++k) CHECK(ia.values[k] == ib.values[k]);
    }
}

TEST_CASE("idft inverts dft") {
    for (int n : {1, 2}) {
        const GridSpec g = make_grid(n, 3.0, n == 1 ? 128 : 32);
        const Field u = random_field(g, 21 + n);
        const Field back = idft(dft(u));
        CHECK(max_abs_diff(back, u) / max_abs(u) < 1e-12);
    }
}

TEST_CASE("discrete Plancherel identity") {
    for (int n : {1, 2}) {
        const GridSpec g = make_grid(n, 2.0, n == 1 ? 128 : 32);
        const Field u = random_field(g, 31 + n);
        const Field v = dft(u);
        CHECK(lp_norm(v, 2.0) == doctest::Approx(lp_norm(u, 2.0)).epsilon(1e-12));
    }
}

TEST_CASE("constant field transforms to a spike at zero frequency") {
    const GridSpec g = make_grid(1, 16.0, 64);
    Field u;
    u.grid = g;
    u.values.assign(g.size(), Complex(1.0, 0.0));
    const Field v = dft(u);
    const double expected = 2.0 * g.L / std::sqrt(2.0 * 3.141592653589793238462643383279502884);
    CHECK(v.values[g.N / 2].real() == doctest::Approx(expected).epsilon(1e-13));
    CHECK(std::abs(v.values[g.N / 2].imag()) < 1e-13);
    for (std::size_t k = 0; k < g.size(); ++k)
        if (k != g.N / 2) CHECK(std::abs(v.values[k]) < 1e-12 * expected);
}

TEST_CASE("standard Gaussian is a fixed point of the symmetric transform") {
    const GridSpec g = make_grid(1, 16.0, 256);
    const Field u =
        sample_function([](const Point& x) { return Complex(std::exp(-0.5 * x[0] * x[0]), 0.0); },
                        g);
    const Field v = dft(u);
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double xi = g.freq(k)[0];
        worst = std::max(worst, std::abs(v.values[k] - Complex(std::exp(-0.5 * xi * xi), 0.0)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("transforms reject fields tagged with the wrong domain") {
    const GridSpec g = make_grid(1, 1.0, 8);
    const Field u = random_field(g, 1, Domain::Spectral);
    CHECK_THROWS_AS(dft(u), std::invalid_argument);
    const Field v = random_field(g, 1, Domain::Physical);
    CHECK_THROWS_AS(idft(v), std::invalid_argument);
}
