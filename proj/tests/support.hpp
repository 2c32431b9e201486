#pragma once

#include <random>

#include "besselab/fft.hpp"
#include "besselab/grid.hpp"

namespace testsupport {

inline besselab::Field random_field(const besselab::GridSpec& grid, std::uint64_t seed,
                                    besselab::Domain domain = besselab::Domain::Physical) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    besselab::Field u;
    u.grid = grid;
    u.domain = domain;
    u.values.resize(grid.size());
    for (besselab::Complex& v : u.values) v = besselab::Complex(gauss(rng), gauss(rng));
    return u;
}

// Transform straight from the defining sum, O(size^2). Independent of the
// fast kernels: no butterflies, no parity tricks, just the formula.
inline besselab::Field naive_dft(const besselab::Field& u) {
    const besselab::GridSpec& g = u.grid;
    besselab::Field out;
    out.grid = g;
    out.domain = besselab::Domain::Spectral;
    out.values.assign(g.size(), besselab::Complex(0.0, 0.0));
    const double scale =
        std::pow(g.h, g.n) * std::pow(2.0 * 3.141592653589793238462643383279502884, -0.5 * g.n);
    for (std::size_t m = 0; m < g.size(); ++m) {
        const besselab::Point xi = g.freq(m);
        besselab::Complex acc(0.0, 0.0);
        for (std::size_t k = 0; k < g.size(); ++k) {
            const besselab::Point x = g.point(k);
            const double phase = xi[0] * x[0] + xi[1] * x[1] + xi[2] * x[2];
            acc += u.values[k] * std::polar(1.0, -phase);
        }
        out.values[m] = scale * acc;
    }
    return out;
}

inline double max_abs_diff(const besselab::Field& a, const besselab::Field& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k)
        m = std::max(m, std::abs(a.values[k] - b.values[k]));
    return m;
}

inline double max_abs(const besselab::Field& a) {
    double m = 0.0;
    for (const besselab::Complex& v : a.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace testsupport
