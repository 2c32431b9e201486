#include "besselab/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace besselab {

namespace {

// Iterative radix-2 Cooley-Tukey, unnormalized; sign = -1 forward, +1 inverse.
void fft_line_iterative(Complex* a, std::size_t N, int sign) {
    for (std::size_t i = 1, j = 0; i < N; ++i) {
        std::size_t bit = N >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= N; len <<= 1) {
        const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        for (std::size_t start = 0; start < N; start += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const Complex w = std::polar(1.0, base * static_cast<double>(j));
                const Complex u = a[start + j];
                const Complex v = a[start + j + len / 2] * w;
                a[start + j] = u + v;
                a[start + j + len / 2] = u - v;
            }
        }
    }
}

// Recursive even/odd split; the serial reference core.
void fft_line_recursive(std::vector<Complex>& a, int sign) {
    const std::size_t N = a.size();
    if (N == 1) return;
    std::vector<Complex> even(N / 2), odd(N / 2);
    for (std::size_t i = 0; i < N / 2; ++i) {
        even[i] = a[2 * i];
        odd[i] = a[2 * i + 1];
    }
    fft_line_recursive(even, sign);
    fft_line_recursive(odd, sign);
    const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(N);
    for (std::size_t j = 0; j < N / 2; ++j) {
        const Complex w = std::polar(1.0, base * static_cast<double>(j)) * odd[j];
        a[j] = even[j] + w;
        a[j + N / 2] = even[j] - w;
    }
}

void transform_axes(std::vector<Complex>& values, const GridSpec& g, int sign, bool parallel) {
    const std::size_t N = g.N;
    const std::size_t total = values.size();
    for (int a = 0; a < g.n; ++a) {
        std::size_t stride = 1;
        for (int b = a + 1; b < g.n; ++b) stride *= N;
        const std::size_t block = stride * N;
        const std::ptrdiff_t lines = static_cast<std::ptrdiff_t>(total / N);
        if (parallel) {
#pragma omp parallel
            {
                std::vector<Complex> buf(N);
#pragma omp for schedule(static)
                for (std::ptrdiff_t l = 0; l < lines; ++l) {
                    const std::size_t outer = static_cast<std::size_t>(l) / stride;
                    const std::size_t inner = static_cast<std::size_t>(l) % stride;
                    const std::size_t base = outer * block + inner;
                    for (std::size_t i = 0; i < N; ++i) buf[i] = values[base + i * stride];
                    fft_line_iterative(buf.data(), N, sign);
                    for (std::size_t i = 0; i < N; ++i) values[base + i * stride] = buf[i];
                }
            }
        } else {
            std::vector<Complex> buf(N);
            for (std::ptrdiff_t l = 0; l < lines; ++l) {
                const std::size_t outer = static_cast<std::size_t>(l) / stride;
                const std::size_t inner = static_cast<std::size_t>(l) % stride;
                const std::size_t base = outer * block + inner;
                for (std::size_t i = 0; i < N; ++i) buf[i] = values[base + i * stride];
                fft_line_recursive(buf, sign);
                for (std::size_t i = 0; i < N; ++i) values[base + i * stride] = buf[i];
            }
        }
    }
}

// With x_k = -L + k h and xi_j = (pi/L) j, j = m - N/2, the lattice phases
// exp(-+ i <xi_j, x_k>) reduce to sign flips (-1)^{sum k_a} and (-1)^{sum m_a}
// around a standard DFT along each axis.
void apply_parity_flip(std::vector<Complex>& values, const GridSpec& g, bool parallel) {
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t k = 0; k < total; ++k) {
        std::size_t idx[3];
        g.unflatten(static_cast<std::size_t>(k), idx);
        std::size_t parity = 0;
        for (int a = 0; a < g.n; ++a) parity += idx[a];
        if (parity & 1) values[static_cast<std::size_t>(k)] = -values[static_cast<std::size_t>(k)];
    }
}

void scale(std::vector<Complex>& values, double c, bool parallel) {
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t k = 0; k < total; ++k) values[static_cast<std::size_t>(k)] *= c;
}

Field dft_impl(const Field& u, bool parallel) {
    if (u.domain != Domain::Physical)
        throw std::invalid_argument("dft: input field must be physical");
    Field v;
    v.grid = u.grid;
    v.domain = Domain::Spectral;
    v.values = u.values;
    apply_parity_flip(v.values, v.grid, parallel);
    transform_axes(v.values, v.grid, -1, parallel);
    apply_parity_flip(v.values, v.grid, parallel);
    const double c = std::pow(u.grid.h / std::sqrt(2.0 * std::numbers::pi), u.grid.n);
    scale(v.values, c, parallel);
    return v;
}

Field idft_impl(const Field& v, bool parallel) {
    if (v.domain != Domain::Spectral)
        throw std::invalid_argument("idft: input field must be spectral");
    Field u;
    u.grid = v.grid;
    u.domain = Domain::Physical;
    u.values = v.values;
    apply_parity_flip(u.values, u.grid, parallel);
    transform_axes(u.values, u.grid, +1, parallel);
    apply_parity_flip(u.values, u.grid, parallel);
    const double c = std::pow(v.grid.freq_step() / std::sqrt(2.0 * std::numbers::pi), v.grid.n);
    scale(u.values, c, parallel);
    return u;
}

}  // namespace

Field dft(const Field& u) { return dft_impl(u, true); }
Field idft(const Field& v) { return idft_impl(v, true); }

namespace serial {

Field dft(const Field& u) { return dft_impl(u, false); }
Field idft(const Field& v) { return idft_impl(v, false); }

}  // namespace serial

}  // namespace besselab
