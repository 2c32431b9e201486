#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace besselab {

using Complex = std::complex<double>;

/// A point in R^n; unused trailing components stay zero.
using Point = std::array<double, 3>;

enum class Domain : std::uint8_t { Physical = 0, Spectral = 1 };

/// Uniform grid on [-L, L)^n with N points per axis, N a power of two.
/// Grid point k maps to x_k = -L + k*h componentwise, h = 2L/N.
/// The matching frequency lattice is xi_j = (pi/L)*j, j in {-N/2 .. N/2-1}^n,
/// stored in row-major order with array position m <-> j = m - N/2 per axis.
struct GridSpec {
    int n = 1;
    double L = 1.0;
    std::size_t N = 8;
    double h = 0.25;

    std::size_t size() const;
    double freq_step() const { return 3.141592653589793238462643383279502884 / L; }

    Point point(std::size_t flat) const;
    Point freq(std::size_t flat) const;
    void unflatten(std::size_t flat, std::size_t (&idx)[3]) const;
    std::size_t flatten(const std::size_t (&idx)[3]) const;

    bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int n, double L, std::size_t N);

/// Complex samples on a grid, either physical-space values u(x_k) or
/// spectral values on the shifted frequency lattice.
struct Field {
    GridSpec grid;
    Domain domain = Domain::Physical;
    std::vector<Complex> values;
};

Field sample_function(const std::function<Complex(const Point&)>& f, const GridSpec& grid);

/// Deterministic cascade summation; the reduction tree depends only on the
/// element count, so results are reproducible across thread counts.
double pairwise_sum(std::span<const double> v);
Complex pairwise_sum(std::span<const Complex> v);

/// Discrete L_p norm c^{n/p} * (sum |u_k|^p)^{1/p}, p in (1, inf), where c is
/// the cell measure of the field's lattice (h physical, pi/L spectral).
double lp_norm(const Field& u, double p);

/// u(x - shift*h) with cyclic wraparound; exact permutation of the values.
Field cyclic_translate(const Field& u, const std::array<long, 3>& shift);

/// Least-squares line through (ln m, ln value).
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::vector<std::pair<double, double>> points;  // (log m, log value)
};

SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

// Binary field dump: magic "BLAB", u8 version=1, u8 n, u8 domain_tag,
// u64 N, f64 L, then N^n interleaved little-endian f64 (re, im), row-major.
void write_field(const Field& u, const std::string& path);
Field read_field(const std::string& path);

}  // namespace besselab
