#include "besselab/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace besselab {

std::size_t GridSpec::size() const {
    std::size_t total = 1;
    for (int a = 0; a < n; ++a) total *= N;
    return total;
}

void GridSpec::unflatten(std::size_t flat, std::size_t (&idx)[3]) const {
    idx[0] = idx[1] = idx[2] = 0;
    for (int a = n - 1; a >= 0; --a) {
        idx[a] = flat % N;
        flat /= N;
    }
}

std::size_t GridSpec::flatten(const std::size_t (&idx)[3]) const {
    std::size_t flat = 0;
    for (int a = 0; a < n; ++a) flat = flat * N + idx[a];
    return flat;
}

Point GridSpec::point(std::size_t flat) const {
    std::size_t idx[3];
    unflatten(flat, idx);
    Point x{};
    for (int a = 0; a < n; ++a) x[a] = -L + static_cast<double>(idx[a]) * h;
    return x;
}

Point GridSpec::freq(std::size_t flat) const {
    std::size_t idx[3];
    unflatten(flat, idx);
    Point xi{};
    const double dxi = freq_step();
    const long half = static_cast<long>(N / 2);
    for (int a = 0; a < n; ++a) xi[a] = dxi * static_cast<double>(static_cast<long>(idx[a]) - half);
    return xi;
}

GridSpec make_grid(int n, double L, std::size_t N) {
    if (n < 1 || n > 3) throw std::invalid_argument("make_grid: dimension must be 1, 2 or 3");
    if (!(L > 0.0)) throw std::invalid_argument("make_grid: half-extent L must be positive");
    if (N < 8 || !std::has_single_bit(N))
        throw std::invalid_argument("make_grid: N must be a power of two >= 8");
    GridSpec g;
    g.n = n;
    g.L = L;
    g.N = N;
    g.h = 2.0 * L / static_cast<double>(N);
    return g;
}

Field sample_function(const std::function<Complex(const Point&)>& f, const GridSpec& grid) {
    Field u;
    u.grid = grid;
    u.domain = Domain::Physical;
    u.values.resize(grid.size());
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(grid.size());
    std::ptrdiff_t bad = -1;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < total; ++k) {
        const Complex v = f(grid.point(static_cast<std::size_t>(k)));
        u.values[static_cast<std::size_t>(k)] = v;
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
#pragma omp critical
            if (bad < 0 || k < bad) bad = k;
        }
    }
    if (bad >= 0) {
        const Point x = grid.point(static_cast<std::size_t>(bad));
        std::ostringstream msg;
        msg << "sample_function: non-finite value at x = (" << x[0];
        for (int a = 1; a < grid.n; ++a) msg << ", " << x[a];
        msg << ")";
        throw std::runtime_error(msg.str());
    }
    return u;
}

namespace {

template <class T, class F>
T pairwise_map_sum(std::size_t lo, std::size_t hi, const F& f) {
    if (hi - lo <= 16) {
        T acc{};
        for (std::size_t i = lo; i < hi; ++i) acc += f(i);
        return acc;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_map_sum<T>(lo, mid, f) + pairwise_map_sum<T>(mid, hi, f);
}

}  // namespace

double pairwise_sum(std::span<const double> v) {
    if (v.empty()) return 0.0;
    return pairwise_map_sum<double>(0, v.size(), [&](std::size_t i) { return v[i]; });
}

Complex pairwise_sum(std::span<const Complex> v) {
    if (v.empty()) return Complex{};
    return pairwise_map_sum<Complex>(0, v.size(), [&](std::size_t i) { return v[i]; });
}

double lp_norm(const Field& u, double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("lp_norm: p must lie in (1, inf)");
    const double sum = pairwise_map_sum<double>(
        0, u.values.size(), [&](std::size_t i) { return std::pow(std::abs(u.values[i]), p); });
    // cell measure of the lattice the samples live on; with this choice the
    // discrete Plancherel identity reads lp_norm(dft(u), 2) = lp_norm(u, 2)
    const double cell = u.domain == Domain::Spectral ? u.grid.freq_step() : u.grid.h;
    return std::pow(cell, static_cast<double>(u.grid.n) / p) * std::pow(sum, 1.0 / p);
}

Field cyclic_translate(const Field& u, const std::array<long, 3>& shift) {
    const GridSpec& g = u.grid;
    Field out;
    out.grid = g;
    out.domain = u.domain;
    out.values.resize(u.values.size());
    const long N = static_cast<long>(g.N);
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(u.values.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < total; ++k) {
        std::size_t idx[3];
        g.unflatten(static_cast<std::size_t>(k), idx);
        std::size_t src[3] = {0, 0, 0};
        for (int a = 0; a < g.n; ++a) {
            long j = (static_cast<long>(idx[a]) - shift[a]) % N;
            if (j < 0) j += N;
            src[a] = static_cast<std::size_t>(j);
        }
        out.values[static_cast<std::size_t>(k)] = u.values[g.flatten(src)];
    }
    return out;
}

SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("fit_loglog_slope: need at least 3 points");
    SlopeFit fit;
    fit.points.reserve(points.size());
    for (const auto& [m, v] : points) {
        if (!(m > 0.0) || !(v > 0.0))
            throw std::invalid_argument("fit_loglog_slope: points must be strictly positive");
        fit.points.emplace_back(std::log(m), std::log(v));
    }
    const double count = static_cast<double>(fit.points.size());
    double xbar = 0.0, ybar = 0.0;
    for (const auto& [x, y] : fit.points) {
        xbar += x;
        ybar += y;
    }
    xbar /= count;
    ybar /= count;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : fit.points) {
        sxx += (x - xbar) * (x - xbar);
        sxy += (x - xbar) * (y - ybar);
        syy += (y - ybar) * (y - ybar);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_loglog_slope: abscissae are all equal");
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    if (syy == 0.0) {
        fit.r2 = 1.0;
    } else {
        double ssres = 0.0;
        for (const auto& [x, y] : fit.points) {
            const double r = y - (fit.intercept + fit.slope * x);
            ssres += r * r;
        }
        fit.r2 = std::clamp(1.0 - ssres / syy, 0.0, 1.0);
    }
    return fit;
}

namespace {

void put_u64_le(std::ofstream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64_le(std::ifstream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void put_f64_le(std::ofstream& os, double x) {
    std::uint64_t v;
    std::memcpy(&v, &x, 8);
    put_u64_le(os, v);
}

double get_f64_le(std::ifstream& is) {
    const std::uint64_t v = get_u64_le(is);
    double x;
    std::memcpy(&x, &v, 8);
    return x;
}

}  // namespace

void write_field(const Field& u, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("write_field: cannot open " + path);
    os.write("BLAB", 4);
    const unsigned char header[3] = {1, static_cast<unsigned char>(u.grid.n),
                                     static_cast<unsigned char>(u.domain)};
    os.write(reinterpret_cast<const char*>(header), 3);
    put_u64_le(os, u.grid.N);
    put_f64_le(os, u.grid.L);
    for (const Complex& v : u.values) {
        put_f64_le(os, v.real());
        put_f64_le(os, v.imag());
    }
    if (!os) throw std::runtime_error("write_field: I/O error writing " + path);
}

Field read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_field: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "BLAB", 4) != 0)
        throw std::runtime_error("read_field: bad magic in " + path);
    unsigned char header[3];
    is.read(reinterpret_cast<char*>(header), 3);
    if (header[0] != 1) throw std::runtime_error("read_field: unsupported version");
    const int n = header[1];
    const Domain domain = header[2] == 0 ? Domain::Physical : Domain::Spectral;
    const std::uint64_t N = get_u64_le(is);
    const double L = get_f64_le(is);
    Field u;
    u.grid = make_grid(n, L, static_cast<std::size_t>(N));
    u.domain = domain;
    u.values.resize(u.grid.size());
    for (Complex& v : u.values) {
        const double re = get_f64_le(is);
        const double im = get_f64_le(is);
        v = Complex(re, im);
    }
    if (!is) throw std::runtime_error("read_field: truncated file " + path);
    return u;
}

}  // namespace besselab
