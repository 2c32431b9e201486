#include "besselab/riesz.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace besselab {

double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("gamma_fn: requires x > 0");
    // Lanczos, g = 7, 9 terms.
    static constexpr double coeff[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,       -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // reflection keeps the small-argument range accurate
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    const double z = x - 1.0;
    double a = coeff[0];
    for (int i = 1; i < 9; ++i) a += coeff[i] / (z + static_cast<double>(i));
    const double t = z + 7.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

RieszParam make_riesz_param(double alpha, int n) {
    if (!(alpha > 0.0)) throw std::invalid_argument("riesz: alpha must be positive");
    if (n < 1 || n > 3) throw std::invalid_argument("riesz: dimension must be 1, 2 or 3");
    return RieszParam{alpha, n};
}

double f_alpha_eval(const RieszParam& param, const Point& x) {
    double r2 = 0.0;
    for (int a = 0; a < param.n; ++a) r2 += x[a] * x[a];
    if (r2 == 0.0) return 0.0;
    return std::pow(r2, -0.5 * param.alpha);
}

IntegrabilityResult integrability_check(const RieszParam& param) {
    const double n = static_cast<double>(param.n);
    return IntegrabilityResult{param.alpha < n, param.alpha > n};
}

double sphere_area(int n) {
    if (n < 1) throw std::invalid_argument("sphere_area: n must be >= 1");
    const double half = 0.5 * static_cast<double>(n);
    return 2.0 * std::pow(std::numbers::pi, half) / gamma_fn(half);
}

double riesz_ft_constant(const RieszParam& param) {
    const double n = static_cast<double>(param.n);
    if (!(param.alpha > 0.0) || !(param.alpha < n))
        throw std::invalid_argument("riesz_ft_constant: alpha must lie in (0, n)");
    return std::pow(2.0, 0.5 * n - param.alpha) * gamma_fn(0.5 * (n - param.alpha)) /
           gamma_fn(0.5 * param.alpha);
}

namespace {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

// Legendre roots by Newton iteration; rules are cached per point count.
const GaussRule& gauss_rule(int npts) {
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(npts);
    if (it != cache.end()) return it->second;
    GaussRule rule;
    rule.nodes.resize(npts);
    rule.weights.resize(npts);
    for (int i = 0; i < npts; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(npts) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= npts; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = npts * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(npts, std::move(rule)).first->second;
}

}  // namespace

void gauss_legendre(int npts, std::vector<double>& nodes, std::vector<double>& weights) {
    if (npts < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    const GaussRule& rule = gauss_rule(npts);
    nodes = rule.nodes;
    weights = rule.weights;
}

namespace {

bool box_touches_origin(int n, const Point& lo, const Point& hi) {
    for (int a = 0; a < n; ++a)
        if (lo[a] > 0.0 || hi[a] < 0.0) return false;
    return true;
}

double gauss_box_integral(const RieszParam& param, const Point& lo, const Point& hi, int npts) {
    const GaussRule& rule = gauss_rule(npts);
    const int n = param.n;
    double total = 0.0;
    int idx[3] = {0, 0, 0};
    const int count = [&] {
        int c = 1;
        for (int a = 0; a < n; ++a) c *= npts;
        return c;
    }();
    for (int flat = 0; flat < count; ++flat) {
        int rem = flat;
        for (int a = n - 1; a >= 0; --a) {
            idx[a] = rem % npts;
            rem /= npts;
        }
        Point x{};
        double w = 1.0;
        for (int a = 0; a < n; ++a) {
            const double half = 0.5 * (hi[a] - lo[a]);
            x[a] = 0.5 * (lo[a] + hi[a]) + half * rule.nodes[idx[a]];
            w *= half * rule.weights[idx[a]];
        }
        total += w * f_alpha_eval(param, x);
    }
    return total;
}

constexpr int kGradedLevels = 48;

// Integral of f_alpha over [lo, hi]. Boxes away from the singularity get a
// tensor Gauss rule; boxes touching it are subdivided, first `depth` levels
// with the rule's split factor, then dyadically until the residual cell
// carries negligible mass (alpha < n makes it integrable).
double singular_box_integral(const RieszParam& param, const Point& lo, const Point& hi, int depth,
                             const SingularCellRule& rule) {
    if (!box_touches_origin(param.n, lo, hi))
        return gauss_box_integral(param, lo, hi, rule.samples_per_axis);
    if (depth <= -kGradedLevels) return 0.0;
    const int split = depth > 0 ? rule.samples_per_axis : 2;
    const int n = param.n;
    int children = 1;
    for (int a = 0; a < n; ++a) children *= split;
    double total = 0.0;
    for (int child = 0; child < children; ++child) {
        int rem = child;
        Point clo = lo, chi = hi;
        for (int a = n - 1; a >= 0; --a) {
            const int i = rem % split;
            rem /= split;
            const double step = (hi[a] - lo[a]) / static_cast<double>(split);
            clo[a] = lo[a] + step * static_cast<double>(i);
            chi[a] = lo[a] + step * static_cast<double>(i + 1);
        }
        total += singular_box_integral(param, clo, chi, depth - 1, rule);
    }
    return total;
}

}  // namespace

double f_alpha_cell_average(const RieszParam& param, const Point& lo, const Point& hi,
                            const SingularCellRule& rule) {
    if (rule.subdivision_depth < 1 || rule.samples_per_axis < 2)
        throw std::invalid_argument("f_alpha_cell_average: invalid singular-cell rule");
    double volume = 1.0;
    for (int a = 0; a < param.n; ++a) volume *= hi[a] - lo[a];
    return singular_box_integral(param, lo, hi, rule.subdivision_depth, rule) / volume;
}

Field sample_f_alpha(const RieszParam& param, const GridSpec& grid, const SingularCellRule& rule,
                     const Point& center_offset) {
    if (param.n != grid.n) throw std::invalid_argument("sample_f_alpha: dimension mismatch");
    if (!param.tempered())
        throw std::invalid_argument("sample_f_alpha: alpha >= n is not tempered");
    if (!(param.alpha > 0.0)) throw std::invalid_argument("sample_f_alpha: alpha must be positive");

    Field u;
    u.grid = grid;
    u.domain = Domain::Physical;
    u.values.resize(grid.size());
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < total; ++k) {
        Point x = grid.point(static_cast<std::size_t>(k));
        for (int a = 0; a < grid.n; ++a) x[a] += center_offset[a];
        u.values[static_cast<std::size_t>(k)] = f_alpha_eval(param, x);
    }

    // Cell [x_k - h/2, x_k + h/2)^n containing the singular point x = -offset.
    std::size_t sing[3] = {0, 0, 0};
    bool inside = true;
    for (int a = 0; a < grid.n; ++a) {
        const double pos = (-center_offset[a] + grid.L) / grid.h + 0.5;
        const double cell = std::floor(pos);
        if (cell < 0.0 || cell >= static_cast<double>(grid.N)) {
            inside = false;
            break;
        }
        sing[a] = static_cast<std::size_t>(cell);
    }
    if (inside) {
        const std::size_t flat = grid.flatten(sing);
        const Point xc = grid.point(flat);
        Point lo{}, hi{};
        for (int a = 0; a < grid.n; ++a) {
            const double c = xc[a] + center_offset[a];
            lo[a] = c - 0.5 * grid.h;
            hi[a] = c + 0.5 * grid.h;
        }
        u.values[flat] = f_alpha_cell_average(param, lo, hi, rule);
    }
    return u;
}

std::vector<Complex> ft_oracle_convolution(const Field& psi_spectral, const RieszParam& param,
                                           const std::vector<Point>& eval_points) {
    const GridSpec& g = psi_spectral.grid;
    if (psi_spectral.domain != Domain::Spectral)
        throw std::invalid_argument("ft_oracle_convolution: psi must be spectral");
    if (param.n != g.n) throw std::invalid_argument("ft_oracle_convolution: dimension mismatch");
    const double n = static_cast<double>(param.n);
    if (!(param.alpha > 0.0) || !(param.alpha < n))
        throw std::invalid_argument("ft_oracle_convolution: alpha must lie in (0, n)");

    // The rectangle rule over the lattice only sees the spectrum inside the
    // frequency box; require the spectrum to have died out at its boundary.
    double max_all = 0.0, max_boundary = 0.0;
    for (std::size_t k = 0; k < psi_spectral.values.size(); ++k) {
        const double mag = std::abs(psi_spectral.values[k]);
        max_all = std::max(max_all, mag);
        std::size_t idx[3];
        g.unflatten(k, idx);
        for (int a = 0; a < g.n; ++a) {
            if (idx[a] == 0 || idx[a] == g.N - 1) {
                max_boundary = std::max(max_boundary, mag);
                break;
            }
        }
    }
    if (max_all > 0.0 && max_boundary > 1e-8 * max_all)
        throw std::runtime_error(
            "ft_oracle_convolution: spectrum has not decayed at the frequency boundary; "
            "increase L or N");

    const RieszParam kernel = make_riesz_param(n - param.alpha, param.n);
    const SingularCellRule rule;
    const double dxi = g.freq_step();
    const double scale = std::pow(dxi, g.n) *
                         std::pow(2.0 * std::numbers::pi, -0.5 * n) * riesz_ft_constant(param);
    const std::size_t lattice = g.size();

    std::vector<Complex> out(eval_points.size());
    const std::ptrdiff_t npts = static_cast<std::ptrdiff_t>(eval_points.size());
#pragma omp parallel
    {
        std::vector<Complex> terms(lattice);
#pragma omp for schedule(static)
        for (std::ptrdiff_t p = 0; p < npts; ++p) {
            const Point& x = eval_points[static_cast<std::size_t>(p)];
            for (std::size_t j = 0; j < lattice; ++j) {
                const Point xi = g.freq(j);
                Point d{};
                bool singular_cell = true;
                for (int a = 0; a < g.n; ++a) {
                    d[a] = x[a] - xi[a];
                    if (std::abs(d[a]) > 0.5 * dxi) singular_cell = false;
                }
                double kval;
                if (singular_cell) {
                    Point lo{}, hi{};
                    for (int a = 0; a < g.n; ++a) {
                        lo[a] = d[a] - 0.5 * dxi;
                        hi[a] = d[a] + 0.5 * dxi;
                    }
                    kval = f_alpha_cell_average(kernel, lo, hi, rule);
                } else {
                    kval = f_alpha_eval(kernel, d);
                }
                terms[j] = psi_spectral.values[j] * kval;
            }
            out[static_cast<std::size_t>(p)] = scale * pairwise_sum(std::span<const Complex>(terms));
        }
    }
    return out;
}

}  // namespace besselab
