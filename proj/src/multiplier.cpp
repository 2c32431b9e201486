#include "besselab/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "besselab/fft.hpp"

namespace besselab {

MultiplierProblem make_multiplier_problem(int n, double s, double t) {
    if (n < 1 || n > 3) throw std::invalid_argument("multiplier: dimension must be 1, 2 or 3");
    if (!(s >= 0.0) || !(t >= 0.0))
        throw std::invalid_argument("multiplier: s and t must be nonnegative");
    return MultiplierProblem{n, s, t};
}

namespace {

void check_same_grid(const Field& a, const Field& b, const char* what) {
    if (!(a.grid == b.grid)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

// grid inner product h^n sum conj(a_k) b_k, deterministic order
Complex grid_dot(const Field& a, const Field& b) {
    std::vector<Complex> terms(a.values.size());
    for (std::size_t k = 0; k < terms.size(); ++k)
        terms[k] = std::conj(a.values[k]) * b.values[k];
    return std::pow(a.grid.h, a.grid.n) * pairwise_sum(std::span<const Complex>(terms));
}

double grid_norm(const Field& a) { return std::sqrt(std::abs(grid_dot(a, a).real())); }

Field multiply_pointwise(const Field& mu, const Field& g, bool conjugate_mu) {
    Field out = g;
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(out.values.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < total; ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        out.values[i] *= conjugate_mu ? std::conj(mu.values[i]) : mu.values[i];
    }
    return out;
}

Field apply_j(const Field& u, double gamma) { return apply_bessel(u, gamma).field; }

}  // namespace

double bilinear_witness(const Field& mu, const Field& g, const Field& h,
                        const MultiplierProblem& prob) {
    check_same_grid(mu, g, "bilinear_witness");
    check_same_grid(mu, h, "bilinear_witness");
    std::vector<Complex> terms(mu.values.size());
    for (std::size_t k = 0; k < terms.size(); ++k)
        terms[k] = mu.values[k] * g.values[k] * std::conj(h.values[k]);
    const double pairing =
        std::abs(std::pow(mu.grid.h, mu.grid.n) * pairwise_sum(std::span<const Complex>(terms)));
    const double ng = hs_norm(g, make_space_index(prob.s, 2.0)).value;
    const double nh = hs_norm(h, make_space_index(prob.t, 2.0)).value;
    if (ng == 0.0 || nh == 0.0)
        throw std::invalid_argument("bilinear_witness: witness has zero norm");
    return pairing / (ng * nh);
}

Field apply_conjugated_multiplier(const Field& mu, const Field& g, const MultiplierProblem& prob) {
    check_same_grid(mu, g, "apply_conjugated_multiplier");
    return apply_j(multiply_pointwise(mu, apply_j(g, -prob.s), false), -prob.t);
}

Field apply_conjugated_multiplier_adjoint(const Field& mu, const Field& h,
                                          const MultiplierProblem& prob) {
    check_same_grid(mu, h, "apply_conjugated_multiplier_adjoint");
    return apply_j(multiply_pointwise(mu, apply_j(h, -prob.t), true), -prob.s);
}

OperatorNormEstimate estimate_operator_norm(const Field& mu, const MultiplierProblem& prob,
                                            int max_iters, double tol, std::uint64_t seed) {
    if (max_iters < 1) throw std::invalid_argument("estimate_operator_norm: max_iters >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("estimate_operator_norm: tol must be positive");
    for (const Complex& v : mu.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::runtime_error("estimate_operator_norm: multiplier has non-finite entries");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Field v = mu;
    for (Complex& c : v.values) c = Complex(gauss(rng), gauss(rng));
    double norm = grid_norm(v);
    for (Complex& c : v.values) c /= norm;

    OperatorNormEstimate est;
    double sigma_prev = 0.0;
    for (int iter = 1; iter <= max_iters; ++iter) {
        const Field w = apply_conjugated_multiplier(mu, v, prob);
        const double sigma = grid_norm(w);  // ||B v|| with ||v|| = 1
        if (!std::isfinite(sigma))
            throw std::runtime_error("estimate_operator_norm: iteration produced non-finite values");
        est.sigma = sigma;
        est.iterations = iter;
        est.sigma_history.push_back(sigma);
        if (iter > 1 && std::abs(sigma - sigma_prev) <= tol * std::max(sigma, 1e-300)) break;
        sigma_prev = sigma;
        Field u = apply_conjugated_multiplier_adjoint(mu, w, prob);
        const double unorm = grid_norm(u);
        if (unorm == 0.0) break;  // landed in the kernel of B*B
        for (Complex& c : u.values) c /= unorm;
        v = std::move(u);
    }
    est.witness_g = std::move(v);
    return est;
}

double growth_integral(const MultiplierProblem& prob, double alpha, double m, int quad_points) {
    const double n = static_cast<double>(prob.n);
    if (!(m > 0.0)) throw std::invalid_argument("growth_integral: m must be positive");
    if (!(std::max(prob.s, prob.t) < 0.5 * n))
        throw std::invalid_argument("growth_integral: requires max(s,t) < n/2");
    if (!(alpha > 0.0) || !(alpha < n))
        throw std::invalid_argument("growth_integral: requires 0 < alpha < n");
    if (quad_points < 2) throw std::invalid_argument("growth_integral: need >= 2 quad points");

    const double beta = n - alpha + prob.s + prob.t;
    std::vector<double> nodes, weights;
    gauss_legendre(quad_points, nodes, weights);

    // composite rule: panels of roughly unit length along each radial axis
    const int panels = std::clamp(static_cast<int>(std::ceil(m)), 4, 64);
    const double panel_len = m / static_cast<double>(panels);
    const std::size_t per_axis = static_cast<std::size_t>(panels) * quad_points;
    std::vector<double> r(per_axis), w(per_axis);
    for (int p = 0; p < panels; ++p) {
        const double lo = panel_len * p;
        for (int q = 0; q < quad_points; ++q) {
            const std::size_t i = static_cast<std::size_t>(p) * quad_points + q;
            r[i] = lo + 0.5 * panel_len * (1.0 + nodes[q]);
            w[i] = 0.5 * panel_len * weights[q];
        }
    }

    std::vector<double> terms(per_axis * per_axis);
    const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(per_axis);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        const double ri = r[static_cast<std::size_t>(i)];
        const double wi = w[static_cast<std::size_t>(i)] * std::pow(ri, n - 1.0);
        for (std::size_t j = 0; j < per_axis; ++j) {
            const double rj = r[j];
            terms[static_cast<std::size_t>(i) * per_axis + j] =
                wi * w[j] * std::pow(rj, n - 1.0) *
                std::pow(1.0 + ri * ri + rj * rj, -0.5 * beta);
        }
    }
    const double cn = sphere_area(prob.n);
    return cn * cn * pairwise_sum(std::span<const double>(terms));
}

GrowthExperiment growth_slope_experiment(const MultiplierProblem& prob, double alpha,
                                         const std::vector<double>& m_values, int quad_points) {
    if (m_values.size() < 4)
        throw std::invalid_argument("growth_slope_experiment: need at least 4 values of m");
    for (std::size_t i = 1; i < m_values.size(); ++i)
        if (!(m_values[i] > m_values[i - 1]))
            throw std::invalid_argument("growth_slope_experiment: m values must be increasing");

    GrowthExperiment exp;
    exp.problem = prob;
    exp.alpha = alpha;
    exp.m_values = m_values;
    exp.I_values.resize(m_values.size());
    for (std::size_t i = 0; i < m_values.size(); ++i)
        exp.I_values[i] = growth_integral(prob, alpha, m_values[i], quad_points);

    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 0; i < m_values.size(); ++i)
        points.emplace_back(m_values[i], exp.I_values[i]);
    exp.fit = fit_loglog_slope(points);
    exp.slope_exceeds_dimension = exp.fit.slope > static_cast<double>(prob.n);
    return exp;
}

}  // namespace besselab
