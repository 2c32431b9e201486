#pragma once

#include "besselab/grid.hpp"

namespace besselab {

/// Gamma function on (0, 20] via a fixed Lanczos approximation,
/// |relative error| < 1e-13 on that range.
double gamma_fn(double x);

/// Exponent of the radial kernel f_alpha(x) = |x|^{-alpha}.
/// Tempered (defines a distribution) exactly when alpha < n.
struct RieszParam {
    double alpha;
    int n;
    bool tempered() const { return alpha < static_cast<double>(n); }
};

RieszParam make_riesz_param(double alpha, int n);

/// |x|^{-alpha} for x != 0, exactly 0 at x = 0.
double f_alpha_eval(const RieszParam& param, const Point& x);

struct IntegrabilityResult {
    bool on_unit_ball;   // alpha < n
    bool off_unit_ball;  // alpha > n
};

IntegrabilityResult integrability_check(const RieszParam& param);

/// Surface area of the unit (n-1)-sphere, 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

/// Constant in FT(f_alpha) = C(alpha,n) f_{n-alpha}, for the symmetric
/// transform convention: C = 2^{n/2-alpha} Gamma((n-alpha)/2) / Gamma(alpha/2).
double riesz_ft_constant(const RieszParam& param);

/// How the grid cell containing the singularity is averaged: split the cell
/// `samples_per_axis` ways per axis and recurse toward the singular point to
/// `subdivision_depth` levels; non-singular subcells get a tensor
/// Gauss-Legendre rule with `samples_per_axis` nodes per axis. Past the
/// depth limit a dyadic graded refinement continues toward the singularity
/// until the residual cell's mass is negligible.
struct SingularCellRule {
    int subdivision_depth = 3;
    int samples_per_axis = 4;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int npts, std::vector<double>& nodes, std::vector<double>& weights);

/// Average of f_alpha over the axis-aligned box [lo, hi] per the rule.
double f_alpha_cell_average(const RieszParam& param, const Point& lo, const Point& hi,
                            const SingularCellRule& rule);

/// Samples f_alpha(x_k + center_offset); the one cell containing the
/// singularity (if inside the grid) receives its cell average instead of the
/// point value, so every entry is finite. Requires the tempered regime.
Field sample_f_alpha(const RieszParam& param, const GridSpec& grid, const SingularCellRule& rule,
                     const Point& center_offset);

/// Independent oracle for dft(psi * f_alpha): evaluates
/// (2pi)^{-n/2} C(alpha,n) (F(psi) * f_{n-alpha})(x) by rectangle-rule
/// quadrature over the spectral lattice, with singular-cell averaging of the
/// kernel. psi_spectral must decay below 1e-8 relative at the lattice boundary.
std::vector<Complex> ft_oracle_convolution(const Field& psi_spectral, const RieszParam& param,
                                           const std::vector<Point>& eval_points);

}  // namespace besselab
