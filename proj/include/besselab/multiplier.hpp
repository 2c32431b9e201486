#pragma once

#include <cstdint>

#include "besselab/bessel.hpp"
#include "besselab/grid.hpp"

namespace besselab {

/// Parameters (n, s, t) of the multiplier space M[s, -t] between H^s_2 and
/// H^{-t}_2. Sharpness experiments additionally need 0 < max(s,t) < n/2.
struct MultiplierProblem {
    int n;
    double s;
    double t;
};

MultiplierProblem make_multiplier_problem(int n, double s, double t);

/// |<mu, g . conj(h)>| / (||g||_{H^s_2} ||h||_{H^t_2}), a lower bound for the
/// discrete multiplier norm for any choice of witnesses.
double bilinear_witness(const Field& mu, const Field& g, const Field& h,
                        const MultiplierProblem& prob);

/// B g = J_{-t}(mu . J_{-s} g), the conjugated multiplier operator on grid L_2.
Field apply_conjugated_multiplier(const Field& mu, const Field& g, const MultiplierProblem& prob);

/// Adjoint B* h = J_{-s}(conj(mu) . J_{-t} h); <Bg, h> = <g, B*h> exactly.
Field apply_conjugated_multiplier_adjoint(const Field& mu, const Field& h,
                                          const MultiplierProblem& prob);

struct OperatorNormEstimate {
    double sigma = 0.0;
    Field witness_g;
    int iterations = 0;
    std::vector<double> sigma_history;
};

/// Largest singular value of B by power iteration on B*B from a seeded random
/// start. The returned sigma is a lower bound for the discrete operator norm;
/// the Rayleigh sequence is nondecreasing within round-off.
OperatorNormEstimate estimate_operator_norm(const Field& mu, const MultiplierProblem& prob,
                                            int max_iters = 500, double tol = 1e-8,
                                            std::uint64_t seed = 1);

/// I(m) = C(n)^2 int_0^m int_0^m r1^{n-1} r2^{n-1} (1+r1^2+r2^2)^{-beta/2},
/// beta = n - alpha + s + t: the bi-radial reduction of the ball-product
/// integral whose growth in m drives the necessity threshold.
double growth_integral(const MultiplierProblem& prob, double alpha, double m, int quad_points);

struct GrowthExperiment {
    MultiplierProblem problem;
    double alpha;
    std::vector<double> m_values;
    std::vector<double> I_values;
    SlopeFit fit;
    /// slope > n witnesses the necessity mechanism (alpha > s+t).
    bool slope_exceeds_dimension = false;
};

GrowthExperiment growth_slope_experiment(const MultiplierProblem& prob, double alpha,
                                         const std::vector<double>& m_values,
                                         int quad_points = 16);

}  // namespace besselab
