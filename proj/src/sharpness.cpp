#include "besselab/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace besselab {

namespace {

void require_sharpness_regime(const MultiplierProblem& prob) {
    const double smax = std::max(prob.s, prob.t);
    if (!(smax > 0.0) || !(smax < 0.5 * static_cast<double>(prob.n)))
        throw std::invalid_argument("sharpness: requires 0 < max(s,t) < n/2");
}

}  // namespace

double compute_p1(const MultiplierProblem& prob) {
    const double smax = std::max(prob.s, prob.t);
    if (!(smax > 0.0)) throw std::invalid_argument("compute_p1: requires max(s,t) > 0");
    return static_cast<double>(prob.n) / smax;
}

double delta_of_eps(const MultiplierProblem& prob, double eps) {
    require_sharpness_regime(prob);
    const double n = static_cast<double>(prob.n);
    const double smax = std::max(prob.s, prob.t);
    if (!(eps > 0.0) || !(eps < n / smax - 2.0))
        throw std::invalid_argument("delta_of_eps: eps must lie in (0, n/max(s,t) - 2)");
    return smax * smax / (2.0 * (n / eps - smax));
}

CounterexampleSpec construct_counterexample(const MultiplierProblem& prob, double eps) {
    require_sharpness_regime(prob);
    const double n = static_cast<double>(prob.n);
    const double smax = std::max(prob.s, prob.t);

    CounterexampleSpec spec;
    spec.problem = prob;
    spec.epsilon = eps;
    spec.delta = delta_of_eps(prob, eps);
    spec.alpha = prob.s + prob.t + spec.delta;
    spec.p1 = compute_p1(prob);
    spec.p_target = spec.p1 - eps;
    spec.t1 = prob.s + prob.t + 2.0 * spec.delta - 0.5 * n;
    spec.s1 = prob.s + prob.t - 0.5 * n;

    // each inequality below is part of the witness construction; a failure
    // would mean the formulas were applied outside their regime
    if (!(spec.delta > 0.0) || !(spec.delta < 0.5 * n - smax))
        throw std::logic_error("construct_counterexample: delta out of (0, n/2 - max(s,t))");
    if (!(spec.alpha < n)) throw std::logic_error("construct_counterexample: alpha >= n");
    if (!(spec.t1 > -0.5 * n)) throw std::logic_error("construct_counterexample: t1 <= -n/2");
    if (!(spec.alpha < spec.t1 + 0.5 * n))
        throw std::logic_error("construct_counterexample: alpha >= t1 + n/2");
    if (!(spec.p_target > 2.0)) throw std::logic_error("construct_counterexample: p1 - eps <= 2");
    return spec;
}

MembershipVerdict classify_multiplier_membership(const MultiplierProblem& prob, double alpha) {
    const double n = static_cast<double>(prob.n);
    if (!(alpha > 0.0) || !(alpha < n))
        throw std::invalid_argument("classify_multiplier_membership: requires 0 < alpha < n");
    if (!(std::max(prob.s, prob.t) < 0.5 * n))
        throw std::invalid_argument("classify_multiplier_membership: requires max(s,t) < n/2");
    const double threshold = prob.s + prob.t;
    MembershipVerdict verdict;
    std::ostringstream rationale;
    if (alpha == threshold) {
        verdict.verdict = Verdict::Boundary;
        rationale << "alpha = s + t = " << threshold << "; neither inclusion is settled there";
    } else if (alpha < threshold) {
        verdict.verdict = Verdict::Member;
        rationale << "alpha = " << alpha << " < s + t = " << threshold;
    } else {
        verdict.verdict = Verdict::NonMember;
        rationale << "alpha = " << alpha << " > s + t = " << threshold;
    }
    verdict.rationale = rationale.str();
    return verdict;
}

CounterexampleReport verify_counterexample(const CounterexampleSpec& spec,
                                           const std::vector<GridSpec>& grid_ladder,
                                           const std::vector<double>& m_values,
                                           int quad_points) {
    if (grid_ladder.size() < 2)
        throw std::invalid_argument("verify_counterexample: need at least 2 ladder grids");
    const MultiplierProblem& prob = spec.problem;
    const double n = static_cast<double>(prob.n);
    const double smax = std::max(prob.s, prob.t);
    const double smin = std::min(prob.s, prob.t);

    CounterexampleReport report;
    report.spec = spec;

    // (a) the analytic membership chain: f_alpha lands in the uniformly
    // localized space at -t1, and the exponent bookkeeping identity places
    // that space inside the target at integrability p1 - eps
    const double identity_lhs = -spec.t1 - 0.5 * n;
    const double identity_rhs = -smin - n / (n / smax - spec.epsilon);
    report.analytic_ok = spec.alpha < n && spec.alpha < spec.t1 + 0.5 * n &&
                         spec.t1 > -0.5 * n && spec.p_target > 2.0 &&
                         std::abs(identity_lhs - identity_rhs) <= 1e-12;

    // (b) unif H^{-t1}_2 norms of eta * f_alpha across the refinement ladder
    const RieszParam param = make_riesz_param(spec.alpha, prob.n);
    const SingularCellRule rule;
    const SpaceIndex idx = make_space_index(-spec.t1, 2.0);
    for (const GridSpec& grid : grid_ladder) {
        Field w = sample_f_alpha(param, grid, rule, Point{});
        const Field eta = sample_function(
            [](const Point& x) { return Complex(bump_eta(x), 0.0); }, grid);
        for (std::size_t k = 0; k < w.values.size(); ++k) w.values[k] *= eta.values[k];
        report.ladder.emplace_back(grid.N, hs_norm(w, idx).value);
    }
    // Below the threshold the discrete norm approaches its finite limit like
    // N^{-2 delta}; for small delta no desk-scale ladder lands inside a 5%
    // window, but the squared-norm increments still contract (factor
    // 2^{-2 delta} < 1) while a divergent ladder's increments expand.
    const double last = report.ladder.back().second;
    const double prev = report.ladder[report.ladder.size() - 2].second;
    bool stable = last > 0.0 && std::abs(last - prev) / last < 0.05;
    if (!stable && report.ladder.size() >= 3) {
        const double prev2 = report.ladder[report.ladder.size() - 3].second;
        const double d1 = prev * prev - prev2 * prev2;
        const double d2 = last * last - prev * prev;
        stable = d1 > 0.0 && d2 > 0.0 && d2 < d1;
    }
    report.ladder_stable = stable;

    // (c) the growth slope must exceed n, witnessing non-membership
    report.growth = growth_slope_experiment(prob, spec.alpha, m_values, quad_points);

    report.sharpness_witnessed =
        report.analytic_ok && report.ladder_stable && report.growth.slope_exceeds_dimension;
    return report;
}

}  // namespace besselab
