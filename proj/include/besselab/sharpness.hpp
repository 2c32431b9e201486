#pragma once

#include "besselab/bessel.hpp"
#include "besselab/multiplier.hpp"

namespace besselab {

/// The sharpness witness: for admissible (n, s, t, eps) the kernel exponent
/// alpha = s + t + delta(eps) lands f_alpha inside the uniformly localized
/// space at integrability p1 - eps while staying outside M[s, -t].
struct CounterexampleSpec {
    MultiplierProblem problem;
    double epsilon;
    double delta;     // max(s,t)^2 / (2 (n/eps - max(s,t)))
    double alpha;     // s + t + delta
    double p1;        // n / max(s,t)
    double p_target;  // p1 - eps
    double t1;        // s + t + 2 delta - n/2
    double s1;        // s + t - n/2 (sufficiency-side auxiliary)
};

/// Critical integrability p1 = n / max(s,t).
double compute_p1(const MultiplierProblem& prob);

/// delta(eps) = max(s,t)^2 / (2 (n/eps - max(s,t))), for
/// 0 < eps < n/max(s,t) - 2; always lands in (0, n/2 - max(s,t)).
double delta_of_eps(const MultiplierProblem& prob, double eps);

CounterexampleSpec construct_counterexample(const MultiplierProblem& prob, double eps);

/// Member if alpha < s+t, NonMember if alpha > s+t, Boundary exactly at
/// alpha = s+t (neither inclusion is settled there).
MembershipVerdict classify_multiplier_membership(const MultiplierProblem& prob, double alpha);

struct CounterexampleReport {
    CounterexampleSpec spec;
    bool analytic_ok = false;
    std::vector<std::pair<std::size_t, double>> ladder;  // (N, unif H^{-t1}_2 norm)
    bool ladder_stable = false;
    GrowthExperiment growth;
    bool sharpness_witnessed = false;
};

/// Runs both sides of the witness: (a) the analytic membership chain for the
/// uniformly localized side, (b) the unif-norm refinement ladder, (c) the
/// growth-slope experiment at (s, t, alpha). Verdict holds iff all pass.
CounterexampleReport verify_counterexample(const CounterexampleSpec& spec,
                                           const std::vector<GridSpec>& grid_ladder,
                                           const std::vector<double>& m_values,
                                           int quad_points = 16);

}  // namespace besselab
