#pragma once

#include <optional>
#include <string>

#include "besselab/grid.hpp"
#include "besselab/riesz.hpp"

namespace besselab {

/// (smoothness gamma, integrability p) naming the space H^gamma_p.
struct SpaceIndex {
    double gamma;
    double p;
};

SpaceIndex make_space_index(double gamma, double p);

/// phi_gamma(xi) = (1 + |xi|^2)^{gamma/2}.
double phi_weight(double gamma, const Point& xi);

struct BesselApplyResult {
    Field field;
    /// Set when the weighted spectrum's boundary shells carry more than
    /// 1e-6 of the weighted energy, i.e. the grid is too coarse for gamma.
    bool aliasing_warning = false;
};

/// J_gamma(u) = idft(phi_gamma . dft(u)).
BesselApplyResult apply_bessel(const Field& u, double gamma);

struct HsNormResult {
    double value = 0.0;
    bool aliasing_warning = false;
};

/// ||u||_{H^gamma_p} = lp_norm(J_gamma u, p).
HsNormResult hs_norm(const Field& u, const SpaceIndex& idx);

/// Radial cutoff: 1 on |x| <= 1, 0 on |x| >= 2, smooth mollifier transition
/// q(r) = sigma(2-r) / (sigma(2-r) + sigma(r-1)), sigma(u) = exp(-1/u) for u>0.
double bump_eta(const Point& x);

/// eta((x - z)/m) sampled on the grid.
Field sample_bump(const GridSpec& grid, double m, const Point& z);

struct UnifSweepEntry {
    Point z;
    double norm;
};

struct UnifSweepResult {
    double sup = 0.0;
    Point argmax_z{};
    std::vector<UnifSweepEntry> table;
    bool aliasing_warning = false;
};

/// Approximates sup_z ||eta . u(.+z)||_{H^gamma_p} over a radius x direction
/// sweep. The cutoff stays at the origin and the field is recentered, so one
/// grid geometry serves every shift. A lower bound for the true sup.
UnifSweepResult unif_norm_sweep(const std::function<Field(const Point&)>& u_sampler,
                                const SpaceIndex& idx, const GridSpec& grid,
                                const std::vector<double>& radii, int directions_per_radius);

/// Shift points z = r * direction for the sweep (r = 0 emitted once).
std::vector<Point> sweep_points(int n, const std::vector<double>& radii, int directions_per_radius);

struct DecayRatioEntry {
    Point z;
    double sup_ratio;
};

/// R(z) = max_xi |dft(eta . f_alpha(.+z))(xi)| * (1+|xi|^2)^{(n-alpha)/2}.
/// Uniform boundedness of R over z is the decay estimate checked empirically.
std::vector<DecayRatioEntry> decay_ratio_sweep(const RieszParam& param,
                                               const std::vector<Point>& z_list,
                                               const GridSpec& grid);

enum class Verdict { Member, NonMember, Boundary };

std::string to_string(Verdict v);

struct MembershipVerdict {
    Verdict verdict;
    std::string rationale;
    std::optional<SlopeFit> numeric_evidence;
};

struct MembershipNumerics {
    double L = 8.0;
    std::size_t N0 = 1024;  // ladder runs N0, 2*N0, 4*N0
};

/// Member iff alpha < min(n, t + n/2); Boundary exactly on the threshold.
/// With analytic_only = false, attaches unif H^{-t}_2 norms of f_alpha across
/// a three-step refinement ladder and their log-log slope in N.
MembershipVerdict classify_unif_membership(const RieszParam& param, double t, bool analytic_only,
                                           const MembershipNumerics& numerics = {});

}  // namespace besselab
