#include "besselab/bessel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "besselab/fft.hpp"

namespace besselab {

SpaceIndex make_space_index(double gamma, double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::invalid_argument("space index: p must lie in (1, inf)");
    if (!std::isfinite(gamma)) throw std::invalid_argument("space index: gamma must be finite");
    return SpaceIndex{gamma, p};
}

double phi_weight(double gamma, const Point& xi) {
    double r2 = 0.0;
    for (double c : xi) r2 += c * c;
    return std::pow(1.0 + r2, 0.5 * gamma);
}

BesselApplyResult apply_bessel(const Field& u, double gamma) {
    const GridSpec& g = u.grid;
    Field v = dft(u);
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(v.values.size());
    std::vector<double> energy(v.values.size());
    std::vector<double> boundary_energy(v.values.size(), 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < total; ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        v.values[i] *= phi_weight(gamma, g.freq(i));
        const double e = std::norm(v.values[i]);
        energy[i] = e;
        std::size_t idx[3];
        g.unflatten(i, idx);
        for (int a = 0; a < g.n; ++a) {
            if (idx[a] == 0 || idx[a] == g.N - 1) {
                boundary_energy[i] = e;
                break;
            }
        }
    }
    const double total_energy = pairwise_sum(std::span<const double>(energy));
    const double shell_energy = pairwise_sum(std::span<const double>(boundary_energy));
    BesselApplyResult out;
    out.aliasing_warning = total_energy > 0.0 && shell_energy > 1e-6 * total_energy;
    out.field = idft(v);
    return out;
}

HsNormResult hs_norm(const Field& u, const SpaceIndex& idx) {
    BesselApplyResult j = apply_bessel(u, idx.gamma);
    return HsNormResult{lp_norm(j.field, idx.p), j.aliasing_warning};
}

namespace {

double mollifier_sigma(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

}  // namespace

double bump_eta(const Point& x) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double a = mollifier_sigma(2.0 - r);
    const double b = mollifier_sigma(r - 1.0);
    return a / (a + b);
}

Field sample_bump(const GridSpec& grid, double m, const Point& z) {
    if (!(m > 0.0)) throw std::invalid_argument("sample_bump: scale m must be positive");
    return sample_function(
        [&](const Point& x) {
            Point y{};
            for (int a = 0; a < grid.n; ++a) y[a] = (x[a] - z[a]) / m;
            return Complex(bump_eta(y), 0.0);
        },
        grid);
}

std::vector<Point> sweep_points(int n, const std::vector<double>& radii, int directions_per_radius) {
    std::vector<Point> dirs;
    if (n == 1) {
        dirs.push_back(Point{1.0, 0.0, 0.0});
        dirs.push_back(Point{-1.0, 0.0, 0.0});
    } else if (n == 2) {
        const int count = std::max(1, directions_per_radius);
        for (int i = 0; i < count; ++i) {
            const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) / count;
            dirs.push_back(Point{std::cos(phi), std::sin(phi), 0.0});
        }
    } else {
        // the 26 nonzero sign patterns of {-1,0,1}^3, normalized
        for (int i = -1; i <= 1; ++i)
            for (int j = -1; j <= 1; ++j)
                for (int k = -1; k <= 1; ++k) {
                    if (i == 0 && j == 0 && k == 0) continue;
                    const double norm = std::sqrt(static_cast<double>(i * i + j * j + k * k));
                    dirs.push_back(Point{i / norm, j / norm, k / norm});
                }
    }
    std::vector<Point> points;
    bool origin_done = false;
    for (double r : radii) {
        if (r == 0.0) {
            if (!origin_done) {
                points.push_back(Point{});
                origin_done = true;
            }
            continue;
        }
        for (const Point& d : dirs)
            points.push_back(Point{r * d[0], r * d[1], r * d[2]});
    }
    return points;
}

UnifSweepResult unif_norm_sweep(const std::function<Field(const Point&)>& u_sampler,
                                const SpaceIndex& idx, const GridSpec& grid,
                                const std::vector<double>& radii, int directions_per_radius) {
    // the cutoff's support |x| <= 2 must sit inside the window with room
    if (grid.L < 4.0)
        throw std::invalid_argument("unif_norm_sweep: grid too small for the cutoff support (L >= 4)");
    const std::vector<Point> zs = sweep_points(grid.n, radii, directions_per_radius);
    if (zs.empty()) throw std::invalid_argument("unif_norm_sweep: empty sweep");
    const Field eta = sample_function(
        [](const Point& x) { return Complex(bump_eta(x), 0.0); }, grid);

    UnifSweepResult result;
    result.table.resize(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        Field w = u_sampler(zs[i]);
        if (w.grid.N != grid.N || w.grid.n != grid.n)
            throw std::invalid_argument("unif_norm_sweep: sampler returned mismatched grid");
        for (std::size_t k = 0; k < w.values.size(); ++k) w.values[k] *= eta.values[k];
        const HsNormResult norm = hs_norm(w, idx);
        result.table[i] = UnifSweepEntry{zs[i], norm.value};
        result.aliasing_warning = result.aliasing_warning || norm.aliasing_warning;
    }
    result.sup = result.table.front().norm;
    result.argmax_z = result.table.front().z;
    for (const auto& entry : result.table) {
        if (entry.norm > result.sup) {
            result.sup = entry.norm;
            result.argmax_z = entry.z;
        }
    }
    return result;
}

std::vector<DecayRatioEntry> decay_ratio_sweep(const RieszParam& param,
                                               const std::vector<Point>& z_list,
                                               const GridSpec& grid) {
    if (!(param.alpha > 0.0) || !param.tempered())
        throw std::invalid_argument("decay_ratio_sweep: requires 0 < alpha < n");
    const Field eta = sample_function(
        [](const Point& x) { return Complex(bump_eta(x), 0.0); }, grid);
    const SingularCellRule rule;
    const double weight_exp = 0.5 * (static_cast<double>(param.n) - param.alpha);

    std::vector<DecayRatioEntry> out(z_list.size());
    for (std::size_t i = 0; i < z_list.size(); ++i) {
        Field w = sample_f_alpha(param, grid, rule, z_list[i]);
        for (std::size_t k = 0; k < w.values.size(); ++k) w.values[k] *= eta.values[k];
        const Field spec = dft(w);
        double sup = 0.0;
        for (std::size_t k = 0; k < spec.values.size(); ++k) {
            const Point xi = grid.freq(k);
            double r2 = 0.0;
            for (int a = 0; a < grid.n; ++a) r2 += xi[a] * xi[a];
            sup = std::max(sup, std::abs(spec.values[k]) * std::pow(1.0 + r2, weight_exp));
        }
        out[i] = DecayRatioEntry{z_list[i], sup};
    }
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Member: return "Member";
        case Verdict::NonMember: return "NonMember";
        default: return "Boundary";
    }
}

MembershipVerdict classify_unif_membership(const RieszParam& param, double t, bool analytic_only,
                                           const MembershipNumerics& numerics) {
    const double n = static_cast<double>(param.n);
    if (!(t > -0.5 * n))
        throw std::invalid_argument("classify_unif_membership: requires t > -n/2");
    if (!(param.alpha > 0.0))
        throw std::invalid_argument("classify_unif_membership: requires alpha > 0");
    const double threshold = std::min(n, t + 0.5 * n);

    MembershipVerdict verdict;
    std::ostringstream rationale;
    if (param.alpha == threshold) {
        verdict.verdict = Verdict::Boundary;
        rationale << "alpha = min(n, t + n/2) = " << threshold << " sits on the threshold";
    } else if (param.alpha < threshold) {
        verdict.verdict = Verdict::Member;
        rationale << "alpha = " << param.alpha << " < min(n, t + n/2) = " << threshold;
    } else {
        verdict.verdict = Verdict::NonMember;
        rationale << "alpha = " << param.alpha << " > min(n, t + n/2) = " << threshold;
    }
    verdict.rationale = rationale.str();

    if (!analytic_only) {
        // unif H^{-t}_2 norm of eta * f_alpha at z = 0 across a refinement
        // ladder; the norm stabilizes for members and grows otherwise.
        const SingularCellRule rule;
        const SpaceIndex idx = make_space_index(-t, 2.0);
        std::vector<std::pair<double, double>> points;
        for (int step = 0; step < 3; ++step) {
            const std::size_t N = numerics.N0 << step;
            const GridSpec grid = make_grid(param.n, numerics.L, N);
            Field w = sample_f_alpha(param, grid, rule, Point{});
            const Field eta = sample_function(
                [](const Point& x) { return Complex(bump_eta(x), 0.0); }, grid);
            for (std::size_t k = 0; k < w.values.size(); ++k) w.values[k] *= eta.values[k];
            points.emplace_back(static_cast<double>(N), hs_norm(w, idx).value);
        }
        verdict.numeric_evidence = fit_loglog_slope(points);
    }
    return verdict;
}

}  // namespace besselab
