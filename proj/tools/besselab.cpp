// Experiment runner: every pipeline of the library is exposed as a
// subcommand that writes a CSV of results plus a plain-text run manifest.
// Exit codes: 0 success, 2 validation error, 3 numeric failure.

#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "besselab/bessel.hpp"
#include "besselab/fft.hpp"
#include "besselab/grid.hpp"
#include "besselab/multiplier.hpp"
#include "besselab/report.hpp"
#include "besselab/riesz.hpp"
#include "besselab/sharpness.hpp"

namespace {

using namespace besselab;

constexpr const char* kVersion = "0.1.0";

struct NumericFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunOutput {
    CsvTable csv;
    std::vector<std::pair<std::string, std::string>> manifest;
    std::vector<std::pair<std::string, Field>> dumps;
    bool aliasing_warning = false;
};

std::string join_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += format_value(v[i]);
    }
    return out;
}

void write_outputs(const std::string& out_dir, const std::string& subcommand, RunOutput& out,
                   std::chrono::steady_clock::time_point t0) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    write_text_atomic((dir / "report.csv").string(), to_csv_string(out.csv));

    std::ostringstream manifest;
    manifest << "subcommand=" << subcommand << "\n";
    manifest << "artifact_version=" << kVersion << "\n";
    for (const auto& [k, v] : out.manifest) manifest << k << "=" << v << "\n";
    manifest << "aliasing_warning=" << (out.aliasing_warning ? "true" : "false") << "\n";
    // the volatile fields share one line so every other line is reproducible
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto stamp =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    manifest << "timestamp=" << stamp << " wall_time_s=" << format_value(wall) << "\n";
    write_text_atomic((dir / "manifest.txt").string(), manifest.str());

    for (const auto& [name, field] : out.dumps) write_field(field, (dir / name).string());
}

Field masked_riesz_field(const RieszParam& param, const GridSpec& grid, const Point& z) {
    Field w = sample_f_alpha(param, grid, SingularCellRule{}, z);
    const Field eta =
        sample_function([](const Point& x) { return Complex(bump_eta(x), 0.0); }, grid);
    for (std::size_t k = 0; k < w.values.size(); ++k) w.values[k] *= eta.values[k];
    return w;
}

// --- subcommand pipelines -------------------------------------------------

struct FtCheckOpts {
    int n = 1;
    double L = 16.0;
    std::size_t N = 4096;
    std::vector<double> alphas;
    int eval_count = 33;
};

double ft_check_error(const FtCheckOpts& opt, double alpha, std::size_t N) {
    const GridSpec grid = make_grid(opt.n, opt.L, N);
    const RieszParam param = make_riesz_param(alpha, opt.n);
    const Field lhs = dft(masked_riesz_field(param, grid, Point{}));
    // the oracle's convolution lattice must densify along with the transform
    // grid, or its rectangle-rule error saturates at the base spacing pi/L;
    // scaling box and size together keeps h and the band fixed while the
    // lattice spacing shrinks to pi/(kL)
    const std::size_t k = std::max<std::size_t>(1, N / opt.N);
    const GridSpec oracle_grid = make_grid(opt.n, opt.L * static_cast<double>(k), N * k);
    const Field eta =
        sample_function([](const Point& x) { return Complex(bump_eta(x), 0.0); }, oracle_grid);
    const Field psi_spec = dft(eta);

    // probe a fixed band of lattice frequencies along axis 0 (independent of
    // N, so refinement runs compare the transforms at the same points)
    std::vector<Point> eval_points;
    std::vector<std::size_t> eval_flat;
    const long jmax = static_cast<long>(opt.N) / 4;  // band set by the base resolution
    const long step = std::max<long>(1, 2 * jmax / std::max(1, opt.eval_count - 1));
    for (long j = -jmax; j <= jmax; j += step) {
        std::size_t idx[3] = {static_cast<std::size_t>(j + static_cast<long>(N) / 2), N / 2, N / 2};
        for (int a = opt.n; a < 3; ++a) idx[a] = 0;
        const std::size_t flat = grid.flatten(idx);
        eval_points.push_back(grid.freq(flat));
        eval_flat.push_back(flat);
    }
    const std::vector<Complex> oracle = ft_oracle_convolution(psi_spec, param, eval_points);
    double max_diff = 0.0, max_ref = 0.0;
    for (std::size_t i = 0; i < eval_points.size(); ++i) {
        max_diff = std::max(max_diff, std::abs(lhs.values[eval_flat[i]] - oracle[i]));
        max_ref = std::max(max_ref, std::abs(oracle[i]));
    }
    if (max_ref == 0.0) throw NumericFailure("ft-check: oracle vanished at all probe points");
    return max_diff / max_ref;
}

RunOutput run_ft_check(const FtCheckOpts& opt) {
    RunOutput out;
    out.csv.header = {"alpha", "N", "rel_linf_error"};
    for (double alpha : opt.alphas) {
        for (std::size_t N : {opt.N, 2 * opt.N}) {
            const double err = ft_check_error(opt, alpha, N);
            out.csv.rows.push_back({format_value(alpha), std::to_string(N), format_value(err)});
        }
    }
    out.manifest = {{"n", std::to_string(opt.n)},
                    {"L", format_value(opt.L)},
                    {"N", std::to_string(opt.N)},
                    {"alpha", join_list(opt.alphas)},
                    {"eval_count", std::to_string(opt.eval_count)}};
    return out;
}

struct DecaySweepOpts {
    int n = 2;
    double alpha = 1.0;
    double L = 8.0;
    std::size_t N = 128;
    std::vector<double> z_radii = {0, 2, 4, 8, 16};
    bool refine = false;
};

RunOutput run_decay_sweep(const DecaySweepOpts& opt) {
    RunOutput out;
    out.csv.header = {"z", "N", "R"};
    const RieszParam param = make_riesz_param(opt.alpha, opt.n);
    std::vector<Point> zs;
    for (double r : opt.z_radii) zs.push_back(Point{r, 0.0, 0.0});
    std::vector<std::size_t> sizes = {opt.N};
    if (opt.refine) sizes.push_back(2 * opt.N);
    for (std::size_t N : sizes) {
        const GridSpec grid = make_grid(opt.n, opt.L, N);
        for (const auto& entry : decay_ratio_sweep(param, zs, grid))
            out.csv.rows.push_back(
                {format_value(entry.z[0]), std::to_string(N), format_value(entry.sup_ratio)});
    }
    out.manifest = {{"n", std::to_string(opt.n)},   {"alpha", format_value(opt.alpha)},
                    {"L", format_value(opt.L)},     {"N", std::to_string(opt.N)},
                    {"z", join_list(opt.z_radii)},  {"refine", opt.refine ? "true" : "false"}};
    return out;
}

struct UnifNormOpts {
    int n = 1;
    double alpha = 0.5;
    double gamma = 0.0;
    double p = 2.0;
    double L = 8.0;
    std::size_t N = 256;
    std::vector<double> radii = {0, 1, 2, 4, 8, 16};
    int dirs = 8;
    bool dump_fields = false;
};

RunOutput run_unif_norm(const UnifNormOpts& opt) {
    RunOutput out;
    const GridSpec grid = make_grid(opt.n, opt.L, opt.N);
    const RieszParam param = make_riesz_param(opt.alpha, opt.n);
    const SpaceIndex idx = make_space_index(opt.gamma, opt.p);
    const UnifSweepResult sweep = unif_norm_sweep(
        [&](const Point& z) { return sample_f_alpha(param, grid, SingularCellRule{}, z); }, idx,
        grid, opt.radii, opt.dirs);
    out.aliasing_warning = sweep.aliasing_warning;
    out.csv.header = {"kind", "z1", "z2", "z3", "value"};
    for (const auto& entry : sweep.table)
        out.csv.rows.push_back({"norm", format_value(entry.z[0]), format_value(entry.z[1]),
                                format_value(entry.z[2]), format_value(entry.norm)});
    out.csv.rows.push_back({"sup", format_value(sweep.argmax_z[0]), format_value(sweep.argmax_z[1]),
                            format_value(sweep.argmax_z[2]), format_value(sweep.sup)});
    out.manifest = {{"n", std::to_string(opt.n)},     {"alpha", format_value(opt.alpha)},
                    {"gamma", format_value(opt.gamma)}, {"p", format_value(opt.p)},
                    {"L", format_value(opt.L)},       {"N", std::to_string(opt.N)},
                    {"radii", join_list(opt.radii)},  {"dirs", std::to_string(opt.dirs)}};
    if (opt.dump_fields)
        out.dumps.emplace_back("f_alpha.blab",
                               sample_f_alpha(param, grid, SingularCellRule{}, Point{}));
    return out;
}

struct MembershipOpts {
    int n = 1;
    double t = 0.0;
    double alpha = 0.5;
    bool analytic_only = false;
    double L = 8.0;
    std::size_t N = 1024;
};

RunOutput run_membership(const MembershipOpts& opt) {
    RunOutput out;
    const RieszParam param = make_riesz_param(opt.alpha, opt.n);
    MembershipNumerics numerics;
    numerics.L = opt.L;
    numerics.N0 = opt.N;
    const MembershipVerdict verdict =
        classify_unif_membership(param, opt.t, opt.analytic_only, numerics);
    out.csv.header = {"key", "value"};
    out.csv.rows.push_back({"verdict", to_string(verdict.verdict)});
    out.csv.rows.push_back({"rationale", verdict.rationale});
    if (verdict.numeric_evidence) {
        out.csv.rows.push_back({"slope", format_value(verdict.numeric_evidence->slope)});
        out.csv.rows.push_back({"r2", format_value(verdict.numeric_evidence->r2)});
        for (const auto& [logN, logNorm] : verdict.numeric_evidence->points)
            out.csv.rows.push_back({"norm_N_" + format_value(std::exp(logN)),
                                    format_value(std::exp(logNorm))});
    }
    out.manifest = {{"n", std::to_string(opt.n)},
                    {"t", format_value(opt.t)},
                    {"alpha", format_value(opt.alpha)},
                    {"analytic_only", opt.analytic_only ? "true" : "false"},
                    {"L", format_value(opt.L)},
                    {"N", std::to_string(opt.N)}};
    return out;
}

struct GrowthOpts {
    int n = 2;
    double s = 0.5;
    double t = 0.5;
    double alpha = 1.0;
    std::vector<double> m_values = {4, 8, 16, 32, 64};
    int quad_points = 16;
};

RunOutput run_growth(const GrowthOpts& opt) {
    RunOutput out;
    const MultiplierProblem prob = make_multiplier_problem(opt.n, opt.s, opt.t);
    const GrowthExperiment exp =
        growth_slope_experiment(prob, opt.alpha, opt.m_values, opt.quad_points);
    out.csv.header = {"m", "I"};
    for (std::size_t i = 0; i < exp.m_values.size(); ++i)
        out.csv.rows.push_back({format_value(exp.m_values[i]), format_value(exp.I_values[i])});
    out.manifest = {{"n", std::to_string(opt.n)},
                    {"s", format_value(opt.s)},
                    {"t", format_value(opt.t)},
                    {"alpha", format_value(opt.alpha)},
                    {"m", join_list(opt.m_values)},
                    {"quad_points", std::to_string(opt.quad_points)},
                    {"slope", format_value(exp.fit.slope)},
                    {"r2", format_value(exp.fit.r2)},
                    {"slope_exceeds_dimension", exp.slope_exceeds_dimension ? "true" : "false"}};
    return out;
}

struct OpnormOpts {
    int n = 1;
    double s = 0.0;
    double t = 0.0;
    double alpha = 0.0;  // 0 means constant multiplier instead
    double mu_const = 1.0;
    double L = 16.0;
    std::size_t N = 1024;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    int max_iters = 500;
};

RunOutput run_opnorm(const OpnormOpts& opt) {
    RunOutput out;
    const GridSpec grid = make_grid(opt.n, opt.L, opt.N);
    const MultiplierProblem prob = make_multiplier_problem(opt.n, opt.s, opt.t);
    Field mu;
    if (opt.alpha > 0.0) {
        mu = sample_f_alpha(make_riesz_param(opt.alpha, opt.n), grid, SingularCellRule{}, Point{});
    } else {
        mu = sample_function([&](const Point&) { return Complex(opt.mu_const, 0.0); }, grid);
    }
    const OperatorNormEstimate est =
        estimate_operator_norm(mu, prob, opt.max_iters, opt.tol, opt.seed);
    out.csv.header = {"key", "value"};
    out.csv.rows.push_back({"sigma", format_value(est.sigma)});
    out.csv.rows.push_back({"iterations", std::to_string(est.iterations)});
    out.manifest = {{"n", std::to_string(opt.n)},
                    {"s", format_value(opt.s)},
                    {"t", format_value(opt.t)},
                    {"alpha", format_value(opt.alpha)},
                    {"mu_const", format_value(opt.mu_const)},
                    {"L", format_value(opt.L)},
                    {"N", std::to_string(opt.N)},
                    {"seed", std::to_string(opt.seed)},
                    {"tol", format_value(opt.tol)},
                    {"max_iters", std::to_string(opt.max_iters)}};
    return out;
}

struct CounterexampleOpts {
    int n = 2;
    double s = 0.9;
    double t = 0.9;
    double eps = 0.1;
    double L = 8.0;
    std::size_t N = 256;
    std::vector<double> m_values = {4, 8, 16, 32};
    int quad_points = 16;
    bool dump_fields = false;
};

RunOutput run_counterexample(const CounterexampleOpts& opt) {
    RunOutput out;
    const MultiplierProblem prob = make_multiplier_problem(opt.n, opt.s, opt.t);
    const CounterexampleSpec spec = construct_counterexample(prob, opt.eps);
    std::vector<GridSpec> ladder;
    for (std::size_t N : {opt.N / 2, opt.N, 2 * opt.N})
        if (N >= 8) ladder.push_back(make_grid(opt.n, opt.L, N));
    const CounterexampleReport report =
        verify_counterexample(spec, ladder, opt.m_values, opt.quad_points);

    out.csv.header = {"key", "value"};
    out.csv.rows.push_back({"delta", format_value(spec.delta)});
    out.csv.rows.push_back({"alpha", format_value(spec.alpha)});
    out.csv.rows.push_back({"p1", format_value(spec.p1)});
    out.csv.rows.push_back({"p_target", format_value(spec.p_target)});
    out.csv.rows.push_back({"t1", format_value(spec.t1)});
    out.csv.rows.push_back({"s1", format_value(spec.s1)});
    for (const auto& [N, norm] : report.ladder)
        out.csv.rows.push_back({"unif_norm_N_" + std::to_string(N), format_value(norm)});
    out.csv.rows.push_back({"growth_slope", format_value(report.growth.fit.slope)});
    out.csv.rows.push_back({"analytic_ok", report.analytic_ok ? "true" : "false"});
    out.csv.rows.push_back({"ladder_stable", report.ladder_stable ? "true" : "false"});
    out.csv.rows.push_back(
        {"slope_exceeds_dimension", report.growth.slope_exceeds_dimension ? "true" : "false"});
    out.csv.rows.push_back({"sharpness_witnessed", report.sharpness_witnessed ? "true" : "false"});
    out.manifest = {{"n", std::to_string(opt.n)},
                    {"s", format_value(opt.s)},
                    {"t", format_value(opt.t)},
                    {"eps", format_value(opt.eps)},
                    {"L", format_value(opt.L)},
                    {"N", std::to_string(opt.N)},
                    {"m", join_list(opt.m_values)},
                    {"quad_points", std::to_string(opt.quad_points)}};
    if (opt.dump_fields) {
        const GridSpec grid = make_grid(opt.n, opt.L, opt.N);
        out.dumps.emplace_back(
            "f_alpha.blab",
            sample_f_alpha(make_riesz_param(spec.alpha, opt.n), grid, SingularCellRule{}, Point{}));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const char* threads_env = std::getenv("BESSELAB_THREADS");
    if (threads_env != nullptr) {
        const int threads = std::atoi(threads_env);
        if (threads > 0) omp_set_num_threads(threads);
    }

    CLI::App app{"besselab: Bessel-potential norms, Riesz multipliers and the sharpness "
                 "counterexample pipeline on discretized domains"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "plain-text key=value configuration file; flags override it");
    std::string out_dir = "out";
    bool strict = false;
    app.add_option("--out", out_dir, "output directory for report.csv and manifest.txt");
    app.add_flag("--strict", strict, "escalate aliasing warnings to a numeric failure (exit 3)");

    FtCheckOpts ft;
    auto* ft_cmd = app.add_subcommand(
        "ft-check", "compare dft(eta * f_alpha) against the convolution-based transform oracle");
    ft_cmd->add_option("--n", ft.n)->check(CLI::Range(1, 2));
    ft_cmd->add_option("--L", ft.L);
    ft_cmd->add_option("--N", ft.N);
    ft_cmd->add_option("--alpha", ft.alphas)->required()->delimiter(',');
    ft_cmd->add_option("--eval-count", ft.eval_count);

    DecaySweepOpts ds;
    auto* ds_cmd = app.add_subcommand(
        "decay-sweep", "uniform-in-shift decay ratios of the cutoff Riesz field's spectrum");
    ds_cmd->add_option("--n", ds.n)->check(CLI::Range(1, 3));
    ds_cmd->add_option("--alpha", ds.alpha)->required();
    ds_cmd->add_option("--L", ds.L);
    ds_cmd->add_option("--N", ds.N);
    ds_cmd->add_option("--z", ds.z_radii)->delimiter(',');
    ds_cmd->add_flag("--refine", ds.refine, "also run at 2N to expose refinement drift");

    UnifNormOpts un;
    auto* un_cmd = app.add_subcommand(
        "unif-norm", "uniformly localized norm sweep sup_z ||eta . f_alpha(.+z)||_{H^gamma_p}");
    un_cmd->add_option("--n", un.n)->check(CLI::Range(1, 3));
    un_cmd->add_option("--alpha", un.alpha)->required();
    un_cmd->add_option("--gamma", un.gamma)->required();
    un_cmd->add_option("--p", un.p);
    un_cmd->add_option("--L", un.L);
    un_cmd->add_option("--N", un.N);
    un_cmd->add_option("--radii", un.radii)->delimiter(',');
    un_cmd->add_option("--dirs", un.dirs);
    un_cmd->add_flag("--dump-fields", un.dump_fields);

    MembershipOpts mem;
    auto* mem_cmd = app.add_subcommand(
        "membership",
        "membership of f_alpha in the uniformly localized space H^{-t}_{2,unif}: analytic "
        "criterion alpha < min(n, t + n/2) plus an optional refinement-ladder check");
    mem_cmd->add_option("--n", mem.n)->required()->check(CLI::Range(1, 3));
    mem_cmd->add_option("--t", mem.t)->required();
    mem_cmd->add_option("--alpha", mem.alpha)->required();
    mem_cmd->add_flag("--analytic-only", mem.analytic_only);
    mem_cmd->add_option("--L", mem.L);
    mem_cmd->add_option("--N", mem.N);

    GrowthOpts gr;
    auto* gr_cmd = app.add_subcommand(
        "growth", "growth of the bi-radial ball integral in m; slope > n witnesses that f_alpha "
                  "cannot be a multiplier (the necessity mechanism)");
    gr_cmd->add_option("--n", gr.n)->required()->check(CLI::Range(1, 3));
    gr_cmd->add_option("--s", gr.s)->required();
    gr_cmd->add_option("--t", gr.t)->required();
    gr_cmd->add_option("--alpha", gr.alpha)->required();
    gr_cmd->add_option("--m", gr.m_values)->delimiter(',');
    gr_cmd->add_option("--quad-points", gr.quad_points);

    OpnormOpts on;
    auto* on_cmd = app.add_subcommand(
        "opnorm", "largest singular value of the conjugated multiplier operator by seeded power "
                  "iteration");
    on_cmd->add_option("--n", on.n)->required()->check(CLI::Range(1, 3));
    on_cmd->add_option("--s", on.s)->required();
    on_cmd->add_option("--t", on.t)->required();
    on_cmd->add_option("--alpha", on.alpha);
    on_cmd->add_option("--mu-const", on.mu_const);
    on_cmd->add_option("--L", on.L);
    on_cmd->add_option("--N", on.N);
    on_cmd->add_option("--seed", on.seed)->required();
    on_cmd->add_option("--tol", on.tol);
    on_cmd->add_option("--max-iters", on.max_iters);

    CounterexampleOpts ce;
    auto* ce_cmd = app.add_subcommand(
        "counterexample",
        "end-to-end sharpness witness: construct alpha = s + t + delta(eps), verify the "
        "uniformly localized side on a refinement ladder and the non-multiplier side by the "
        "growth slope");
    ce_cmd->add_option("--n", ce.n)->required()->check(CLI::Range(1, 3));
    ce_cmd->add_option("--s", ce.s)->required();
    ce_cmd->add_option("--t", ce.t)->required();
    ce_cmd->add_option("--eps", ce.eps)->required();
    ce_cmd->add_option("--L", ce.L);
    ce_cmd->add_option("--N", ce.N);
    ce_cmd->add_option("--m", ce.m_values)->delimiter(',');
    ce_cmd->add_option("--quad-points", ce.quad_points);
    ce_cmd->add_flag("--dump-fields", ce.dump_fields);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::RequiredError& e) {
        std::string name = e.what();  // "--foo is required"
        name = name.substr(0, name.find(' '));
        while (!name.empty() && name.front() == '-') name.erase(name.begin());
        std::cerr << "missing key: " << name << "\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        RunOutput out;
        std::string name;
        if (ft_cmd->parsed()) {
            out = run_ft_check(ft);
            name = "ft-check";
        } else if (ds_cmd->parsed()) {
            out = run_decay_sweep(ds);
            name = "decay-sweep";
        } else if (un_cmd->parsed()) {
            out = run_unif_norm(un);
            name = "unif-norm";
        } else if (mem_cmd->parsed()) {
            out = run_membership(mem);
            name = "membership";
        } else if (gr_cmd->parsed()) {
            out = run_growth(gr);
            name = "growth";
        } else if (on_cmd->parsed()) {
            out = run_opnorm(on);
            name = "opnorm";
        } else {
            out = run_counterexample(ce);
            name = "counterexample";
        }
        if (strict && out.aliasing_warning)
            throw NumericFailure(name + ": aliasing guard tripped under --strict");
        write_outputs(out_dir, name, out, t0);
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
