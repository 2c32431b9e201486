#include <doctest.h>

#include "besselab/bessel.hpp"
#include "besselab/fft.hpp"
#include "support.hpp"

using namespace besselab;
using testsupport::max_abs;
using testsupport::max_abs_diff;
using testsupport::random_field;

TEST_CASE("phi_weight") {
    CHECK(phi_weight(0.0, Point{3.0, 4.0, 0.0}) == 1.0);
    CHECK(phi_weight(2.0, Point{1.0, 0.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(phi_weight(-1.0, Point{0.0, 2.0, 0.0}) ==
          doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("hs_norm at gamma = 0 reduces to lp_norm") {
    const GridSpec g = make_grid(1, 4.0, 128);
    const Field u = random_field(g, 17);
    for (double p : {1.5, 2.0, 3.0}) {
        const HsNormResult r = hs_norm(u, make_space_index(0.0, p));
        CHECK(std::abs(r.value - lp_norm(u, p)) <= 1e-14 * lp_norm(u, p));
    }
}

TEST_CASE("J_gamma and J_{-gamma} invert each other") {
    const GridSpec g = make_grid(2, 4.0, 32);
    const Field u = random_field(g, 23);
    const Field back = apply_bessel(apply_bessel(u, 1.3).field, -1.3).field;
    CHECK(max_abs_diff(back, u) / max_abs(u) < 1e-11);
}

TEST_CASE("hs_norm is invariant under cyclic translation") {
    const GridSpec g = make_grid(1, 4.0, 128);
    const Field u = random_field(g, 29);
    const Field shifted = cyclic_translate(u, {37, 0, 0});
    for (double gamma : {-0.75, 0.0, 1.25}) {
        for (double p : {2.0, 3.0}) {
            const double a = hs_norm(u, make_space_index(gamma, p)).value;
            const double b = hs_norm(shifted, make_space_index(gamma, p)).value;
            CHECK(std::abs(a - b) <= 1e-10 * a);
        }
    }
}

TEST_CASE("aliasing guard trips on a coarse grid with positive smoothness") {
    const GridSpec g = make_grid(1, 4.0, 16);
    const Field spiky = random_field(g, 31);
    CHECK(apply_bessel(spiky, 3.0).aliasing_warning);
    // and stays quiet for a well-resolved smooth field
    const GridSpec fine = make_grid(1, 16.0, 512);
    const Field smooth = sample_function(
        [](const Point& x) { return Complex(std::exp(-0.5 * x[0] * x[0]), 0.0); }, fine);
    CHECK_FALSE(apply_bessel(smooth, 1.0).aliasing_warning);
}

TEST_CASE("bump profile") {
    CHECK(bump_eta(Point{0.5, 0.0, 0.0}) == 1.0);
    CHECK(bump_eta(Point{1.0, 0.0, 0.0}) == 1.0);
    CHECK(bump_eta(Point{2.0, 0.0, 0.0}) == 0.0);
    CHECK(bump_eta(Point{3.0, 0.0, 0.0}) == 0.0);
    CHECK(bump_eta(Point{1.5, 0.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-14));
    // monotone on the transition annulus
    double prev = 1.0;
    for (double r = 1.0; r <= 2.0; r += 0.01) {
        const double q = bump_eta(Point{r, 0.0, 0.0});
        CHECK(q <= prev + 1e-15);
        prev = q;
    }
}

TEST_CASE("sweep_points emits the origin once and unit directions") {
    const auto pts1 = sweep_points(1, {0.0, 1.0, 2.0}, 8);
    CHECK(pts1.size() == 1 + 2 * 2);  // origin + {+,-} per positive radius
    const auto pts2 = sweep_points(2, {0.0, 3.0}, 8);
    CHECK(pts2.size() == 1 + 8);
    for (std::size_t i = 1; i < pts2.size(); ++i) {
        const double r = std::hypot(pts2[i][0], pts2[i][1]);
        CHECK(r == doctest::Approx(3.0).epsilon(1e-12));
    }
    const auto pts3 = sweep_points(3, {0.0, 2.0}, 8);
    CHECK(pts3.size() == 1 + 26);
}

TEST_CASE("unif sweep peaks at the origin for the Riesz kernel") {
    const GridSpec g = make_grid(1, 8.0, 256);
    const RieszParam p = make_riesz_param(0.5, 1);
    const UnifSweepResult sweep = unif_norm_sweep(
        [&](const Point& z) { return sample_f_alpha(p, g, SingularCellRule{}, z); },
        make_space_index(-0.25, 2.0), g, {0.0, 2.0, 4.0}, 4);
    CHECK(sweep.argmax_z[0] == 0.0);
    CHECK(sweep.sup > 0.0);
    // symmetric shifts give equal norms
    REQUIRE(sweep.table.size() == 5);
    CHECK(sweep.table[1].norm == doctest::Approx(sweep.table[2].norm).epsilon(1e-10));
}

TEST_CASE("decay ratios fall off with the shift radius") {
    const GridSpec g = make_grid(1, 8.0, 128);
    const auto entries = decay_ratio_sweep(make_riesz_param(0.5, 1),
                                           {Point{0.0, 0.0, 0.0}, Point{4.0, 0.0, 0.0}}, g);
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].sup_ratio > entries[1].sup_ratio);
    CHECK(entries[1].sup_ratio > 0.0);
}

TEST_CASE("unif membership classifier, analytic side") {
    CHECK(classify_unif_membership(make_riesz_param(2.0, 3), 1.0, true).verdict ==
          Verdict::Member);
    CHECK(classify_unif_membership(make_riesz_param(2.7, 3), 1.0, true).verdict ==
          Verdict::NonMember);
    CHECK(classify_unif_membership(make_riesz_param(2.5, 3), 1.0, true).verdict ==
          Verdict::Boundary);
    CHECK(to_string(Verdict::Member) == "Member");
    CHECK(to_string(Verdict::NonMember) == "NonMember");
    CHECK(to_string(Verdict::Boundary) == "Boundary");
}

TEST_CASE("unif membership classifier attaches numeric evidence") {
    MembershipNumerics numerics;
    numerics.L = 8.0;
    numerics.N0 = 256;
    const MembershipVerdict v =
        classify_unif_membership(make_riesz_param(0.6, 1), 0.25, false, numerics);
    CHECK(v.verdict == Verdict::Member);
    REQUIRE(v.numeric_evidence.has_value());
    CHECK(v.numeric_evidence->points.size() == 3);
}
