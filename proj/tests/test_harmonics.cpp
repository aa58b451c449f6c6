#include "doctest.h"

#include "mpole/harmonics.hpp"

#include <cmath>
#include <memory>
#include <vector>

using namespace mpole;

namespace {

const Medium kMedium = Medium::free_space(1e9);

FieldSamples sample_family(std::shared_ptr<const SphereGrid> grid, HarmonicFamily family, ModeIndex mode) {
    FieldSamples s(grid, FieldKind::electric, kMedium);
    for (std::size_t i = 0; i < grid->size(); ++i) {
        const Direction d = grid->node(i);
        switch (family) {
            case HarmonicFamily::Yr:
                s.set(i, {sph_harmonic(mode.l, mode.m, d.theta, d.phi), 0.0, 0.0});
                break;
            case HarmonicFamily::X: {
                const TangentialVector v = vec_X(mode, d.theta, d.phi);
                s.set(i, {0.0, v.theta, v.phi});
                break;
            }
            case HarmonicFamily::Z: {
                const TangentialVector v = vec_Z(mode, d.theta, d.phi);
                s.set(i, {0.0, v.theta, v.phi});
                break;
            }
        }
    }
    s.band_limit = mode.l;
    return s;
}

double cabs_err(cdouble a, cdouble b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("grid shape and weights") {
    const SphereGrid g1 = make_grid(1, 1.0);
    CHECK(g1.n_theta() == 2);
    CHECK(g1.n_phi() == 4);
    CHECK(std::cos(g1.thetas()[0]) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(std::cos(g1.thetas()[1]) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));

    for (int L : {1, 4, 8, 20}) {
        const SphereGrid g = make_grid(L, 0.25);
        double sum = 0.0;
        for (double w : g.weights()) sum += w;
        CHECK(std::abs(sum - 4.0 * kPi) <= 1e-13 * 4.0 * kPi);
        CHECK(g.l_max() == L);
        CHECK(g.exact_degree() >= 2 * L);
        for (double t : g.thetas()) {
            CHECK(t > 0.0);
            CHECK(t < kPi);
        }
    }
    CHECK_THROWS_AS(make_grid(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(3, -1.0), std::invalid_argument);
}

TEST_CASE("quadrature integrates |Y_44|^2 to one") {
    const SphereGrid g = make_grid(4, 1.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Direction d = g.node(i);
        sum += g.weights()[i] * std::norm(sph_harmonic(4, 4, d.theta, d.phi));
    }
    CHECK(std::abs(sum - 1.0) <= 1e-13);
}

TEST_CASE("vector harmonics: closed forms") {
    const double c = std::sqrt(3.0 / (4.0 * kPi)) / std::sqrt(2.0);
    const TangentialVector x = vec_X({1, 0}, kPi / 2, 0.0);
    CHECK(std::abs(x.theta) <= 1e-16);
    CHECK(cabs_err(x.phi, cdouble(0.0, -c)) <= 1e-15);
    CHECK(c == doctest::Approx(0.3454941).epsilon(1e-7));

    const TangentialVector z = vec_Z({1, 0}, kPi / 2, 0.0);
    CHECK(cabs_err(z.theta, cdouble(0.0, c)) <= 1e-15);
    CHECK(std::abs(z.phi) <= 1e-16);
    CHECK(TangentialVector::r == cdouble(0.0, 0.0));
}

TEST_CASE("vector harmonics: symbolic-derivative oracle values") {
    // sympy, 30 digits
    const TangentialVector x = vec_X({1, 1}, kPi / 3, 0.7);
    CHECK(cabs_err(x.theta, {-0.186851906958262282093960355777, -0.157383190098312743155946601995}) <= 1e-12);
    CHECK(cabs_err(x.phi, {0.0786915950491563715779733009973, -0.0934259534791311410469801778885}) <= 1e-12);

    const TangentialVector z = vec_Z({6, -3}, 1.1, 2.2);
    CHECK(cabs_err(z.theta, {0.08617135178531633358905506, 0.2628313172803302315348375}) <= 1e-12);
    CHECK(cabs_err(z.phi, {0.07605338890791336826566255, -0.02493471249112724395284067}) <= 1e-12);
}

TEST_CASE("Z is r_hat cross X and l = 0 is rejected") {
    for (int l = 1; l <= 5; ++l) {
        for (int m = -l; m <= l; ++m) {
            const TangentialVector x = vec_X({l, m}, 0.4, 1.3);
            const TangentialVector z = vec_Z({l, m}, 0.4, 1.3);
            CHECK(z.theta == -x.phi);
            CHECK(z.phi == x.theta);
        }
    }
    CHECK_THROWS_AS(vec_X({0, 0}, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(vec_Z({0, 0}, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(vec_X({2, 3}, 1.0, 1.0), std::domain_error);
}

TEST_CASE("harmonic table matches pointwise evaluation") {
    const SphereGrid g = make_grid(6, 1.0);
    const HarmonicTable t(6, g);
    for (int l = 1; l <= 6; ++l) {
        for (int m = -l; m <= l; ++m) {
            const auto y = t.y({l, m});
            const auto xt = t.x_theta({l, m});
            const auto xp = t.x_phi({l, m});
            double err = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) {
                const Direction d = g.node(i);
                const TangentialVector v = vec_X({l, m}, d.theta, d.phi);
                err = std::max(err, cabs_err({y.re[i], y.im[i]}, sph_harmonic(l, m, d.theta, d.phi)));
                err = std::max(err, cabs_err({xt.re[i], xt.im[i]}, v.theta));
                err = std::max(err, cabs_err({xp.re[i], xp.im[i]}, v.phi));
            }
            CHECK(err <= 1e-14);
        }
    }
}

TEST_CASE("orthonormality of all nine family pairings up to l = 8") {
    const int L = 8;
    auto grid = std::make_shared<const SphereGrid>(make_grid(L, 1.0));
    const HarmonicTable table(L, *grid);
    const HarmonicFamily fams[] = {HarmonicFamily::X, HarmonicFamily::Z, HarmonicFamily::Yr};
    double worst_self = 0.0;
    double worst_cross = 0.0;
    for (HarmonicFamily f : fams) {
        for (int l = 1; l <= L; ++l) {
            for (int m = -l; m <= l; ++m) {
                const FieldSamples s = sample_family(grid, f, {l, m});
                for (HarmonicFamily g : fams) {
                    for (int lp = 1; lp <= L; ++lp) {
                        for (int mp = -lp; mp <= lp; ++mp) {
                            Diagnostics diag;
                            const cdouble p = project(table, s, g, {lp, mp}, &diag);
                            REQUIRE(diag.empty());
                            const double expect = (f == g && l == lp && m == mp) ? 1.0 : 0.0;
                            const double err = std::abs(p - expect);
                            if (f == g) {
                                worst_self = std::max(worst_self, err);
                            } else {
                                worst_cross = std::max(worst_cross, err);
                            }
                        }
                    }
                }
            }
        }
    }
    CHECK(worst_self <= 1e-12);
    CHECK(worst_cross <= 1e-12);
}

TEST_CASE("projection is linear in the samples") {
    auto grid = std::make_shared<const SphereGrid>(make_grid(5, 1.0));
    const FieldSamples f = sample_family(grid, HarmonicFamily::X, {3, 2});
    FieldSamples g = sample_family(grid, HarmonicFamily::Z, {2, -1});
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto v = g.at(i);
        v[0] = cdouble(0.1 * static_cast<double>(i % 7), -0.3);
        g.set(i, v);
    }
    const cdouble a(0.7, -1.2), b(-2.0, 0.4);
    FieldSamples sum(grid, FieldKind::electric, kMedium);
    for (std::size_t i = 0; i < grid->size(); ++i) {
        const auto fv = f.at(i);
        const auto gv = g.at(i);
        sum.set(i, {a * fv[0] + b * gv[0], a * fv[1] + b * gv[1], a * fv[2] + b * gv[2]});
    }
    for (HarmonicFamily fam : {HarmonicFamily::X, HarmonicFamily::Z, HarmonicFamily::Yr}) {
        for (int l = 1; l <= 2; ++l) {
            for (int m = -l; m <= l; ++m) {
                const cdouble lhs = project(sum, fam, {l, m});
                const cdouble rhs = a * project(f, fam, {l, m}) + b * project(g, fam, {l, m});
                CHECK(std::abs(lhs - rhs) <= 1e-14);
            }
        }
    }
}

TEST_CASE("coarse grids are reported") {
    auto grid = std::make_shared<const SphereGrid>(make_grid(3, 1.0));
    FieldSamples s = sample_family(grid, HarmonicFamily::X, {3, 1});
    s.band_limit = 6;
    Diagnostics diag;
    project(s, HarmonicFamily::X, {3, 1}, &diag);
    CHECK_FALSE(diag.empty());
    CHECK(projection_is_exact(*grid, 3, 3));
    CHECK_FALSE(projection_is_exact(*grid, 3, 6));
}

TEST_CASE("non-finite samples are rejected") {
    auto grid = std::make_shared<const SphereGrid>(make_grid(2, 1.0));
    FieldSamples s(grid, FieldKind::magnetic, kMedium);
    CHECK_NOTHROW(s.require_finite());
    s.theta().set(3, {std::nan(""), 0.0});
    CHECK_THROWS_AS(s.require_finite(), std::invalid_argument);
}
