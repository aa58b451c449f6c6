#include "doctest.h"

#include "mpole/dipole.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace mpole;

TEST_CASE("half-wave coefficients") {
    const DipoleSpec spec{2.0, 0.5};
    const CoefficientSet c = halfwave_coeffs(spec);
    const double a10 = std::sqrt(6.0 / kPi) * 2.0 / 0.25;
    CHECK(c.l_max() == 5);
    CHECK(c.a_e(1, 0) == cdouble(a10));
    CHECK(c.a_e(3, 0) == cdouble(49.5e-3 * a10));
    CHECK(c.a_e(5, 0) == cdouble(1.02e-3 * a10));
    int nonzero = 0;
    for (std::size_t i = 0; i < c.size(); ++i) nonzero += (c.a_e()[i] != 0.0) + (c.a_m()[i] != 0.0);
    CHECK(nonzero == 3);
    CHECK(c.medium().k == doctest::Approx(2.0 * kPi / 0.5).epsilon(1e-15));
    CHECK_THROWS_AS(halfwave_coeffs({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(halfwave_coeffs({-1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("radial-only round trip reproduces the far-field pattern") {
    for (double lambda : {1.0, 0.3, 12.5}) {
        const PatternComparison cmp = validate_roundtrip({1.0, lambda});
        CAPTURE(lambda);
        CHECK(cmp.rms_deviation <= 1e-9);
        CHECK(cmp.e_phi_negligible);
        CHECK(cmp.max_e_phi_direct <= 1e-12);
        CHECK(cmp.max_e_phi_recovered <= 1e-12);
        CHECK(cmp.theta.size() == static_cast<std::size_t>(kPatternPoints));
        CHECK(cmp.peak_theta == doctest::Approx(kPi / 2));
        CHECK(std::abs(cmp.recovered_coeffs.a_e(3, 0) / cmp.recovered_coeffs.a_e(1, 0) - 49.5e-3) <= 1e-10);
    }
}

TEST_CASE("pattern shape: broadside maximum, nulls toward the axis") {
    const PatternComparison cmp = validate_roundtrip({1.0, 1.0}, 5, 179);
    CHECK(cmp.direct.front() < 0.05);
    CHECK(cmp.direct.back() < 0.05);
    CHECK(*std::max_element(cmp.direct.begin(), cmp.direct.end()) == 1.0);
}

TEST_CASE("radial source samples carry only E_r") {
    const DipoleSpec spec{1.0, 1.0};
    const SphereGrid grid = make_grid(5, 0.25);
    const FieldSamples s = radial_source_on_sphere(spec, grid);
    CHECK(s.grid().radius() == 0.25);
    CHECK(mpole::testing::max_abs(s.theta()) == 0.0);
    CHECK(mpole::testing::max_abs(s.phi()) == 0.0);
    CHECK(mpole::testing::max_abs(s.r()) > 0.0);
}

TEST_CASE("magnetic dual") {
    const DualComparison d = magnetic_dipole_variant({1.0, 1.0});
    CHECK(d.radial_mismatch <= 1e-12);
    CHECK(d.dual_e_theta <= 1e-12);
    CHECK(d.pattern_mismatch <= 1e-10);
    CHECK(d.double_dual_mismatch <= 1e-12);
    CHECK(d.dual_coeffs.a_m(1, 0) == -halfwave_coeffs({1.0, 1.0}).a_e(1, 0));
}

TEST_CASE("theta cut") {
    const auto cut = theta_cut(3, 0.5);
    REQUIRE(cut.size() == 3);
    CHECK(cut[1].theta == doctest::Approx(kPi / 2));
    CHECK(cut[0].phi == 0.5);
    CHECK_THROWS_AS(theta_cut(0), std::invalid_argument);
}
