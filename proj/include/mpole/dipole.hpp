#pragma once

// Half-wave dipole harness: three-mode electric expansion, its radial field on
// the quarter-wavelength sphere, and far-field comparisons between the
// coefficient-direct pattern and the one recovered from radial data alone.

#include "mpole/extraction.hpp"
#include "mpole/harmonics.hpp"
#include "mpole/multipole.hpp"

#include <vector>

namespace mpole {

struct DipoleSpec {
    double current = 1.0;     // A
    double wavelength = 1.0;  // m

    void validate() const;
    Medium medium() const;    // free space at this wavelength
};

/// a_E(1,0) = sqrt(6/pi) I / (lambda/2), a_E(3,0) = 49.5e-3 a_E(1,0),
/// a_E(5,0) = 1.02e-3 a_E(1,0); everything else zero, l_max = 5.
CoefficientSet halfwave_coeffs(const DipoleSpec& spec);

inline constexpr int kHalfwaveDegree = 5;
inline constexpr double kHalfwaveRatio3 = 49.5e-3;
inline constexpr double kHalfwaveRatio5 = 1.02e-3;

/// E on the given grid (radius lambda / 4 expected) with only the radial
/// component populated.
FieldSamples radial_source_on_sphere(const DipoleSpec& spec, const SphereGrid& grid);

struct PatternComparison {
    std::vector<double> theta;          // interior cut at phi = 0
    std::vector<double> direct;         // peak-normalized |E_theta|, from the coefficients
    std::vector<double> recovered;      // peak-normalized |E_theta|, from radial samples
    double rms_deviation = 0.0;         // relative RMS of (recovered - direct)
    double max_e_phi_direct = 0.0;      // max |E_phi| / peak |E_theta|
    double max_e_phi_recovered = 0.0;
    double peak_theta = 0.0;            // direction of the direct pattern maximum
    bool e_phi_negligible = false;      // both E_phi ratios <= 1e-12
    CoefficientSet recovered_coeffs;
};

/// Default angular resolution of the comparison cut.
inline constexpr int kPatternPoints = 181;

PatternComparison validate_roundtrip(const DipoleSpec& spec, int grid_lmax = kHalfwaveDegree,
                                     int pattern_points = kPatternPoints);

struct DualComparison {
    double radial_mismatch = 0.0;      // max |H_r(dual) - E_r(orig)/Z0| / max |E_r(orig)/Z0|
    double dual_e_theta = 0.0;         // max |E_theta(dual)| / peak |E_phi(dual)|
    double pattern_mismatch = 0.0;     // max | |E_phi(dual)| - |E_theta(orig)| |, peak-normalized
    double double_dual_mismatch = 0.0; // max |fields(dual(dual)) + fields(orig)| / max |fields|
    CoefficientSet dual_coeffs;
    FarFieldPattern dual_pattern;
};

DualComparison magnetic_dipole_variant(const DipoleSpec& spec, int grid_lmax = kHalfwaveDegree,
                                       int pattern_points = kPatternPoints);

/// Interior theta cut (0, pi) at phi = 0 with n points, excluding the poles.
std::vector<Direction> theta_cut(int n, double phi = 0.0);

}  // namespace mpole
