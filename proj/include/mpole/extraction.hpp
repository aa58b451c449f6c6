#pragma once

// Recovery of multipole coefficients from samples on a sphere of radius r0,
// by three routes that each read a disjoint subset of field components:
//
//   radial:        a_E = x / (Z0 h s) <Y r_hat, E>,   a_M = -x / (h s) <Y r_hat, H>
//   tangential E:  a_E = x / (i Z0 D) <Z, E>,         a_M = <X, E> / (Z0 h)
//   tangential H:  a_E = <X, H> / h,                  a_M = i x / D <Z, H>
//
// with x = k r0, h = h_l^(1)(x), D = d/dx[x h], s = sqrt(l(l+1)) and <V, F>
// the quadrature of conj(V) . F over the sphere.

#include "mpole/harmonics.hpp"
#include "mpole/multipole.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mpole {

enum class Route { radial, tangential_e, tangential_h };

std::string_view route_name(Route route) noexcept;

/// Prefactor of the Z-projection terms in the tangential routes.
enum class TangentialScaling {
    consistent,                ///< x / (i Z0 D) and i x / D, inverse of the synthesis
    radius_over_derivative,    ///< r0 / (Z0 D) and r0 / D; kept only as a regression reference
};

struct ExtractionOptions {
    /// Modes whose divisor magnitude exceeds this multiple of the smallest
    /// divisor of the route are flagged.
    double condition_threshold = 1e6;
    TangentialScaling scaling = TangentialScaling::consistent;
    /// When set, per-mode residuals are computed against it.
    const CoefficientSet* reference = nullptr;
};

struct ExtractionReport {
    Route route;
    CoefficientSet coeffs;
    /// Surface-amplitude deviation per mode against options.reference (empty
    /// without a reference); see mode_deviations().
    std::vector<double> residuals;
    /// Per degree l (index l - 1): largest divisor magnitude of the route at
    /// degree l over the smallest divisor magnitude across all degrees.
    std::vector<double> condition;
    std::vector<int> flagged_degrees;
    Diagnostics diagnostics;
};

ExtractionReport extract_radial(const FieldSamples& e, const FieldSamples& h, int l_max,
                                const ExtractionOptions& options = {});
ExtractionReport extract_tangential_e(const FieldSamples& e, int l_max,
                                      const ExtractionOptions& options = {});
ExtractionReport extract_tangential_h(const FieldSamples& h, int l_max,
                                      const ExtractionOptions& options = {});

/// Per-mode |a - b| |h_l(x)| divided by the largest max(|a|, |b|) |h_l(x)| over
/// all modes and both families, x = k r0. Weighting by |h_l| compares the
/// amplitudes the modes have on the measurement sphere. All zero when both
/// sets vanish.
std::vector<double> mode_deviations(const CoefficientSet& a, const CoefficientSet& b, double r0);
double max_deviation(const CoefficientSet& a, const CoefficientSet& b, double r0);

struct EquivalenceReport {
    std::array<ExtractionReport, 3> routes;  // radial, tangential E, tangential H
    double radial_vs_e = 0.0;
    double radial_vs_h = 0.0;
    double e_vs_h = 0.0;

    double max_deviation() const noexcept;
    const ExtractionReport& route(Route r) const { return routes[static_cast<std::size_t>(r)]; }
};

/// Runs all three routes on the same samples and compares them pairwise.
EquivalenceReport equivalence_report(const FieldSamples& e, const FieldSamples& h, int l_max,
                                     const ExtractionOptions& options = {});

}  // namespace mpole
