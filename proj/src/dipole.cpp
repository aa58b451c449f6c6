#include "mpole/dipole.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mpole {

void DipoleSpec::validate() const {
    if (!(current >= 0.0) || !std::isfinite(current)) {
        throw std::invalid_argument("dipole current must be finite and non-negative");
    }
    if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
        throw std::invalid_argument("dipole wavelength must be > 0");
    }
}

Medium DipoleSpec::medium() const {
    return Medium::free_space(kSpeedOfLight / wavelength);
}

CoefficientSet halfwave_coeffs(const DipoleSpec& spec) {
    spec.validate();
    CoefficientSet c(kHalfwaveDegree, spec.medium());
    const double a10 = std::sqrt(6.0 / kPi) * spec.current / (spec.wavelength / 2.0);
    c.set_a_e(1, 0, a10);
    c.set_a_e(3, 0, kHalfwaveRatio3 * a10);
    c.set_a_e(5, 0, kHalfwaveRatio5 * a10);
    return c;
}

FieldSamples radial_source_on_sphere(const DipoleSpec& spec, const SphereGrid& grid) {
    FieldPair f = synthesize(halfwave_coeffs(spec), grid.radius(), grid);
    FieldSamples out(f.e.grid_ptr(), FieldKind::electric, f.e.medium());
    out.r() = f.e.r();
    out.band_limit = f.e.band_limit;
    return out;
}

std::vector<Direction> theta_cut(int n, double phi) {
    if (n < 1) throw std::invalid_argument("pattern cut needs at least one point");
    std::vector<Direction> dirs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) dirs[static_cast<std::size_t>(i)] = {kPi * (i + 1) / (n + 1), phi};
    return dirs;
}

namespace {

std::vector<double> normalized_magnitude(std::span<const cdouble> v, double& peak) {
    std::vector<double> out(v.size());
    peak = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = std::abs(v[i]);
        peak = std::max(peak, out[i]);
    }
    if (peak > 0.0) {
        for (double& x : out) x /= peak;
    }
    return out;
}

double max_ratio(std::span<const cdouble> v, double peak) {
    double m = 0.0;
    for (const cdouble& z : v) m = std::max(m, std::abs(z));
    return peak > 0.0 ? m / peak : m;
}

double max_abs(const FieldSamples& f) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (const cdouble& z : f.at(i)) m = std::max(m, std::abs(z));
    }
    return m;
}

// max |a + b| / max |a| over every component.
double sum_mismatch(const FieldSamples& a, const FieldSamples& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto va = a.at(i);
        const auto vb = b.at(i);
        for (std::size_t c = 0; c < 3; ++c) m = std::max(m, std::abs(va[c] + vb[c]));
    }
    const double scale = max_abs(a);
    return scale > 0.0 ? m / scale : m;
}

}  // namespace

PatternComparison validate_roundtrip(const DipoleSpec& spec, int grid_lmax, int pattern_points) {
    const CoefficientSet coeffs = halfwave_coeffs(spec);
    const SphereGrid grid = make_grid(grid_lmax, spec.wavelength / 4.0);
    const FieldPair f = synthesize(coeffs, grid.radius(), grid);

    // Only the radial components reach the extraction.
    FieldSamples e_r(f.e.grid_ptr(), FieldKind::electric, f.e.medium());
    FieldSamples h_r(f.h.grid_ptr(), FieldKind::magnetic, f.h.medium());
    e_r.r() = f.e.r();
    h_r.r() = f.h.r();
    e_r.band_limit = h_r.band_limit = coeffs.l_max();
    const ExtractionReport rep = extract_radial(e_r, h_r, coeffs.l_max());

    const std::vector<Direction> cut = theta_cut(pattern_points);
    const FarFieldPattern direct = far_field(coeffs, cut);
    const FarFieldPattern recovered = far_field(rep.coeffs, cut);

    PatternComparison out{{}, {}, {}, 0.0, 0.0, 0.0, 0.0, false, rep.coeffs};
    double peak_direct = 0.0;
    double peak_recovered = 0.0;
    out.direct = normalized_magnitude(direct.e_theta(), peak_direct);
    out.recovered = normalized_magnitude(recovered.e_theta(), peak_recovered);
    out.theta.reserve(cut.size());
    for (const Direction& d : cut) out.theta.push_back(d.theta);

    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < cut.size(); ++i) {
        const double diff = out.recovered[i] - out.direct[i];
        num += diff * diff;
        den += out.direct[i] * out.direct[i];
    }
    out.rms_deviation = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    out.max_e_phi_direct = max_ratio(direct.e_phi(), peak_direct);
    out.max_e_phi_recovered = max_ratio(recovered.e_phi(), peak_recovered);
    out.e_phi_negligible = out.max_e_phi_direct <= 1e-12 && out.max_e_phi_recovered <= 1e-12;
    const auto peak = std::max_element(out.direct.begin(), out.direct.end());
    if (peak != out.direct.end()) out.peak_theta = out.theta[static_cast<std::size_t>(peak - out.direct.begin())];
    return out;
}

DualComparison magnetic_dipole_variant(const DipoleSpec& spec, int grid_lmax, int pattern_points) {
    const CoefficientSet coeffs = halfwave_coeffs(spec);
    const CoefficientSet dual = duality(coeffs);
    const SphereGrid grid = make_grid(grid_lmax, spec.wavelength / 4.0);
    const FieldPair orig = synthesize(coeffs, grid.radius(), grid);
    const FieldPair dual_fields = synthesize(dual, grid.radius(), grid);
    const double z0 = coeffs.medium().z0;

    double mismatch = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < orig.e.size(); ++i) {
        const cdouble expected = orig.e.r().at(i) / z0;
        mismatch = std::max(mismatch, std::abs(dual_fields.h.r().at(i) - expected));
        scale = std::max(scale, std::abs(expected));
    }

    const std::vector<Direction> cut = theta_cut(pattern_points);
    const FarFieldPattern orig_pattern = far_field(coeffs, cut);
    FarFieldPattern dual_pattern = far_field(dual, cut);
    double peak_orig = 0.0;
    double peak_dual = 0.0;
    const std::vector<double> orig_theta = normalized_magnitude(orig_pattern.e_theta(), peak_orig);
    const std::vector<double> dual_phi = normalized_magnitude(dual_pattern.e_phi(), peak_dual);
    double pattern_mismatch = 0.0;
    for (std::size_t i = 0; i < cut.size(); ++i) {
        pattern_mismatch = std::max(pattern_mismatch, std::abs(dual_phi[i] - orig_theta[i]));
    }

    const FieldPair twice = synthesize(duality(dual), grid.radius(), grid);
    const double dd = std::max(sum_mismatch(orig.e, twice.e), sum_mismatch(orig.h, twice.h));

    return DualComparison{scale > 0.0 ? mismatch / scale : mismatch,
                          max_ratio(dual_pattern.e_theta(), peak_dual),
                          pattern_mismatch,
                          dd,
                          dual,
                          std::move(dual_pattern)};
}

}  // namespace mpole
