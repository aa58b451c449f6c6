#include "mpole/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mpole {

namespace {

constexpr cdouble kI{0.0, 1.0};

void require_degree(int l_max) {
    if (l_max < 1) throw std::invalid_argument("extraction degree must be >= 1");
}

void require_same_sphere(const FieldSamples& a, const FieldSamples& b) {
    const SphereGrid& ga = a.grid();
    const SphereGrid& gb = b.grid();
    if (ga.n_theta() != gb.n_theta() || ga.n_phi() != gb.n_phi() || ga.radius() != gb.radius()) {
        throw std::invalid_argument("E and H samples lie on different grids");
    }
    if (a.medium().k != b.medium().k || a.medium().z0 != b.medium().z0) {
        throw std::invalid_argument("E and H samples disagree on the medium");
    }
}

void check_exactness(const FieldSamples& s, int l_max, Diagnostics& diag) {
    const int band = s.band_limit.value_or(s.grid().l_max());
    if (!projection_is_exact(s.grid(), l_max, band)) {
        std::ostringstream os;
        os << "grid too coarse: exact degree " << s.grid().exact_degree() << " < " << l_max
           << " + field band limit " << band << "; projections are approximate";
        diag.warn(os.str());
    }
}

// What the projections of one degree are divided by, Z0 left out.
struct Divisors {
    cdouble electric;
    cdouble magnetic;
};

void finish_report(ExtractionReport& rep, const std::vector<Divisors>& divisors,
                   const ExtractionOptions& options, double r0) {
    double smallest = std::numeric_limits<double>::infinity();
    for (const Divisors& d : divisors) {
        smallest = std::min({smallest, std::abs(d.electric), std::abs(d.magnetic)});
    }
    rep.condition.resize(divisors.size());
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        const double largest = std::max(std::abs(divisors[i].electric), std::abs(divisors[i].magnetic));
        rep.condition[i] = largest / smallest;
        if (rep.condition[i] > options.condition_threshold) {
            const int l = static_cast<int>(i) + 1;
            rep.flagged_degrees.push_back(l);
            std::ostringstream os;
            os << route_name(rep.route) << ": degree " << l << " ill-conditioned, divisor ratio "
               << rep.condition[i] << " exceeds " << options.condition_threshold;
            rep.diagnostics.warn(os.str());
        }
    }
    if (options.reference != nullptr) rep.residuals = mode_deviations(rep.coeffs, *options.reference, r0);
}

}  // namespace

std::string_view route_name(Route route) noexcept {
    switch (route) {
        case Route::radial: return "radial";
        case Route::tangential_e: return "tan-e";
        case Route::tangential_h: return "tan-h";
    }
    return "unknown";
}

ExtractionReport extract_radial(const FieldSamples& e, const FieldSamples& h, int l_max,
                                const ExtractionOptions& options) {
    require_degree(l_max);
    require_same_sphere(e, h);
    const Medium& med = e.medium();
    const double r0 = e.grid().radius();
    const double x = med.k * r0;
    ExtractionReport rep{Route::radial, CoefficientSet(l_max, med), {}, {}, {}, {}};
    check_exactness(e, l_max, rep.diagnostics);
    check_exactness(h, l_max, rep.diagnostics);

    const HarmonicTable table(l_max, e.grid());
    const HankelTable rad = hankel_table(l_max, x);
    std::vector<Divisors> divisors;
    for (int l = 1; l <= l_max; ++l) {
        const double s = std::sqrt(static_cast<double>(l) * (l + 1));
        const cdouble d = s * rad.h[static_cast<std::size_t>(l)] / x;
        divisors.push_back({d, d});
        for (int m = -l; m <= l; ++m) {
            const cdouble pe = project(table, e, HarmonicFamily::Yr, {l, m});
            const cdouble ph = project(table, h, HarmonicFamily::Yr, {l, m});
            rep.coeffs.set_a_e(l, m, pe / (med.z0 * d));
            rep.coeffs.set_a_m(l, m, -ph / d);
        }
    }
    finish_report(rep, divisors, options, r0);
    return rep;
}

ExtractionReport extract_tangential_e(const FieldSamples& e, int l_max,
                                      const ExtractionOptions& options) {
    require_degree(l_max);
    const Medium& med = e.medium();
    const double r0 = e.grid().radius();
    const double x = med.k * r0;
    ExtractionReport rep{Route::tangential_e, CoefficientSet(l_max, med), {}, {}, {}, {}};
    check_exactness(e, l_max, rep.diagnostics);

    const HarmonicTable table(l_max, e.grid());
    const HankelTable rad = hankel_table(l_max, x);
    std::vector<Divisors> divisors;
    for (int l = 1; l <= l_max; ++l) {
        const cdouble hl = rad.h[static_cast<std::size_t>(l)];
        const cdouble dl = rad.deriv[static_cast<std::size_t>(l)];
        divisors.push_back({dl / x, hl});
        const cdouble c_e = options.scaling == TangentialScaling::consistent
                                ? x / (kI * med.z0 * dl)
                                : r0 / (med.z0 * dl);
        for (int m = -l; m <= l; ++m) {
            rep.coeffs.set_a_e(l, m, c_e * project(table, e, HarmonicFamily::Z, {l, m}));
            rep.coeffs.set_a_m(l, m, project(table, e, HarmonicFamily::X, {l, m}) / (med.z0 * hl));
        }
    }
    finish_report(rep, divisors, options, r0);
    return rep;
}

ExtractionReport extract_tangential_h(const FieldSamples& h, int l_max,
                                      const ExtractionOptions& options) {
    require_degree(l_max);
    const Medium& med = h.medium();
    const double r0 = h.grid().radius();
    const double x = med.k * r0;
    ExtractionReport rep{Route::tangential_h, CoefficientSet(l_max, med), {}, {}, {}, {}};
    check_exactness(h, l_max, rep.diagnostics);

    const HarmonicTable table(l_max, h.grid());
    const HankelTable rad = hankel_table(l_max, x);
    std::vector<Divisors> divisors;
    for (int l = 1; l <= l_max; ++l) {
        const cdouble hl = rad.h[static_cast<std::size_t>(l)];
        const cdouble dl = rad.deriv[static_cast<std::size_t>(l)];
        divisors.push_back({hl, dl / x});
        const cdouble c_m = options.scaling == TangentialScaling::consistent ? kI * x / dl : r0 / dl;
        for (int m = -l; m <= l; ++m) {
            rep.coeffs.set_a_e(l, m, project(table, h, HarmonicFamily::X, {l, m}) / hl);
            rep.coeffs.set_a_m(l, m, c_m * project(table, h, HarmonicFamily::Z, {l, m}));
        }
    }
    finish_report(rep, divisors, options, r0);
    return rep;
}

std::vector<double> mode_deviations(const CoefficientSet& a, const CoefficientSet& b, double r0) {
    if (a.l_max() != b.l_max()) throw std::invalid_argument("coefficient sets differ in degree");
    const HankelTable rad = hankel_table(a.l_max(), a.medium().k * r0);
    std::vector<double> dev(a.size(), 0.0);
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double g = std::abs(rad.h[static_cast<std::size_t>(mode_at(i).l)]);
        scale = std::max({scale, g * std::abs(a.a_e()[i]), g * std::abs(b.a_e()[i]),
                          g * std::abs(a.a_m()[i]), g * std::abs(b.a_m()[i])});
        dev[i] = g * std::max(std::abs(a.a_e()[i] - b.a_e()[i]), std::abs(a.a_m()[i] - b.a_m()[i]));
    }
    if (scale == 0.0) return std::vector<double>(a.size(), 0.0);
    for (double& d : dev) d /= scale;
    return dev;
}

double max_deviation(const CoefficientSet& a, const CoefficientSet& b, double r0) {
    const std::vector<double> dev = mode_deviations(a, b, r0);
    return dev.empty() ? 0.0 : *std::max_element(dev.begin(), dev.end());
}

double EquivalenceReport::max_deviation() const noexcept {
    return std::max({radial_vs_e, radial_vs_h, e_vs_h});
}

EquivalenceReport equivalence_report(const FieldSamples& e, const FieldSamples& h, int l_max,
                                     const ExtractionOptions& options) {
    require_same_sphere(e, h);
    EquivalenceReport out{{extract_radial(e, h, l_max, options), extract_tangential_e(e, l_max, options),
                           extract_tangential_h(h, l_max, options)}};
    const double r0 = e.grid().radius();
    out.radial_vs_e = max_deviation(out.routes[0].coeffs, out.routes[1].coeffs, r0);
    out.radial_vs_h = max_deviation(out.routes[0].coeffs, out.routes[2].coeffs, r0);
    out.e_vs_h = max_deviation(out.routes[1].coeffs, out.routes[2].coeffs, r0);
    return out;
}

}  // namespace mpole
