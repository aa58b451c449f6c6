#include "mpole/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mpole {

// ---------------------------------------------------------------------------
// Quadrature

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_n(x), p0 = P_{n-1}(x)
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
        }
        {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[static_cast<std::size_t>(i)] = x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = -x;
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

SphereGrid::SphereGrid(int n_theta, int n_phi, double r0) : r0_(r0) {
    if (!(r0 > 0.0) || !std::isfinite(r0)) {
        throw std::invalid_argument("sphere radius must be > 0");
    }
    if (n_theta < 2 || n_phi < 3) {
        throw std::invalid_argument("grid needs n_theta >= 2 and n_phi >= 3");
    }
    exact_degree_ = std::min(2 * n_theta - 1, n_phi - 1);
    l_max_ = exact_degree_ / 2;

    std::vector<double> x;
    std::vector<double> w;
    gauss_legendre(n_theta, x, w);

    theta_.resize(static_cast<std::size_t>(n_theta));
    for (std::size_t i = 0; i < theta_.size(); ++i) theta_[i] = std::acos(x[i]);
    phi_.resize(static_cast<std::size_t>(n_phi));
    for (std::size_t j = 0; j < phi_.size(); ++j) phi_[j] = 2.0 * kPi * static_cast<double>(j) / n_phi;

    const double dphi = 2.0 * kPi / n_phi;
    weights_.reserve(theta_.size() * phi_.size());
    for (std::size_t i = 0; i < theta_.size(); ++i) {
        for (std::size_t j = 0; j < phi_.size(); ++j) weights_.push_back(w[i] * dphi);
    }
}

std::vector<Direction> SphereGrid::directions() const {
    std::vector<Direction> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(node(i));
    return out;
}

SphereGrid make_grid(int l_max, double r0) {
    if (l_max < 1) throw std::invalid_argument("grid degree must be >= 1");
    return SphereGrid(l_max + 1, 2 * l_max + 2, r0);
}

// ---------------------------------------------------------------------------
// Vector harmonics

namespace {

struct XComponents {
    cdouble theta;
    cdouble phi;
};

// X_lm components from a Legendre table; negative orders use
// P_l^{-|m|} e^{-i|m|phi} scaled by (-1)^m, i.e. Y_{l,-m} = (-1)^m conj(Y_lm).
XComponents x_components(const LegendreTable& leg, int l, int m, cdouble eimphi) {
    const int am = std::abs(m);
    const double sign = (m < 0 && (am % 2 == 1)) ? -1.0 : 1.0;
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    const double q = sign * leg.over_sin(l, am);
    const double dp = sign * leg.dtheta(l, am);
    // (1/i) * (i m Y / sin) = m Y / sin ;  (1/i) * (-dY/dtheta) = i dY/dtheta
    return {norm * m * q * eimphi, cdouble(0.0, norm * dp) * eimphi};
}

cdouble y_value(const LegendreTable& leg, int l, int m, cdouble eimphi) {
    const int am = std::abs(m);
    const double sign = (m < 0 && (am % 2 == 1)) ? -1.0 : 1.0;
    return sign * leg.value(l, am) * eimphi;
}

}  // namespace

TangentialVector vec_X(ModeIndex mode, double theta, double phi) {
    require_field_mode(mode);
    const LegendreTable leg(mode.l, theta);
    const XComponents x = x_components(leg, mode.l, mode.m, std::polar(1.0, mode.m * phi));
    return {x.theta, x.phi};
}

TangentialVector vec_Z(ModeIndex mode, double theta, double phi) {
    const TangentialVector x = vec_X(mode, theta, phi);
    return {-x.phi, x.theta};
}

// ---------------------------------------------------------------------------
// Samples

FieldSamples::FieldSamples(std::shared_ptr<const SphereGrid> grid, FieldKind kind, Medium medium)
    : grid_(std::move(grid)), kind_(kind), medium_(medium) {
    if (!grid_) throw std::invalid_argument("field samples need a grid");
    const std::size_t n = grid_->size();
    r_ = ComponentArray(n);
    theta_ = ComponentArray(n);
    phi_ = ComponentArray(n);
}

void FieldSamples::set(std::size_t i, const std::array<cdouble, 3>& v) {
    r_.set(i, v[0]);
    theta_.set(i, v[1]);
    phi_.set(i, v[2]);
}

void FieldSamples::require_finite() const {
    for (const ComponentArray* c : {&r_, &theta_, &phi_}) {
        for (std::size_t i = 0; i < c->size(); ++i) {
            if (!std::isfinite(c->re[i]) || !std::isfinite(c->im[i])) {
                throw std::invalid_argument("non-finite field sample at node " + std::to_string(i));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Harmonic tables

HarmonicTable::HarmonicTable(int l_max, std::span<const Direction> directions)
    : l_max_(l_max), points_(directions.size()) {
    if (l_max < 1) throw std::invalid_argument("harmonic table needs l_max >= 1");
    const std::size_t n = mode_count(l_max) * points_;
    for (auto* v : {&y_re_, &y_im_, &xt_re_, &xt_im_, &xp_re_, &xp_im_}) v->assign(n, 0.0);

    // Rings of equal theta share one Legendre table.
    std::size_t p = 0;
    while (p < points_) {
        const double theta = directions[p].theta;
        const LegendreTable leg(l_max, theta);
        for (; p < points_ && directions[p].theta == theta; ++p) {
            const double phi = directions[p].phi;
            for (int l = 1; l <= l_max; ++l) {
                for (int m = -l; m <= l; ++m) {
                    const cdouble e = std::polar(1.0, m * phi);
                    const std::size_t at = mode_offset(l, m) * points_ + p;
                    const cdouble y = y_value(leg, l, m, e);
                    const XComponents x = x_components(leg, l, m, e);
                    y_re_[at] = y.real();
                    y_im_[at] = y.imag();
                    xt_re_[at] = x.theta.real();
                    xt_im_[at] = x.theta.imag();
                    xp_re_[at] = x.phi.real();
                    xp_im_[at] = x.phi.imag();
                }
            }
        }
    }
}

HarmonicTable::HarmonicTable(int l_max, const SphereGrid& grid)
    : HarmonicTable(l_max, grid.directions()) {}

simd::ComplexView HarmonicTable::view(const std::vector<double>& re, const std::vector<double>& im,
                                      ModeIndex mode) const {
    require_field_mode(mode);
    if (mode.l > l_max_) {
        throw std::out_of_range("mode degree " + std::to_string(mode.l) +
                                " exceeds harmonic table degree " + std::to_string(l_max_));
    }
    const std::size_t off = mode_offset(mode.l, mode.m) * points_;
    return {std::span<const double>(re).subspan(off, points_),
            std::span<const double>(im).subspan(off, points_)};
}

// ---------------------------------------------------------------------------
// Projection

bool projection_is_exact(const SphereGrid& grid, int l, int field_band_limit) noexcept {
    return l + field_band_limit <= grid.exact_degree();
}

cdouble project(const HarmonicTable& table, const FieldSamples& samples, HarmonicFamily family,
                ModeIndex mode, Diagnostics* diag) {
    require_field_mode(mode);
    const SphereGrid& grid = samples.grid();
    if (table.points() != grid.size()) {
        throw std::invalid_argument("harmonic table does not match the sample grid");
    }
    const int band = samples.band_limit.value_or(grid.l_max());
    if (diag != nullptr && !projection_is_exact(grid, mode.l, band)) {
        diag->warn("grid too coarse: degree " + std::to_string(mode.l) + " against field band limit " +
                   std::to_string(band) + " exceeds exact degree " +
                   std::to_string(grid.exact_degree()));
    }

    const simd::Kernels& k = simd::active_kernels();
    const std::span<const double> w = grid.weights();
    switch (family) {
        case HarmonicFamily::Yr:
            return simd::conj_dot(k, w, table.y(mode), samples.r().view());
        case HarmonicFamily::X:
            return simd::conj_dot(k, w, table.x_theta(mode), samples.theta().view()) +
                   simd::conj_dot(k, w, table.x_phi(mode), samples.phi().view());
        case HarmonicFamily::Z:
            // conj(Z_theta) = -conj(X_phi), conj(Z_phi) = conj(X_theta)
            return simd::conj_dot(k, w, table.x_theta(mode), samples.phi().view()) -
                   simd::conj_dot(k, w, table.x_phi(mode), samples.theta().view());
    }
    return {};
}

cdouble project(const FieldSamples& samples, HarmonicFamily family, ModeIndex mode,
                Diagnostics* diag) {
    require_field_mode(mode);
    const HarmonicTable table(mode.l, samples.grid());
    return project(table, samples, family, mode, diag);
}

}  // namespace mpole
