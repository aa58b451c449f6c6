#include "mpole/multipole.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mpole {

// ---------------------------------------------------------------------------
// CoefficientSet

CoefficientSet::CoefficientSet(int l_max, Medium medium)
    : l_max_(l_max), medium_(medium), a_e_(mode_count(l_max)), a_m_(mode_count(l_max)) {
    if (l_max < 1) throw std::invalid_argument("coefficient sets need l_max >= 1");
    medium_.validate();
}

std::size_t CoefficientSet::checked(int l, int m) const {
    require_field_mode({l, m});
    if (l > l_max_) {
        throw std::out_of_range("degree " + std::to_string(l) + " above truncation " +
                                std::to_string(l_max_));
    }
    return mode_offset(l, m);
}

bool CoefficientSet::is_zero() const noexcept {
    for (std::size_t i = 0; i < a_e_.size(); ++i) {
        if (a_e_[i] != cdouble{} || a_m_[i] != cdouble{}) return false;
    }
    return true;
}

void CoefficientSet::require_finite() const {
    for (std::size_t i = 0; i < a_e_.size(); ++i) {
        const bool ok = std::isfinite(a_e_[i].real()) && std::isfinite(a_e_[i].imag()) &&
                        std::isfinite(a_m_[i].real()) && std::isfinite(a_m_[i].imag());
        if (!ok) {
            const ModeIndex mode = mode_at(i);
            throw std::invalid_argument("non-finite coefficient at l = " + std::to_string(mode.l) +
                                        ", m = " + std::to_string(mode.m));
        }
    }
}

CoefficientSet& CoefficientSet::operator+=(const CoefficientSet& other) {
    if (other.l_max_ != l_max_ || other.medium_.k != medium_.k || other.medium_.z0 != medium_.z0) {
        throw std::invalid_argument("cannot add coefficient sets with different degree or medium");
    }
    for (std::size_t i = 0; i < a_e_.size(); ++i) {
        a_e_[i] += other.a_e_[i];
        a_m_[i] += other.a_m_[i];
    }
    return *this;
}

CoefficientSet& CoefficientSet::operator*=(cdouble s) {
    for (std::size_t i = 0; i < a_e_.size(); ++i) {
        a_e_[i] *= s;
        a_m_[i] *= s;
    }
    return *this;
}

// ---------------------------------------------------------------------------
// Synthesis

namespace {

constexpr cdouble kI{0.0, 1.0};

struct ComponentBuffers {
    ComponentArray r, theta, phi;

    explicit ComponentBuffers(std::size_t n) : r(n), theta(n), phi(n) {}
};

// Accumulates sum over modes of (c_y Y r_hat + c_z Z + c_x X).
void accumulate(const HarmonicTable& table, ModeIndex mode, cdouble c_y, cdouble c_z, cdouble c_x,
                ComponentBuffers& out) {
    const simd::Kernels& k = simd::active_kernels();
    const simd::ComplexView y = table.y(mode);
    const simd::ComplexView xt = table.x_theta(mode);
    const simd::ComplexView xp = table.x_phi(mode);
    // Z_theta = -X_phi, Z_phi = X_theta
    simd::axpy(k, c_y, y, out.r.re, out.r.im);
    simd::axpy(k, c_x, xt, out.theta.re, out.theta.im);
    simd::axpy(k, -c_z, xp, out.theta.re, out.theta.im);
    simd::axpy(k, c_x, xp, out.phi.re, out.phi.im);
    simd::axpy(k, c_z, xt, out.phi.re, out.phi.im);
}

void synthesize_into(const CoefficientSet& coeffs, double r, const HarmonicTable& table,
                     ComponentBuffers& e, ComponentBuffers& h) {
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("synthesis radius must be > 0");
    coeffs.require_finite();
    const Medium& med = coeffs.medium();
    const double x = med.k * r;
    const HankelTable rad = hankel_table(coeffs.l_max(), x);
    for (int l = 1; l <= coeffs.l_max(); ++l) {
        const cdouble hl = rad.h[static_cast<std::size_t>(l)];
        const cdouble dl = rad.deriv[static_cast<std::size_t>(l)];
        const double s = std::sqrt(static_cast<double>(l) * (l + 1));
        const cdouble radial = s * hl / x;
        const cdouble transverse = kI * dl / x;
        for (int m = -l; m <= l; ++m) {
            const cdouble ae = coeffs.a_e(l, m);
            const cdouble am = coeffs.a_m(l, m);
            if (ae == cdouble{} && am == cdouble{}) continue;
            accumulate(table, {l, m}, med.z0 * ae * radial, med.z0 * ae * transverse,
                       med.z0 * am * hl, e);
            accumulate(table, {l, m}, -am * radial, -am * transverse, ae * hl, h);
        }
    }
}

FieldSamples to_samples(ComponentBuffers&& buf, std::shared_ptr<const SphereGrid> grid, FieldKind kind,
                        const CoefficientSet& coeffs) {
    FieldSamples s(std::move(grid), kind, coeffs.medium());
    s.r() = std::move(buf.r);
    s.theta() = std::move(buf.theta);
    s.phi() = std::move(buf.phi);
    s.band_limit = coeffs.l_max();
    return s;
}

}  // namespace

FieldPair synthesize(const CoefficientSet& coeffs, std::shared_ptr<const SphereGrid> grid) {
    if (!grid) throw std::invalid_argument("synthesis needs a grid");
    if (grid->l_max() < coeffs.l_max()) {
        throw std::invalid_argument("grid exactness degree " + std::to_string(grid->l_max()) +
                                    " below coefficient degree " + std::to_string(coeffs.l_max()));
    }
    const HarmonicTable table(coeffs.l_max(), *grid);
    ComponentBuffers e(grid->size());
    ComponentBuffers h(grid->size());
    synthesize_into(coeffs, grid->radius(), table, e, h);
    FieldSamples es = to_samples(std::move(e), grid, FieldKind::electric, coeffs);
    FieldSamples hs = to_samples(std::move(h), grid, FieldKind::magnetic, coeffs);
    return {std::move(es), std::move(hs)};
}

FieldPair synthesize(const CoefficientSet& coeffs, double r, const SphereGrid& grid) {
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("synthesis radius must be > 0");
    return synthesize(coeffs, std::make_shared<const SphereGrid>(grid.n_theta(), grid.n_phi(), r));
}

PointFields synthesize_points(const CoefficientSet& coeffs, double r,
                              std::span<const Direction> directions) {
    const HarmonicTable table(coeffs.l_max(), directions);
    ComponentBuffers e(directions.size());
    ComponentBuffers h(directions.size());
    synthesize_into(coeffs, r, table, e, h);
    PointFields out;
    out.e.resize(directions.size());
    out.h.resize(directions.size());
    for (std::size_t i = 0; i < directions.size(); ++i) {
        out.e[i] = {e.r.at(i), e.theta.at(i), e.phi.at(i)};
        out.h[i] = {h.r.at(i), h.theta.at(i), h.phi.at(i)};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Far field

FarFieldPattern::FarFieldPattern(std::vector<Direction> directions, std::vector<cdouble> e_theta,
                                 std::vector<cdouble> e_phi, double z0)
    : directions_(std::move(directions)),
      e_theta_(std::move(e_theta)),
      e_phi_(std::move(e_phi)),
      z0_(z0) {
    if (e_theta_.size() != directions_.size() || e_phi_.size() != directions_.size()) {
        throw std::invalid_argument("far-field component count does not match directions");
    }
}

FarFieldPattern far_field(const CoefficientSet& coeffs, std::span<const Direction> directions) {
    coeffs.require_finite();
    const HarmonicTable table(coeffs.l_max(), directions);
    ComponentBuffers e(directions.size());
    const double z0 = coeffs.medium().z0;
    // h_l(x) -> (-i)^{l+1} e^{ix}/x and (i/x) d/dx[x h_l] -> -(-i)^{l+1} e^{ix}/x.
    cdouble phase = -kI;  // (-i)^l, advanced to (-i)^{l+1} at the top of each degree
    for (int l = 1; l <= coeffs.l_max(); ++l) {
        phase *= -kI;
        for (int m = -l; m <= l; ++m) {
            const cdouble ae = coeffs.a_e(l, m);
            const cdouble am = coeffs.a_m(l, m);
            if (ae == cdouble{} && am == cdouble{}) continue;
            accumulate(table, {l, m}, 0.0, -z0 * ae * phase, z0 * am * phase, e);
        }
    }
    std::vector<cdouble> et(directions.size());
    std::vector<cdouble> ep(directions.size());
    for (std::size_t i = 0; i < directions.size(); ++i) {
        et[i] = e.theta.at(i);
        ep[i] = e.phi.at(i);
    }
    return FarFieldPattern({directions.begin(), directions.end()}, std::move(et), std::move(ep), z0);
}

// ---------------------------------------------------------------------------
// Duality and power

CoefficientSet duality(const CoefficientSet& coeffs) {
    CoefficientSet out(coeffs.l_max(), coeffs.medium());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        out.a_e()[i] = coeffs.a_m()[i];
        out.a_m()[i] = -coeffs.a_e()[i];
    }
    return out;
}

double radiated_power(const CoefficientSet& coeffs, double r, const SphereGrid& grid) {
    const FieldPair f = synthesize(coeffs, r, grid);
    const simd::Kernels& k = simd::active_kernels();
    const std::span<const double> w = f.e.grid().weights();
    // (E x conj(H)) . r_hat = E_theta conj(H_phi) - E_phi conj(H_theta)
    const cdouble flux = simd::conj_dot(k, w, f.h.phi().view(), f.e.theta().view()) -
                         simd::conj_dot(k, w, f.h.theta().view(), f.e.phi().view());
    return 0.5 * flux.real() * r * r;
}

}  // namespace mpole
