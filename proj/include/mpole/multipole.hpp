#pragma once

// Outgoing multipole expansion outside a source-enclosing sphere.
//
// With x = k r, h = h_l^(1)(x), D = d/dx[x h] and s = sqrt(l(l+1)):
//
//   E = Z0 sum [ a_E s h/x Y r_hat + a_E (i/x) D Z + a_M h X ]
//   H =    sum [ -a_M s h/x Y r_hat + a_E h X - a_M (i/x) D Z ]
//
// H = B / mu0 is used throughout. Coefficients are in A/m (so that a_E Z0 h X
// is in V/m).

#include "mpole/harmonics.hpp"
#include "mpole/medium.hpp"
#include "mpole/specfun.hpp"

#include <span>
#include <vector>

namespace mpole {

/// Dense a_E(l, m), a_M(l, m) for 1 <= l <= l_max.
class CoefficientSet {
public:
    CoefficientSet(int l_max, Medium medium);

    int l_max() const noexcept { return l_max_; }
    const Medium& medium() const noexcept { return medium_; }
    std::size_t size() const noexcept { return a_e_.size(); }

    cdouble a_e(int l, int m) const { return a_e_[checked(l, m)]; }
    cdouble a_m(int l, int m) const { return a_m_[checked(l, m)]; }
    void set_a_e(int l, int m, cdouble v) { a_e_[checked(l, m)] = v; }
    void set_a_m(int l, int m, cdouble v) { a_m_[checked(l, m)] = v; }

    std::span<const cdouble> a_e() const noexcept { return a_e_; }
    std::span<const cdouble> a_m() const noexcept { return a_m_; }
    std::span<cdouble> a_e() noexcept { return a_e_; }
    std::span<cdouble> a_m() noexcept { return a_m_; }

    bool is_zero() const noexcept;
    void require_finite() const;

    /// Same medium and degree required.
    CoefficientSet& operator+=(const CoefficientSet& other);
    CoefficientSet& operator*=(cdouble s);
    friend CoefficientSet operator+(CoefficientSet a, const CoefficientSet& b) { return a += b; }
    friend CoefficientSet operator*(cdouble s, CoefficientSet a) { return a *= s; }

private:
    std::size_t checked(int l, int m) const;

    int l_max_;
    Medium medium_;
    std::vector<cdouble> a_e_;
    std::vector<cdouble> a_m_;
};

/// E and H on the same set of points.
struct FieldPair {
    FieldSamples e;
    FieldSamples h;
};

/// Raw field values at arbitrary directions on a sphere (r, theta, phi basis).
struct PointFields {
    std::vector<std::array<cdouble, 3>> e;
    std::vector<std::array<cdouble, 3>> h;
};

/// Fields on the grid's nodes at radius r (the grid's own radius is ignored
/// for evaluation; samples keep a grid rescaled to r). Requires grid.l_max()
/// >= coeffs.l_max() so that the samples can be projected back exactly.
FieldPair synthesize(const CoefficientSet& coeffs, double r, const SphereGrid& grid);

/// Fields at the grid's own radius.
FieldPair synthesize(const CoefficientSet& coeffs, std::shared_ptr<const SphereGrid> grid);

/// Fields at arbitrary directions on the sphere of radius r.
PointFields synthesize_points(const CoefficientSet& coeffs, double r,
                              std::span<const Direction> directions);

/// Far-zone pattern with e^{ikr}/(kr) removed:
///   E_far = Z0 sum (-i)^{l+1} (a_M X - a_E Z),  H_far = r_hat x E_far / Z0.
class FarFieldPattern {
public:
    FarFieldPattern(std::vector<Direction> directions, std::vector<cdouble> e_theta,
                    std::vector<cdouble> e_phi, double z0);

    std::span<const Direction> directions() const noexcept { return directions_; }
    std::span<const cdouble> e_theta() const noexcept { return e_theta_; }
    std::span<const cdouble> e_phi() const noexcept { return e_phi_; }
    std::size_t size() const noexcept { return directions_.size(); }

    cdouble h_theta(std::size_t i) const { return -e_phi_[i] / z0_; }
    cdouble h_phi(std::size_t i) const { return e_theta_[i] / z0_; }
    double intensity(std::size_t i) const { return std::norm(e_theta_[i]) + std::norm(e_phi_[i]); }

private:
    std::vector<Direction> directions_;
    std::vector<cdouble> e_theta_;
    std::vector<cdouble> e_phi_;
    double z0_;
};

FarFieldPattern far_field(const CoefficientSet& coeffs, std::span<const Direction> directions);

/// Coefficients of the dual field (E', H') = (-Z0 H, E / Z0):
/// a_E' = a_M, a_M' = -a_E. Applying it twice negates the fields.
CoefficientSet duality(const CoefficientSet& coeffs);

/// Time-averaged outgoing power through the sphere of radius r, in watts.
double radiated_power(const CoefficientSet& coeffs, double r, const SphereGrid& grid);

}  // namespace mpole
