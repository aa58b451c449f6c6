#pragma once

// Vector spherical harmonics, the product quadrature on a sphere, and
// projections of sampled fields onto conjugated harmonics.
//
//   X_lm = 1/sqrt(l(l+1)) (1/i) ( (1/sin t) dY/dphi  theta_hat - dY/dtheta  phi_hat )
//   Z_lm = r_hat x X_lm     =>  Z_theta = -X_phi,  Z_phi = X_theta
//   Y_lm r_hat              (radial family)

#include "mpole/medium.hpp"
#include "mpole/simd/kernels.hpp"
#include "mpole/specfun.hpp"

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace mpole {

struct Direction {
    double theta = 0.0;
    double phi = 0.0;
};

/// Gauss-Legendre (in cos theta) x uniform-phi product grid on a sphere.
///
/// With n_theta = L + 1 and n_phi >= 2L + 1 the rule integrates the product
/// of any two harmonics of degree <= L exactly. Nodes are theta-major:
/// node index = i_theta * n_phi + i_phi, theta ascending.
class SphereGrid {
public:
    SphereGrid(int n_theta, int n_phi, double r0);

    double radius() const noexcept { return r0_; }
    int n_theta() const noexcept { return static_cast<int>(theta_.size()); }
    int n_phi() const noexcept { return static_cast<int>(phi_.size()); }
    std::size_t size() const noexcept { return weights_.size(); }

    /// Largest L such that products of two degree-L harmonics integrate exactly.
    int l_max() const noexcept { return l_max_; }

    /// Largest total degree of a band-limited integrand the rule is exact for.
    int exact_degree() const noexcept { return exact_degree_; }

    std::span<const double> thetas() const noexcept { return theta_; }
    std::span<const double> phis() const noexcept { return phi_; }
    std::span<const double> weights() const noexcept { return weights_; }

    Direction node(std::size_t i) const noexcept {
        return {theta_[i / phi_.size()], phi_[i % phi_.size()]};
    }
    std::vector<Direction> directions() const;

private:
    double r0_;
    int l_max_;
    int exact_degree_;
    std::vector<double> theta_;
    std::vector<double> phi_;
    std::vector<double> weights_;  // steradian per node
};

/// Default grid exact for harmonic products up to degree l_max each:
/// n_theta = l_max + 1, n_phi = 2 l_max + 2.
SphereGrid make_grid(int l_max, double r0);

/// Gauss-Legendre nodes (descending, in (-1, 1)) and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct TangentialVector {
    cdouble theta;
    cdouble phi;

    // Radial component is zero by construction.
    static constexpr cdouble r{0.0, 0.0};
};

TangentialVector vec_X(ModeIndex mode, double theta, double phi);
TangentialVector vec_Z(ModeIndex mode, double theta, double phi);

enum class FieldKind { electric, magnetic };

/// Split-complex storage of one spherical component over all nodes.
struct ComponentArray {
    std::vector<double> re;
    std::vector<double> im;

    explicit ComponentArray(std::size_t n = 0) : re(n, 0.0), im(n, 0.0) {}

    std::size_t size() const noexcept { return re.size(); }
    cdouble at(std::size_t i) const { return {re[i], im[i]}; }
    void set(std::size_t i, cdouble v) {
        re[i] = v.real();
        im[i] = v.imag();
    }
    simd::ComplexView view() const noexcept { return {re, im}; }
};

/// E (V/m) or H (A/m) sampled at every node of a grid, in the (r, theta, phi)
/// basis. `band_limit`, when known, is the highest degree present in the field
/// and lets projections check quadrature exactness.
class FieldSamples {
public:
    FieldSamples(std::shared_ptr<const SphereGrid> grid, FieldKind kind, Medium medium);

    const SphereGrid& grid() const noexcept { return *grid_; }
    const std::shared_ptr<const SphereGrid>& grid_ptr() const noexcept { return grid_; }
    FieldKind kind() const noexcept { return kind_; }
    const Medium& medium() const noexcept { return medium_; }
    std::size_t size() const noexcept { return r_.size(); }

    std::optional<int> band_limit;

    ComponentArray& r() noexcept { return r_; }
    ComponentArray& theta() noexcept { return theta_; }
    ComponentArray& phi() noexcept { return phi_; }
    const ComponentArray& r() const noexcept { return r_; }
    const ComponentArray& theta() const noexcept { return theta_; }
    const ComponentArray& phi() const noexcept { return phi_; }

    std::array<cdouble, 3> at(std::size_t i) const { return {r_.at(i), theta_.at(i), phi_.at(i)}; }
    void set(std::size_t i, const std::array<cdouble, 3>& v);

    /// Throws std::invalid_argument if any component is NaN or infinite.
    void require_finite() const;

private:
    std::shared_ptr<const SphereGrid> grid_;
    FieldKind kind_;
    Medium medium_;
    ComponentArray r_;
    ComponentArray theta_;
    ComponentArray phi_;
};

/// Values of Y_lm, X_lm (theta and phi components) for every mode
/// 1 <= l <= l_max at a fixed list of directions, stored mode-major so that
/// each mode is a contiguous split-complex array over directions.
class HarmonicTable {
public:
    HarmonicTable(int l_max, std::span<const Direction> directions);
    HarmonicTable(int l_max, const SphereGrid& grid);

    int l_max() const noexcept { return l_max_; }
    std::size_t points() const noexcept { return points_; }

    simd::ComplexView y(ModeIndex mode) const { return view(y_re_, y_im_, mode); }
    simd::ComplexView x_theta(ModeIndex mode) const { return view(xt_re_, xt_im_, mode); }
    simd::ComplexView x_phi(ModeIndex mode) const { return view(xp_re_, xp_im_, mode); }

private:
    simd::ComplexView view(const std::vector<double>& re, const std::vector<double>& im,
                           ModeIndex mode) const;

    int l_max_;
    std::size_t points_;
    std::vector<double> y_re_, y_im_;
    std::vector<double> xt_re_, xt_im_;
    std::vector<double> xp_re_, xp_im_;
};

enum class HarmonicFamily { X, Z, Yr };

/// Quadrature approximation of the integral over the sphere of
/// conj(V_lm) . F, V in {X_lm, Z_lm, Y_lm r_hat}. Only the components of F
/// that V has are read. If the grid cannot integrate the product exactly, a
/// warning is recorded in `diag` (when given).
cdouble project(const FieldSamples& samples, HarmonicFamily family, ModeIndex mode,
                Diagnostics* diag = nullptr);

/// Same, reusing harmonics tabulated on the samples' grid.
cdouble project(const HarmonicTable& table, const FieldSamples& samples, HarmonicFamily family,
                ModeIndex mode, Diagnostics* diag = nullptr);

/// True when the grid integrates degree-`l` harmonics against a field of the
/// given band limit exactly.
bool projection_is_exact(const SphereGrid& grid, int l, int field_band_limit) noexcept;

}  // namespace mpole
