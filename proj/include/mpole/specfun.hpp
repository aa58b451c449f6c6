#pragma once

// Scalar special functions for the multipole machinery.
//
// Conventions:
//  * e^{-i omega t} time dependence; h_l^(1) = j_l + i y_l is the outgoing wave.
//  * P_l^m carries the Condon-Shortley phase (-1)^m, so odd-m harmonics flip
//    sign relative to the geodesy convention.
//  * Y_lm = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) P_l^m(cos theta) e^{i m phi}.

#include <complex>
#include <cstddef>
#include <vector>

namespace mpole {

using cdouble = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// A (degree, order) pair addressing one multipole mode.
struct ModeIndex {
    int l = 1;
    int m = 0;

    friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// Validates l >= 1 and |m| <= l; throws std::domain_error otherwise.
void require_field_mode(ModeIndex mode);

/// Dense index of a field mode (l >= 1) in l-major, m-ascending order.
constexpr std::size_t mode_offset(int l, int m) noexcept {
    return static_cast<std::size_t>(l * l - 1 + l + m);
}

/// Number of field modes with 1 <= l <= l_max.
constexpr std::size_t mode_count(int l_max) noexcept {
    return static_cast<std::size_t>((l_max + 1) * (l_max + 1) - 1);
}

/// Inverse of mode_offset.
ModeIndex mode_at(std::size_t offset) noexcept;

/// Fully normalized N_lm P_l^m(x), Condon-Shortley phase included.
/// Throws std::domain_error if |x| > 1, m < 0 or m > l.
double assoc_legendre_norm(int l, int m, double x);

/// Scalar spherical harmonic Y_lm(theta, phi), any |m| <= l.
cdouble sph_harmonic(int l, int m, double theta, double phi);

/// h_l^(1)(x) for x > 0.
cdouble sph_hankel1(int l, double x);

/// d/dx [x h_l^(1)(x)] for l >= 1, x > 0.
cdouble riccati_h1_deriv(int l, double x);

/// Spherical Bessel j_l and y_l for all 0 <= l <= l_max at one argument.
///
/// y_l is obtained by upward recurrence (stable for the growing solution).
/// j_l uses upward recurrence while l <= x and Miller's downward recurrence
/// above that, where the upward direction loses j_l to cancellation.
struct SphericalBessel {
    std::vector<double> j;
    std::vector<double> y;
};
SphericalBessel sph_bessel_table(int l_max, double x);

/// Radial factors of the outgoing expansion at one argument x = k r.
struct HankelTable {
    double x = 0.0;
    std::vector<cdouble> h;      // h_l^(1)(x), l = 0..l_max
    std::vector<cdouble> deriv;  // d/dx [x h_l^(1)(x)], l = 0..l_max

    int l_max() const noexcept { return static_cast<int>(h.size()) - 1; }
};
HankelTable hankel_table(int l_max, double x);

/// Normalized Legendre values for all 0 <= m <= l <= l_max at one colatitude.
///
/// Besides P (= N_lm P_l^m(cos theta)) the table holds dP/dtheta and, for
/// m >= 1, P / sin(theta) evaluated without dividing, so both are finite at
/// the poles.
class LegendreTable {
public:
    LegendreTable(int l_max, double theta);

    /// Builds the table from x = cos(theta) directly, avoiding acos roundoff.
    static LegendreTable from_cos(int l_max, double x);

    int l_max() const noexcept { return l_max_; }
    double value(int l, int m) const { return p_[index(l, m)]; }
    double over_sin(int l, int m) const { return q_[index(l, m)]; }
    double dtheta(int l, int m) const { return dp_[index(l, m)]; }

private:
    LegendreTable(int l_max, double x, double s);

    static std::size_t index(int l, int m) noexcept {
        return static_cast<std::size_t>(l * (l + 1) / 2 + m);
    }

    int l_max_;
    std::vector<double> p_;
    std::vector<double> q_;
    std::vector<double> dp_;
};

}  // namespace mpole
