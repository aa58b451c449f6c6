#include "mpole/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mpole {

namespace {

void require_positive_argument(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("spherical Hankel argument must be finite and > 0, got " +
                                std::to_string(x));
    }
}

}  // namespace

void require_field_mode(ModeIndex mode) {
    if (mode.l < 1) {
        throw std::domain_error("field modes need l >= 1 (X_00 vanishes), got l = " +
                                std::to_string(mode.l));
    }
    if (mode.m < -mode.l || mode.m > mode.l) {
        throw std::domain_error("order out of range: l = " + std::to_string(mode.l) +
                                ", m = " + std::to_string(mode.m));
    }
}

ModeIndex mode_at(std::size_t offset) noexcept {
    int l = static_cast<int>(std::sqrt(static_cast<double>(offset + 1)));
    while (static_cast<std::size_t>((l + 1) * (l + 1) - 1) <= offset) ++l;
    while (static_cast<std::size_t>(l * l - 1) > offset) --l;
    return {l, static_cast<int>(offset) - (l * l - 1) - l};
}

// ---------------------------------------------------------------------------
// Legendre functions

LegendreTable::LegendreTable(int l_max, double theta)
    : LegendreTable(l_max, std::cos(theta), std::sin(theta)) {}

LegendreTable LegendreTable::from_cos(int l_max, double x) {
    if (!(std::abs(x) <= 1.0)) {
        throw std::domain_error("Legendre argument outside [-1, 1]: " + std::to_string(x));
    }
    return LegendreTable(l_max, x, std::sqrt((1.0 - x) * (1.0 + x)));
}

LegendreTable::LegendreTable(int l_max, double x, double s) : l_max_(l_max) {
    if (l_max < 0) throw std::domain_error("negative Legendre degree");
    const std::size_t n = index(l_max, l_max) + 1;
    p_.assign(n, 0.0);
    q_.assign(n, 0.0);
    dp_.assign(n, 0.0);

    // Sectoral seeds. q carries one power of sin(theta) less than p.
    p_[index(0, 0)] = 1.0 / std::sqrt(4.0 * kPi);
    for (int m = 1; m <= l_max; ++m) {
        const double c = -std::sqrt((2.0 * m + 1.0) / (2.0 * m));
        const double prev = p_[index(m - 1, m - 1)];
        p_[index(m, m)] = c * s * prev;
        q_[index(m, m)] = c * prev;
    }

    for (int m = 0; m <= l_max; ++m) {
        if (m + 1 <= l_max) {
            const double c = std::sqrt(2.0 * m + 3.0) * x;
            p_[index(m + 1, m)] = c * p_[index(m, m)];
            q_[index(m + 1, m)] = c * q_[index(m, m)];
        }
        double a_prev = std::sqrt((4.0 * (m + 1) * (m + 1) - 1.0) /
                                  (static_cast<double>(m + 1) * (m + 1) - static_cast<double>(m) * m));
        for (int l = m + 2; l <= l_max; ++l) {
            const double ll = static_cast<double>(l) * l;
            const double a = std::sqrt((4.0 * ll - 1.0) / (ll - static_cast<double>(m) * m));
            p_[index(l, m)] = a * (x * p_[index(l - 1, m)] - p_[index(l - 2, m)] / a_prev);
            q_[index(l, m)] = a * (x * q_[index(l - 1, m)] - q_[index(l - 2, m)] / a_prev);
            a_prev = a;
        }
    }
    // dP/dtheta from neighbouring orders; the Condon-Shortley phase makes the
    // m+1 term positive.
    for (int l = 1; l <= l_max; ++l) {
        const double ld = l;
        dp_[index(l, 0)] = std::sqrt(ld * (ld + 1.0)) * p_[index(l, 1)];
        for (int m = 1; m <= l; ++m) {
            const double md = m;
            const double up = m < l ? std::sqrt((ld - md) * (ld + md + 1.0)) * p_[index(l, m + 1)] : 0.0;
            const double down = std::sqrt((ld + md) * (ld - md + 1.0)) * p_[index(l, m - 1)];
            dp_[index(l, m)] = 0.5 * (up - down);
        }
    }
}

double assoc_legendre_norm(int l, int m, double x) {
    if (m < 0 || m > l) {
        throw std::domain_error("associated Legendre order out of range: l = " + std::to_string(l) +
                                ", m = " + std::to_string(m));
    }
    return LegendreTable::from_cos(l, x).value(l, m);
}

cdouble sph_harmonic(int l, int m, double theta, double phi) {
    if (l < 0 || m < -l || m > l) {
        throw std::domain_error("spherical harmonic index out of range: l = " + std::to_string(l) +
                                ", m = " + std::to_string(m));
    }
    const int am = std::abs(m);
    const double p = LegendreTable(l, theta).value(l, am);
    const cdouble y = p * std::polar(1.0, am * phi);
    if (m >= 0) return y;
    return (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

// ---------------------------------------------------------------------------
// Spherical Bessel / Hankel functions

SphericalBessel sph_bessel_table(int l_max, double x) {
    require_positive_argument(x);
    if (l_max < 0) throw std::domain_error("negative Bessel degree");

    SphericalBessel out;
    out.j.assign(static_cast<std::size_t>(l_max) + 1, 0.0);
    out.y.assign(static_cast<std::size_t>(l_max) + 1, 0.0);

    const double sx = std::sin(x);
    const double cx = std::cos(x);
    const double j0 = sx / x;
    const double j1 = sx / (x * x) - cx / x;
    out.j[0] = j0;
    out.y[0] = -cx / x;
    if (l_max >= 1) {
        out.j[1] = j1;
        out.y[1] = -cx / (x * x) - sx / x;
    }
    for (int l = 1; l < l_max; ++l) {
        out.y[l + 1] = (2.0 * l + 1.0) / x * out.y[l] - out.y[l - 1];
    }

    if (static_cast<double>(l_max) <= x) {
        for (int l = 1; l < l_max; ++l) {
            out.j[l + 1] = (2.0 * l + 1.0) / x * out.j[l] - out.j[l - 1];
        }
        return out;
    }

    // Miller's algorithm: recur downward from well above l_max on an
    // arbitrary seed, then fix the scale against the closed forms of j_0, j_1.
    const int start = l_max + 20 + static_cast<int>(std::sqrt(40.0 * (l_max + x)));
    double f_next = 0.0;
    double f = 1.0;
    for (int n = start; n > l_max; --n) {
        const double f_prev = (2.0 * n + 1.0) / x * f - f_next;
        f_next = f;
        f = f_prev;
        if (std::abs(f) > 1e250) {
            f *= 1e-250;
            f_next *= 1e-250;
        }
    }
    out.j[l_max] = f;
    if (l_max >= 1) out.j[l_max - 1] = (2.0 * l_max + 1.0) / x * f - f_next;
    for (int n = l_max - 1; n >= 1; --n) {
        out.j[n - 1] = (2.0 * n + 1.0) / x * out.j[n] - out.j[n + 1];
        if (std::abs(out.j[n - 1]) > 1e250) {
            for (int k = n - 1; k <= l_max; ++k) out.j[k] *= 1e-250;
        }
    }
    double scale = 0.0;
    if (l_max >= 1) {
        const double big = std::max(std::abs(out.j[0]), std::abs(out.j[1]));
        const double f0 = out.j[0] / big;
        const double f1 = out.j[1] / big;
        scale = (j0 * f0 + j1 * f1) / (f0 * f0 + f1 * f1) / big;
    } else {
        scale = j0 / out.j[0];
    }
    for (double& v : out.j) v *= scale;
    return out;
}

HankelTable hankel_table(int l_max, double x) {
    const SphericalBessel b = sph_bessel_table(std::max(l_max, 0), x);
    HankelTable t;
    t.x = x;
    t.h.resize(b.j.size());
    t.deriv.resize(b.j.size());
    for (std::size_t l = 0; l < b.j.size(); ++l) t.h[l] = {b.j[l], b.y[l]};
    t.deriv[0] = std::polar(1.0, x);
    for (std::size_t l = 1; l < t.h.size(); ++l) {
        t.deriv[l] = x * t.h[l - 1] - static_cast<double>(l) * t.h[l];
    }
    return t;
}

cdouble sph_hankel1(int l, double x) {
    if (l < 0) throw std::domain_error("negative Hankel degree");
    return hankel_table(l, x).h[static_cast<std::size_t>(l)];
}

cdouble riccati_h1_deriv(int l, double x) {
    if (l < 1) {
        throw std::domain_error("Riccati-Hankel derivative needs l >= 1, got " + std::to_string(l));
    }
    return hankel_table(l, x).deriv[static_cast<std::size_t>(l)];
}

}  // namespace mpole
