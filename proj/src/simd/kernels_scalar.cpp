#include "leaf_kernels.hpp"

namespace mpole::simd::detail {

void dot_scalar(const double* ar, const double* ai, const double* br, const double* bi,
                std::size_t n, double* out) {
    double sr[4] = {0.0, 0.0, 0.0, 0.0};
    double si[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (std::size_t j = 0; j < 4; ++j) {
            const std::size_t k = i + j;
            sr[j] += ar[k] * br[k] - ai[k] * bi[k];
            si[j] += ar[k] * bi[k] + ai[k] * br[k];
        }
    }
    for (std::size_t j = 0; i < n; ++i, ++j) {
        sr[j] += ar[i] * br[i] - ai[i] * bi[i];
        si[j] += ar[i] * bi[i] + ai[i] * br[i];
    }
    out[0] = (sr[0] + sr[1]) + (sr[2] + sr[3]);
    out[1] = (si[0] + si[1]) + (si[2] + si[3]);
}

void conj_dot_scalar(const double* w, const double* ar, const double* ai, const double* br,
                     const double* bi, std::size_t n, double* out) {
    double sr[4] = {0.0, 0.0, 0.0, 0.0};
    double si[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (std::size_t j = 0; j < 4; ++j) {
            const std::size_t k = i + j;
            sr[j] += w[k] * (ar[k] * br[k] + ai[k] * bi[k]);
            si[j] += w[k] * (ar[k] * bi[k] - ai[k] * br[k]);
        }
    }
    for (std::size_t j = 0; i < n; ++i, ++j) {
        sr[j] += w[i] * (ar[i] * br[i] + ai[i] * bi[i]);
        si[j] += w[i] * (ar[i] * bi[i] - ai[i] * br[i]);
    }
    out[0] = (sr[0] + sr[1]) + (sr[2] + sr[3]);
    out[1] = (si[0] + si[1]) + (si[2] + si[3]);
}

}  // namespace mpole::simd::detail

namespace mpole::simd::detail {

void axpy_scalar(double a_re, double a_im, const double* xr, const double* xi, double* yr,
                 double* yi, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        yr[i] += a_re * xr[i] - a_im * xi[i];
        yi[i] += a_re * xi[i] + a_im * xr[i];
    }
}

}  // namespace mpole::simd::detail
