// Two float64x2 accumulators stand in for the four scalar lanes:
// lo holds lanes {0, 1}, hi holds lanes {2, 3}. vfmaq is avoided so results
// match the scalar leaf bit for bit.

#include "leaf_kernels.hpp"

#include <arm_neon.h>

namespace mpole::simd::detail {

namespace {

inline void fold(float64x2_t lo_r, float64x2_t hi_r, float64x2_t lo_i, float64x2_t hi_i,
                 const double* tail_r, const double* tail_i, std::size_t tail, double* out) {
    double sr[4];
    double si[4];
    vst1q_f64(sr, lo_r);
    vst1q_f64(sr + 2, hi_r);
    vst1q_f64(si, lo_i);
    vst1q_f64(si + 2, hi_i);
    for (std::size_t j = 0; j < tail; ++j) {
        sr[j] += tail_r[j];
        si[j] += tail_i[j];
    }
    out[0] = (sr[0] + sr[1]) + (sr[2] + sr[3]);
    out[1] = (si[0] + si[1]) + (si[2] + si[3]);
}

inline void cmul(float64x2_t xr, float64x2_t xi, float64x2_t yr, float64x2_t yi, float64x2_t& pr,
                 float64x2_t& pi) {
    pr = vsubq_f64(vmulq_f64(xr, yr), vmulq_f64(xi, yi));
    pi = vaddq_f64(vmulq_f64(xr, yi), vmulq_f64(xi, yr));
}

inline void cmul_conj(float64x2_t xr, float64x2_t xi, float64x2_t yr, float64x2_t yi,
                      float64x2_t& pr, float64x2_t& pi) {
    pr = vaddq_f64(vmulq_f64(xr, yr), vmulq_f64(xi, yi));
    pi = vsubq_f64(vmulq_f64(xr, yi), vmulq_f64(xi, yr));
}

}  // namespace

void dot_neon(const double* ar, const double* ai, const double* br, const double* bi,
              std::size_t n, double* out) {
    float64x2_t lo_r = vdupq_n_f64(0.0), hi_r = vdupq_n_f64(0.0);
    float64x2_t lo_i = vdupq_n_f64(0.0), hi_i = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        float64x2_t pr, pi;
        cmul(vld1q_f64(ar + i), vld1q_f64(ai + i), vld1q_f64(br + i), vld1q_f64(bi + i), pr, pi);
        lo_r = vaddq_f64(lo_r, pr);
        lo_i = vaddq_f64(lo_i, pi);
        cmul(vld1q_f64(ar + i + 2), vld1q_f64(ai + i + 2), vld1q_f64(br + i + 2),
             vld1q_f64(bi + i + 2), pr, pi);
        hi_r = vaddq_f64(hi_r, pr);
        hi_i = vaddq_f64(hi_i, pi);
    }
    double tr[4];
    double ti[4];
    std::size_t tail = 0;
    for (; i < n; ++i, ++tail) {
        tr[tail] = ar[i] * br[i] - ai[i] * bi[i];
        ti[tail] = ar[i] * bi[i] + ai[i] * br[i];
    }
    fold(lo_r, hi_r, lo_i, hi_i, tr, ti, tail, out);
}

void conj_dot_neon(const double* w, const double* ar, const double* ai, const double* br,
                   const double* bi, std::size_t n, double* out) {
    float64x2_t lo_r = vdupq_n_f64(0.0), hi_r = vdupq_n_f64(0.0);
    float64x2_t lo_i = vdupq_n_f64(0.0), hi_i = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        float64x2_t pr, pi;
        cmul_conj(vld1q_f64(ar + i), vld1q_f64(ai + i), vld1q_f64(br + i), vld1q_f64(bi + i), pr,
                  pi);
        const float64x2_t w_lo = vld1q_f64(w + i);
        lo_r = vaddq_f64(lo_r, vmulq_f64(w_lo, pr));
        lo_i = vaddq_f64(lo_i, vmulq_f64(w_lo, pi));
        cmul_conj(vld1q_f64(ar + i + 2), vld1q_f64(ai + i + 2), vld1q_f64(br + i + 2),
                  vld1q_f64(bi + i + 2), pr, pi);
        const float64x2_t w_hi = vld1q_f64(w + i + 2);
        hi_r = vaddq_f64(hi_r, vmulq_f64(w_hi, pr));
        hi_i = vaddq_f64(hi_i, vmulq_f64(w_hi, pi));
    }
    double tr[4];
    double ti[4];
    std::size_t tail = 0;
    for (; i < n; ++i, ++tail) {
        tr[tail] = w[i] * (ar[i] * br[i] + ai[i] * bi[i]);
        ti[tail] = w[i] * (ar[i] * bi[i] - ai[i] * br[i]);
    }
    fold(lo_r, hi_r, lo_i, hi_i, tr, ti, tail, out);
}

}  // namespace mpole::simd::detail

namespace mpole::simd::detail {

void axpy_neon(double a_re, double a_im, const double* xr, const double* xi, double* yr,
               double* yi, std::size_t n) {
    const float64x2_t cr = vdupq_n_f64(a_re);
    const float64x2_t ci = vdupq_n_f64(a_im);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t pr, pi;
        cmul(cr, ci, vld1q_f64(xr + i), vld1q_f64(xi + i), pr, pi);
        vst1q_f64(yr + i, vaddq_f64(vld1q_f64(yr + i), pr));
        vst1q_f64(yi + i, vaddq_f64(vld1q_f64(yi + i), pi));
    }
    for (; i < n; ++i) {
        yr[i] += a_re * xr[i] - a_im * xi[i];
        yi[i] += a_re * xi[i] + a_im * xr[i];
    }
}

}  // namespace mpole::simd::detail
