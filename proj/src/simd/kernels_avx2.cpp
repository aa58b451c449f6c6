// Compiled with -mavx2 and without -mfma: products and sums round exactly as
// in the scalar leaf.

#include "leaf_kernels.hpp"

#include <immintrin.h>

namespace mpole::simd::detail {

namespace {

inline void fold(__m256d vr, __m256d vi, const double* tail_r, const double* tail_i,
                 std::size_t tail, double* out) {
    alignas(32) double sr[4];
    alignas(32) double si[4];
    _mm256_store_pd(sr, vr);
    _mm256_store_pd(si, vi);
    for (std::size_t j = 0; j < tail; ++j) {
        sr[j] += tail_r[j];
        si[j] += tail_i[j];
    }
    out[0] = (sr[0] + sr[1]) + (sr[2] + sr[3]);
    out[1] = (si[0] + si[1]) + (si[2] + si[3]);
}

}  // namespace

void dot_avx2(const double* ar, const double* ai, const double* br, const double* bi,
              std::size_t n, double* out) {
    __m256d accr = _mm256_setzero_pd();
    __m256d acci = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xr = _mm256_loadu_pd(ar + i);
        const __m256d xi = _mm256_loadu_pd(ai + i);
        const __m256d yr = _mm256_loadu_pd(br + i);
        const __m256d yi = _mm256_loadu_pd(bi + i);
        const __m256d pr = _mm256_sub_pd(_mm256_mul_pd(xr, yr), _mm256_mul_pd(xi, yi));
        const __m256d pi = _mm256_add_pd(_mm256_mul_pd(xr, yi), _mm256_mul_pd(xi, yr));
        accr = _mm256_add_pd(accr, pr);
        acci = _mm256_add_pd(acci, pi);
    }
    double tr[4];
    double ti[4];
    std::size_t tail = 0;
    for (; i < n; ++i, ++tail) {
        tr[tail] = ar[i] * br[i] - ai[i] * bi[i];
        ti[tail] = ar[i] * bi[i] + ai[i] * br[i];
    }
    fold(accr, acci, tr, ti, tail, out);
}

void conj_dot_avx2(const double* w, const double* ar, const double* ai, const double* br,
                   const double* bi, std::size_t n, double* out) {
    __m256d accr = _mm256_setzero_pd();
    __m256d acci = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d wv = _mm256_loadu_pd(w + i);
        const __m256d xr = _mm256_loadu_pd(ar + i);
        const __m256d xi = _mm256_loadu_pd(ai + i);
        const __m256d yr = _mm256_loadu_pd(br + i);
        const __m256d yi = _mm256_loadu_pd(bi + i);
        const __m256d pr = _mm256_add_pd(_mm256_mul_pd(xr, yr), _mm256_mul_pd(xi, yi));
        const __m256d pi = _mm256_sub_pd(_mm256_mul_pd(xr, yi), _mm256_mul_pd(xi, yr));
        accr = _mm256_add_pd(accr, _mm256_mul_pd(wv, pr));
        acci = _mm256_add_pd(acci, _mm256_mul_pd(wv, pi));
    }
    double tr[4];
    double ti[4];
    std::size_t tail = 0;
    for (; i < n; ++i, ++tail) {
        tr[tail] = w[i] * (ar[i] * br[i] + ai[i] * bi[i]);
        ti[tail] = w[i] * (ar[i] * bi[i] - ai[i] * br[i]);
    }
    fold(accr, acci, tr, ti, tail, out);
}

}  // namespace mpole::simd::detail

namespace mpole::simd::detail {

void axpy_avx2(double a_re, double a_im, const double* xr, const double* xi, double* yr,
               double* yi, std::size_t n) {
    const __m256d cr = _mm256_set1_pd(a_re);
    const __m256d ci = _mm256_set1_pd(a_im);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vr = _mm256_loadu_pd(xr + i);
        const __m256d vi = _mm256_loadu_pd(xi + i);
        const __m256d pr = _mm256_sub_pd(_mm256_mul_pd(cr, vr), _mm256_mul_pd(ci, vi));
        const __m256d pi = _mm256_add_pd(_mm256_mul_pd(cr, vi), _mm256_mul_pd(ci, vr));
        _mm256_storeu_pd(yr + i, _mm256_add_pd(_mm256_loadu_pd(yr + i), pr));
        _mm256_storeu_pd(yi + i, _mm256_add_pd(_mm256_loadu_pd(yi + i), pi));
    }
    for (; i < n; ++i) {
        yr[i] += a_re * xr[i] - a_im * xi[i];
        yi[i] += a_re * xi[i] + a_im * xr[i];
    }
}

}  // namespace mpole::simd::detail
