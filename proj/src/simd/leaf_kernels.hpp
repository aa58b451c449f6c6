#pragma once

#include <cstddef>

namespace mpole::simd::detail {

void dot_scalar(const double* ar, const double* ai, const double* br, const double* bi,
                std::size_t n, double* out);
void axpy_scalar(double a_re, double a_im, const double* xr, const double* xi, double* yr, double* yi,
                 std::size_t n);
void conj_dot_scalar(const double* w, const double* ar, const double* ai, const double* br,
                     const double* bi, std::size_t n, double* out);

#if defined(MPOLE_HAVE_AVX2)
void dot_avx2(const double* ar, const double* ai, const double* br, const double* bi,
              std::size_t n, double* out);
void axpy_avx2(double a_re, double a_im, const double* xr, const double* xi, double* yr, double* yi,
                 std::size_t n);
void conj_dot_avx2(const double* w, const double* ar, const double* ai, const double* br,
                   const double* bi, std::size_t n, double* out);
#endif

#if defined(MPOLE_HAVE_NEON)
void dot_neon(const double* ar, const double* ai, const double* br, const double* bi,
              std::size_t n, double* out);
void axpy_neon(double a_re, double a_im, const double* xr, const double* xi, double* yr, double* yi,
                 std::size_t n);
void conj_dot_neon(const double* w, const double* ar, const double* ai, const double* br,
                   const double* bi, std::size_t n, double* out);
#endif

}  // namespace mpole::simd::detail
