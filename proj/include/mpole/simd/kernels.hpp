#pragma once

// Complex reduction kernels behind every quadrature sum and mode synthesis.
//
// Each instruction set provides a leaf kernel that accumulates a block into
// four lanes (element i goes to lane i % 4) and folds them as
// (l0 + l1) + (l2 + l3). Blocks are combined by a fixed pairwise tree that
// does not depend on the instruction set. Multiplies and adds are never
// fused, so every variant returns bit-identical results to the scalar one.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace mpole::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

/// Parses "scalar", "avx2" or "neon"; throws std::invalid_argument otherwise.
Isa parse_isa(std::string_view name);

/// True when the variant is compiled in and the running CPU supports it.
bool isa_supported(Isa isa) noexcept;

/// Split-complex read-only view: re[i] + i*im[i].
struct ComplexView {
    std::span<const double> re;
    std::span<const double> im;

    std::size_t size() const noexcept { return re.size(); }
};

/// Leaf signatures: reduce n elements into out[0] (real) and out[1] (imag).
using DotLeaf = void (*)(const double* ar, const double* ai, const double* br, const double* bi,
                         std::size_t n, double* out);
using AxpyLeaf = void (*)(double a_re, double a_im, const double* xr, const double* xi, double* yr,
                          double* yi, std::size_t n);
using WeightedDotLeaf = void (*)(const double* w, const double* ar, const double* ai,
                                 const double* br, const double* bi, std::size_t n, double* out);

struct Kernels {
    Isa isa;
    DotLeaf dot;                    // sum a_i b_i
    WeightedDotLeaf conj_dot;       // sum w_i conj(a_i) b_i
    AxpyLeaf axpy;                  // y_i += a x_i
};

/// Kernel table for a specific variant; throws std::runtime_error if unsupported.
const Kernels& kernels_for(Isa isa);

/// Variant chosen once per process: the MPOLE_ISA environment variable if set
/// to a supported variant (otherwise a warning goes to stderr), else the widest
/// supported instruction set.
const Kernels& active_kernels();

/// Leaf block length of the pairwise tree.
inline constexpr std::size_t kLeafBlock = 128;

std::complex<double> dot(const Kernels& k, ComplexView a, ComplexView b);
std::complex<double> conj_dot(const Kernels& k, std::span<const double> w, ComplexView a,
                              ComplexView b);

/// y += a * x elementwise (no reduction, so trivially order independent).
void axpy(const Kernels& k, std::complex<double> a, ComplexView x, std::span<double> y_re,
          std::span<double> y_im);

inline std::complex<double> dot(ComplexView a, ComplexView b) {
    return dot(active_kernels(), a, b);
}
inline std::complex<double> conj_dot(std::span<const double> w, ComplexView a, ComplexView b) {
    return conj_dot(active_kernels(), w, a, b);
}

inline void axpy(std::complex<double> a, ComplexView x, std::span<double> y_re,
                 std::span<double> y_im) {
    axpy(active_kernels(), a, x, y_re, y_im);
}

}  // namespace mpole::simd
