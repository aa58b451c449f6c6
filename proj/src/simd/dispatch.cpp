#include "mpole/simd/kernels.hpp"

#include "leaf_kernels.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mpole::simd {

namespace {

constexpr Kernels kScalar{Isa::scalar, &detail::dot_scalar, &detail::conj_dot_scalar,
                          &detail::axpy_scalar};
#if defined(MPOLE_HAVE_AVX2)
constexpr Kernels kAvx2{Isa::avx2, &detail::dot_avx2, &detail::conj_dot_avx2,
                          &detail::axpy_avx2};
#endif
#if defined(MPOLE_HAVE_NEON)
constexpr Kernels kNeon{Isa::neon, &detail::dot_neon, &detail::conj_dot_neon,
                          &detail::axpy_neon};
#endif

Isa widest_supported() noexcept {
    if (isa_supported(Isa::avx2)) return Isa::avx2;
    if (isa_supported(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

const Kernels& select_at_startup() {
    if (const char* forced = std::getenv("MPOLE_ISA"); forced != nullptr && *forced != '\0') {
        try {
            return kernels_for(parse_isa(forced));
        } catch (const std::exception& ex) {
            std::fprintf(stderr, "warning: MPOLE_ISA ignored: %s\n", ex.what());
        }
    }
    return kernels_for(widest_supported());
}

// Split point is a multiple of 4 so lane assignment inside leaves never
// depends on where a block starts.
template <class Leaf>
std::complex<double> pairwise(std::size_t begin, std::size_t n, const Leaf& leaf) {
    if (n <= kLeafBlock) {
        double out[2] = {0.0, 0.0};
        if (n > 0) leaf(begin, n, out);
        return {out[0], out[1]};
    }
    const std::size_t half = (n / 2) & ~std::size_t{3};
    const std::complex<double> lo = pairwise(begin, half, leaf);
    const std::complex<double> hi = pairwise(begin + half, n - half, leaf);
    return {lo.real() + hi.real(), lo.imag() + hi.imag()};
}

void require_same_size(std::size_t expected, std::size_t got) {
    if (expected != got) {
        throw std::invalid_argument("kernel operands differ in length: " +
                                    std::to_string(expected) + " vs " + std::to_string(got));
    }
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

Isa parse_isa(std::string_view name) {
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2") return Isa::avx2;
    if (name == "neon") return Isa::neon;
    throw std::invalid_argument("unknown instruction set '" + std::string(name) + "'");
}

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(MPOLE_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::neon:
#if defined(MPOLE_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const Kernels& kernels_for(Isa isa) {
    if (!isa_supported(isa)) {
        throw std::runtime_error("instruction set '" + std::string(isa_name(isa)) +
                                 "' is not available on this machine");
    }
    switch (isa) {
#if defined(MPOLE_HAVE_AVX2)
        case Isa::avx2: return kAvx2;
#endif
#if defined(MPOLE_HAVE_NEON)
        case Isa::neon: return kNeon;
#endif
        default: return kScalar;
    }
}

const Kernels& active_kernels() {
    static const Kernels& chosen = select_at_startup();
    return chosen;
}

std::complex<double> dot(const Kernels& k, ComplexView a, ComplexView b) {
    const std::size_t n = a.size();
    require_same_size(n, a.im.size());
    require_same_size(n, b.re.size());
    require_same_size(n, b.im.size());
    return pairwise(0, n, [&](std::size_t off, std::size_t len, double* out) {
        k.dot(a.re.data() + off, a.im.data() + off, b.re.data() + off, b.im.data() + off, len, out);
    });
}

std::complex<double> conj_dot(const Kernels& k, std::span<const double> w, ComplexView a,
                              ComplexView b) {
    const std::size_t n = w.size();
    require_same_size(n, a.re.size());
    require_same_size(n, a.im.size());
    require_same_size(n, b.re.size());
    require_same_size(n, b.im.size());
    return pairwise(0, n, [&](std::size_t off, std::size_t len, double* out) {
        k.conj_dot(w.data() + off, a.re.data() + off, a.im.data() + off, b.re.data() + off,
                   b.im.data() + off, len, out);
    });
}

void axpy(const Kernels& k, std::complex<double> a, ComplexView x, std::span<double> y_re,
          std::span<double> y_im) {
    const std::size_t n = x.size();
    require_same_size(n, x.im.size());
    require_same_size(n, y_re.size());
    require_same_size(n, y_im.size());
    if (n > 0) k.axpy(a.real(), a.imag(), x.re.data(), x.im.data(), y_re.data(), y_im.data(), n);
}

}  // namespace mpole::simd
