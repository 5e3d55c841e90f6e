#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace muzzle::kernels {

// Arithmetic inner loops come in two lanes: a scalar reference implementation
// and an AVX2/FMA variant. The active lane is chosen once at startup from
// CPUID and can be forced with MUZZLE_KERNEL_BACKEND=scalar|avx2 (tests use
// this to check lane equivalence). Both lanes implement identical contracts;
// see tests/test_kernels.cpp.

enum class Backend { scalar, avx2 };

struct Ops {
    // Orthonormal 2-D DCT-II / DCT-III on an 8x8 block.
    void (*dct8x8_forward)(const float* in, float* out);
    void (*dct8x8_inverse)(const float* in, float* out);

    // Planar color transforms, n pixels, values on the 0..255 scale.
    void (*rgb_to_ycbcr)(const float* r, const float* g, const float* b,
                         float* y, float* cb, float* cr, std::size_t n);
    void (*ycbcr_to_rgb)(const float* y, const float* cb, const float* cr,
                         float* r, float* g, float* b, std::size_t n);

    // dst = (src * scale + shift), then clamp to [lo, hi].
    void (*scale_shift_clamp)(const float* src, float* dst, std::size_t n,
                              float scale, float shift, float lo, float hi);

    // dst = (src - mean) * inv_std  (per-plane affine used by normalize).
    void (*affine)(const float* src, float* dst, std::size_t n, float mean, float inv_std);

    // y = max(x, 0); backward: dx = dy where mask, else 0.
    void (*relu_forward)(const float* x, float* y, std::uint8_t* mask, std::size_t n);
    void (*relu_backward)(const float* dy, const std::uint8_t* mask, float* dx, std::size_t n);

    // dst += src
    void (*add_inplace)(float* dst, const float* src, std::size_t n);
    // dst = a + b
    void (*add)(const float* a, const float* b, float* dst, std::size_t n);
    // dst *= s
    void (*scale_inplace)(float* dst, float s, std::size_t n);

    double (*sum)(const float* x, std::size_t n);
    double (*sum_sq)(const float* x, std::size_t n);
    // Sum of squared differences (MSE numerator).
    double (*sum_sq_diff)(const float* a, const float* b, std::size_t n);

    // One Adam step over a parameter slab. m/v updated in place.
    void (*adam_step)(float* p, const float* g, float* m, float* v, std::size_t n,
                      float lr, float beta1, float beta2, float eps,
                      float bias_corr1, float bias_corr2);

    // Horizontal 1-D convolution along rows with symmetric (repeat-edge)
    // border, kernel of 2*radius+1 normalized taps.
    void (*blur_row)(const float* src, float* dst, int width, const float* taps, int radius);
};

Backend active_backend();
const Ops& ops();
std::string backend_name();

// Exposed for tests: lane tables regardless of dispatch.
const Ops& scalar_ops();
const Ops* avx2_ops(); // nullptr when unsupported by CPU or build

bool cpu_has_avx2();

} // namespace muzzle::kernels
