#include "muzzle/kernels.hpp"

// AVX2/FMA lane. Built with -mavx2 -mfma (see src/CMakeLists.txt); only ever
// dispatched to after a CPUID check. Falls out of the build on non-x86.

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cmath>

namespace muzzle::kernels {

namespace {

struct DctBasis {
    alignas(32) float c[8][8];
    DctBasis() {
        const double pi = 3.14159265358979323846;
        for (int k = 0; k < 8; ++k) {
            double s = (k == 0) ? std::sqrt(1.0 / 8.0) : 0.5;
            for (int n = 0; n < 8; ++n)
                c[k][n] = static_cast<float>(s * std::cos((2 * n + 1) * k * pi / 16.0));
        }
    }
};

const DctBasis kDct;

inline void transpose8x8(__m256 r[8]) {
    __m256 t0 = _mm256_unpacklo_ps(r[0], r[1]);
    __m256 t1 = _mm256_unpackhi_ps(r[0], r[1]);
    __m256 t2 = _mm256_unpacklo_ps(r[2], r[3]);
    __m256 t3 = _mm256_unpackhi_ps(r[2], r[3]);
    __m256 t4 = _mm256_unpacklo_ps(r[4], r[5]);
    __m256 t5 = _mm256_unpackhi_ps(r[4], r[5]);
    __m256 t6 = _mm256_unpacklo_ps(r[6], r[7]);
    __m256 t7 = _mm256_unpackhi_ps(r[6], r[7]);
    __m256 s0 = _mm256_shuffle_ps(t0, t2, _MM_SHUFFLE(1, 0, 1, 0));
    __m256 s1 = _mm256_shuffle_ps(t0, t2, _MM_SHUFFLE(3, 2, 3, 2));
    __m256 s2 = _mm256_shuffle_ps(t1, t3, _MM_SHUFFLE(1, 0, 1, 0));
    __m256 s3 = _mm256_shuffle_ps(t1, t3, _MM_SHUFFLE(3, 2, 3, 2));
    __m256 s4 = _mm256_shuffle_ps(t4, t6, _MM_SHUFFLE(1, 0, 1, 0));
    __m256 s5 = _mm256_shuffle_ps(t4, t6, _MM_SHUFFLE(3, 2, 3, 2));
    __m256 s6 = _mm256_shuffle_ps(t5, t7, _MM_SHUFFLE(1, 0, 1, 0));
    __m256 s7 = _mm256_shuffle_ps(t5, t7, _MM_SHUFFLE(3, 2, 3, 2));
    r[0] = _mm256_permute2f128_ps(s0, s4, 0x20);
    r[1] = _mm256_permute2f128_ps(s1, s5, 0x20);
    r[2] = _mm256_permute2f128_ps(s2, s6, 0x20);
    r[3] = _mm256_permute2f128_ps(s3, s7, 0x20);
    r[4] = _mm256_permute2f128_ps(s0, s4, 0x31);
    r[5] = _mm256_permute2f128_ps(s1, s5, 0x31);
    r[6] = _mm256_permute2f128_ps(s2, s6, 0x31);
    r[7] = _mm256_permute2f128_ps(s3, s7, 0x31);
}

// out row k = sum_n C[k][n] * column_n, i.e. the same C * in^T pass as the
// scalar lane, with the transpose done in registers.
inline void dct_pass(const __m256 in[8], __m256 out[8], bool inverse) {
    __m256 t[8];
    for (int i = 0; i < 8; ++i) t[i] = in[i];
    transpose8x8(t);
    for (int k = 0; k < 8; ++k) {
        __m256 acc = _mm256_setzero_ps();
        for (int n = 0; n < 8; ++n) {
            float coef = inverse ? kDct.c[n][k] : kDct.c[k][n];
            acc = _mm256_fmadd_ps(_mm256_set1_ps(coef), t[n], acc);
        }
        out[k] = acc;
    }
}

void dct8x8_forward(const float* in, float* out) {
    __m256 r[8], tmp[8];
    for (int i = 0; i < 8; ++i) r[i] = _mm256_loadu_ps(in + 8 * i);
    dct_pass(r, tmp, false);
    dct_pass(tmp, r, false);
    for (int i = 0; i < 8; ++i) _mm256_storeu_ps(out + 8 * i, r[i]);
}

void dct8x8_inverse(const float* in, float* out) {
    __m256 r[8], tmp[8];
    for (int i = 0; i < 8; ++i) r[i] = _mm256_loadu_ps(in + 8 * i);
    dct_pass(r, tmp, true);
    dct_pass(tmp, r, true);
    for (int i = 0; i < 8; ++i) _mm256_storeu_ps(out + 8 * i, r[i]);
}

void rgb_to_ycbcr(const float* r, const float* g, const float* b,
                  float* y, float* cb, float* cr, std::size_t n) {
    std::size_t i = 0;
    const __m256 c128 = _mm256_set1_ps(128.0f);
    for (; i + 8 <= n; i += 8) {
        __m256 R = _mm256_loadu_ps(r + i), G = _mm256_loadu_ps(g + i), B = _mm256_loadu_ps(b + i);
        __m256 Y = _mm256_fmadd_ps(_mm256_set1_ps(0.114f), B,
                   _mm256_fmadd_ps(_mm256_set1_ps(0.587f), G,
                   _mm256_mul_ps(_mm256_set1_ps(0.299f), R)));
        __m256 Cb = _mm256_add_ps(c128,
                    _mm256_fmadd_ps(_mm256_set1_ps(0.5f), B,
                    _mm256_fmadd_ps(_mm256_set1_ps(-0.331264108f), G,
                    _mm256_mul_ps(_mm256_set1_ps(-0.168735892f), R))));
        __m256 Cr = _mm256_add_ps(c128,
                    _mm256_fmadd_ps(_mm256_set1_ps(-0.081312411f), B,
                    _mm256_fmadd_ps(_mm256_set1_ps(-0.418687589f), G,
                    _mm256_mul_ps(_mm256_set1_ps(0.5f), R))));
        _mm256_storeu_ps(y + i, Y);
        _mm256_storeu_ps(cb + i, Cb);
        _mm256_storeu_ps(cr + i, Cr);
    }
    for (; i < n; ++i) {
        float R = r[i], G = g[i], B = b[i];
        y[i] = 0.299f * R + 0.587f * G + 0.114f * B;
        cb[i] = -0.168735892f * R - 0.331264108f * G + 0.5f * B + 128.0f;
        cr[i] = 0.5f * R - 0.418687589f * G - 0.081312411f * B + 128.0f;
    }
}

void ycbcr_to_rgb(const float* y, const float* cb, const float* cr,
                  float* r, float* g, float* b, std::size_t n) {
    std::size_t i = 0;
    const __m256 c128 = _mm256_set1_ps(128.0f);
    for (; i + 8 <= n; i += 8) {
        __m256 Y = _mm256_loadu_ps(y + i);
        __m256 Cb = _mm256_sub_ps(_mm256_loadu_ps(cb + i), c128);
        __m256 Cr = _mm256_sub_ps(_mm256_loadu_ps(cr + i), c128);
        _mm256_storeu_ps(r + i, _mm256_fmadd_ps(_mm256_set1_ps(1.402f), Cr, Y));
        _mm256_storeu_ps(g + i, _mm256_fmadd_ps(_mm256_set1_ps(-0.714136286f), Cr,
                                _mm256_fmadd_ps(_mm256_set1_ps(-0.344136286f), Cb, Y)));
        _mm256_storeu_ps(b + i, _mm256_fmadd_ps(_mm256_set1_ps(1.772f), Cb, Y));
    }
    for (; i < n; ++i) {
        float Y = y[i], Cb = cb[i] - 128.0f, Cr = cr[i] - 128.0f;
        r[i] = Y + 1.402f * Cr;
        g[i] = Y - 0.344136286f * Cb - 0.714136286f * Cr;
        b[i] = Y + 1.772f * Cb;
    }
}

void scale_shift_clamp(const float* src, float* dst, std::size_t n,
                       float scale, float shift, float lo, float hi) {
    std::size_t i = 0;
    __m256 vs = _mm256_set1_ps(scale), vt = _mm256_set1_ps(shift);
    __m256 vlo = _mm256_set1_ps(lo), vhi = _mm256_set1_ps(hi);
    for (; i + 8 <= n; i += 8) {
        __m256 v = _mm256_fmadd_ps(_mm256_loadu_ps(src + i), vs, vt);
        v = _mm256_min_ps(_mm256_max_ps(v, vlo), vhi);
        _mm256_storeu_ps(dst + i, v);
    }
    for (; i < n; ++i) {
        float v = src[i] * scale + shift;
        dst[i] = v < lo ? lo : (v > hi ? hi : v);
    }
}

void affine(const float* src, float* dst, std::size_t n, float mean, float inv_std) {
    std::size_t i = 0;
    __m256 vm = _mm256_set1_ps(mean), vi = _mm256_set1_ps(inv_std);
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(dst + i, _mm256_mul_ps(_mm256_sub_ps(_mm256_loadu_ps(src + i), vm), vi));
    for (; i < n; ++i) dst[i] = (src[i] - mean) * inv_std;
}

void relu_forward(const float* x, float* y, std::uint8_t* mask, std::size_t n) {
    std::size_t i = 0;
    const __m256 zero = _mm256_setzero_ps();
    for (; i + 8 <= n; i += 8) {
        __m256 v = _mm256_loadu_ps(x + i);
        __m256 pos = _mm256_cmp_ps(v, zero, _CMP_GT_OQ);
        _mm256_storeu_ps(y + i, _mm256_and_ps(v, pos));
        if (mask) {
            int bits = _mm256_movemask_ps(pos);
            for (int k = 0; k < 8; ++k) mask[i + k] = (bits >> k) & 1;
        }
    }
    for (; i < n; ++i) {
        bool pos = x[i] > 0.0f;
        y[i] = pos ? x[i] : 0.0f;
        if (mask) mask[i] = pos ? 1 : 0;
    }
}

void relu_backward(const float* dy, const std::uint8_t* mask, float* dx, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dx[i] = mask[i] ? dy[i] : 0.0f;
}

void add_inplace(float* dst, const float* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(dst + i, _mm256_add_ps(_mm256_loadu_ps(dst + i), _mm256_loadu_ps(src + i)));
    for (; i < n; ++i) dst[i] += src[i];
}

void add(const float* a, const float* b, float* dst, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(dst + i, _mm256_add_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
    for (; i < n; ++i) dst[i] = a[i] + b[i];
}

void scale_inplace(float* dst, float s, std::size_t n) {
    std::size_t i = 0;
    __m256 vs = _mm256_set1_ps(s);
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(dst + i, _mm256_mul_ps(_mm256_loadu_ps(dst + i), vs));
    for (; i < n; ++i) dst[i] *= s;
}

inline double hsum_pd(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double sum(const float* x, std::size_t n) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_cvtps_pd(_mm_loadu_ps(x + i)));
    double s = hsum_pd(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

double sum_sq(const float* x, std::size_t n) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_cvtps_pd(_mm_loadu_ps(x + i));
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum_pd(acc);
    for (; i < n; ++i) s += static_cast<double>(x[i]) * x[i];
    return s;
}

double sum_sq_diff(const float* a, const float* b, std::size_t n) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_cvtps_pd(_mm_loadu_ps(a + i));
        __m256d vb = _mm256_cvtps_pd(_mm_loadu_ps(b + i));
        __m256d d = _mm256_sub_pd(va, vb);
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum_pd(acc);
    for (; i < n; ++i) {
        double d = static_cast<double>(a[i]) - b[i];
        s += d * d;
    }
    return s;
}

void adam_step(float* p, const float* g, float* m, float* v, std::size_t n,
               float lr, float beta1, float beta2, float eps,
               float bias_corr1, float bias_corr2) {
    float inv_bc1 = 1.0f / bias_corr1;
    float inv_bc2 = 1.0f / bias_corr2;
    std::size_t i = 0;
    __m256 vb1 = _mm256_set1_ps(beta1), vb1c = _mm256_set1_ps(1.0f - beta1);
    __m256 vb2 = _mm256_set1_ps(beta2), vb2c = _mm256_set1_ps(1.0f - beta2);
    __m256 vlr = _mm256_set1_ps(lr), veps = _mm256_set1_ps(eps);
    __m256 vibc1 = _mm256_set1_ps(inv_bc1), vibc2 = _mm256_set1_ps(inv_bc2);
    for (; i + 8 <= n; i += 8) {
        __m256 gi = _mm256_loadu_ps(g + i);
        __m256 mi = _mm256_fmadd_ps(vb1c, gi, _mm256_mul_ps(vb1, _mm256_loadu_ps(m + i)));
        __m256 vi = _mm256_fmadd_ps(vb2c, _mm256_mul_ps(gi, gi),
                                    _mm256_mul_ps(vb2, _mm256_loadu_ps(v + i)));
        _mm256_storeu_ps(m + i, mi);
        _mm256_storeu_ps(v + i, vi);
        __m256 mhat = _mm256_mul_ps(mi, vibc1);
        __m256 vhat = _mm256_mul_ps(vi, vibc2);
        __m256 denom = _mm256_add_ps(_mm256_sqrt_ps(vhat), veps);
        __m256 upd = _mm256_div_ps(_mm256_mul_ps(vlr, mhat), denom);
        _mm256_storeu_ps(p + i, _mm256_sub_ps(_mm256_loadu_ps(p + i), upd));
    }
    for (; i < n; ++i) {
        float gi = g[i];
        m[i] = beta1 * m[i] + (1.0f - beta1) * gi;
        v[i] = beta2 * v[i] + (1.0f - beta2) * gi * gi;
        float mhat = m[i] * inv_bc1;
        float vhat = v[i] * inv_bc2;
        p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

inline int reflect_index(int i, int w) {
    while (i < 0 || i >= w) {
        if (i < 0) i = -i - 1;
        if (i >= w) i = 2 * w - 1 - i;
    }
    return i;
}

void blur_row(const float* src, float* dst, int width, const float* taps, int radius) {
    int lo = radius;
    int hi = width - radius; // interior: src[x+t] always in range
    if (hi - lo < 8) {
        lo = width;
    }
    for (int x = 0; x < lo && x < width; ++x) {
        float acc = 0.0f;
        for (int t = -radius; t <= radius; ++t)
            acc += taps[t + radius] * src[reflect_index(x + t, width)];
        dst[x] = acc;
    }
    int x = lo;
    for (; x + 8 <= hi; x += 8) {
        __m256 acc = _mm256_setzero_ps();
        for (int t = -radius; t <= radius; ++t)
            acc = _mm256_fmadd_ps(_mm256_set1_ps(taps[t + radius]),
                                  _mm256_loadu_ps(src + x + t), acc);
        _mm256_storeu_ps(dst + x, acc);
    }
    for (; x < width; ++x) {
        float acc = 0.0f;
        for (int t = -radius; t <= radius; ++t)
            acc += taps[t + radius] * src[reflect_index(x + t, width)];
        dst[x] = acc;
    }
}

} // namespace

const Ops* avx2_ops() {
    static const Ops ops = {
        dct8x8_forward, dct8x8_inverse,
        rgb_to_ycbcr,   ycbcr_to_rgb,
        scale_shift_clamp, affine,
        relu_forward,   relu_backward,
        add_inplace,    add,           scale_inplace,
        sum,            sum_sq,        sum_sq_diff,
        adam_step,
        blur_row,
    };
    return &ops;
}

} // namespace muzzle::kernels

#else // non-x86

namespace muzzle::kernels {
const Ops* avx2_ops() { return nullptr; }
} // namespace muzzle::kernels

#endif
