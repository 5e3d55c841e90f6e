#include "muzzle/kernels.hpp"

#include <cmath>

// Scalar reference lane. Everything here is the contract; the AVX2 lane in
// kernels_avx2.cpp must match these results (see tests/test_kernels.cpp).

namespace muzzle::kernels {

namespace {

struct DctBasis {
    // basis[k][n] = s_k * cos((2n+1) k pi / 16), s_0 = sqrt(1/8), s_k>0 = 1/2
    float c[8][8];
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

// One pass of the separable transform: out = C * in^T, so applying it twice
// yields the full 2-D transform C * X * C^T.
void dct_pass_forward(const float* in, float* out) {
    for (int k = 0; k < 8; ++k) {
        for (int j = 0; j < 8; ++j) {
            float acc = 0.0f;
            for (int n = 0; n < 8; ++n) acc += kDct.c[k][n] * in[j * 8 + n];
            out[k * 8 + j] = acc;
        }
    }
}

// Inverse pass: out = C^T * in^T.
void dct_pass_inverse(const float* in, float* out) {
    for (int k = 0; k < 8; ++k) {
        for (int j = 0; j < 8; ++j) {
            float acc = 0.0f;
            for (int n = 0; n < 8; ++n) acc += kDct.c[n][k] * in[j * 8 + n];
            out[k * 8 + j] = acc;
        }
    }
}

void dct8x8_forward(const float* in, float* out) {
    float tmp[64];
    dct_pass_forward(in, tmp);
    dct_pass_forward(tmp, out);
}

void dct8x8_inverse(const float* in, float* out) {
    float tmp[64];
    dct_pass_inverse(in, tmp);
    dct_pass_inverse(tmp, out);
}

void rgb_to_ycbcr(const float* r, const float* g, const float* b,
                  float* y, float* cb, float* cr, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        float R = r[i], G = g[i], B = b[i];
        y[i] = 0.299f * R + 0.587f * G + 0.114f * B;
        cb[i] = -0.168735892f * R - 0.331264108f * G + 0.5f * B + 128.0f;
        cr[i] = 0.5f * R - 0.418687589f * G - 0.081312411f * B + 128.0f;
    }
}

void ycbcr_to_rgb(const float* y, const float* cb, const float* cr,
                  float* r, float* g, float* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        float Y = y[i], Cb = cb[i] - 128.0f, Cr = cr[i] - 128.0f;
        r[i] = Y + 1.402f * Cr;
        g[i] = Y - 0.344136286f * Cb - 0.714136286f * Cr;
        b[i] = Y + 1.772f * Cb;
    }
}

void scale_shift_clamp(const float* src, float* dst, std::size_t n,
                       float scale, float shift, float lo, float hi) {
    for (std::size_t i = 0; i < n; ++i) {
        float v = src[i] * scale + shift;
        dst[i] = v < lo ? lo : (v > hi ? hi : v);
    }
}

void affine(const float* src, float* dst, std::size_t n, float mean, float inv_std) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = (src[i] - mean) * inv_std;
}

void relu_forward(const float* x, float* y, std::uint8_t* mask, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        bool pos = x[i] > 0.0f;
        y[i] = pos ? x[i] : 0.0f;
        if (mask) mask[i] = pos ? 1 : 0;
    }
}

void relu_backward(const float* dy, const std::uint8_t* mask, float* dx, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dx[i] = mask[i] ? dy[i] : 0.0f;
}

void add_inplace(float* dst, const float* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += src[i];
}

void add(const float* a, const float* b, float* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
}

void scale_inplace(float* dst, float s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] *= s;
}

double sum(const float* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double sum_sq(const float* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(x[i]) * x[i];
    return acc;
}

double sum_sq_diff(const float* a, const float* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = static_cast<double>(a[i]) - b[i];
        acc += d * d;
    }
    return acc;
}

void adam_step(float* p, const float* g, float* m, float* v, std::size_t n,
               float lr, float beta1, float beta2, float eps,
               float bias_corr1, float bias_corr2) {
    float inv_bc1 = 1.0f / bias_corr1;
    float inv_bc2 = 1.0f / bias_corr2;
    for (std::size_t i = 0; i < n; ++i) {
        float gi = g[i];
        m[i] = beta1 * m[i] + (1.0f - beta1) * gi;
        v[i] = beta2 * v[i] + (1.0f - beta2) * gi * gi;
        float mhat = m[i] * inv_bc1;
        float vhat = v[i] * inv_bc2;
        p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

inline int reflect_index(int i, int w) {
    // symmetric extension with edge repeat: -1 -> 0, -2 -> 1, w -> w-1
    while (i < 0 || i >= w) {
        if (i < 0) i = -i - 1;
        if (i >= w) i = 2 * w - 1 - i;
    }
    return i;
}

void blur_row(const float* src, float* dst, int width, const float* taps, int radius) {
    for (int x = 0; x < width; ++x) {
        float acc = 0.0f;
        for (int t = -radius; t <= radius; ++t)
            acc += taps[t + radius] * src[reflect_index(x + t, width)];
        dst[x] = acc;
    }
}

} // namespace

const Ops& scalar_ops() {
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
    return ops;
}

} // namespace muzzle::kernels
