#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "muzzle/image.hpp"

namespace muzzle::codec {

// From-scratch 8x8 block-DCT lossy codec: color transform to luma/chroma,
// optional 4:2:0 subsampling, orthonormal DCT-II, quantization against
// quality-scaled base tables, zigzag + run-length + canonical Huffman
// coding. Streams use the private MZDC container (not interoperable with
// JFIF); the standard-encoder path for experiments lives in image.hpp.

struct QualityLevel {
    int q;
    explicit QualityLevel(int quality); // throws ArgumentError unless 1..100
};

struct QuantizationTable {
    std::array<std::uint16_t, 64> v{}; // row-major 8x8
    void validate() const;             // entries must lie in [1, 255]
};

extern const QuantizationTable kBaseLumaTable;   // ITU-T T.81 Annex K.1
extern const QuantizationTable kBaseChromaTable; // ITU-T T.81 Annex K.2

// IJG quality-to-scale mapping: 5000/q below 50, 200-2q at or above
// (integer arithmetic, matching how libjpeg interprets the knob).
int quality_to_scale(QualityLevel q);

// entry' = clamp(round(entry * scale / 100), 1, 255)
QuantizationTable scale_table(const QuantizationTable& base, int scale_percent);
QuantizationTable luma_table_for_quality(QualityLevel q);
QuantizationTable chroma_table_for_quality(QualityLevel q);

// Orthonormal 2-D DCT-II and its inverse on 8x8 blocks of level-shifted
// intensities. Spans must hold exactly 64 values (ArgumentError otherwise).
void block_dct_forward(std::span<const float> block, std::span<float> coeffs);
void block_dct_inverse(std::span<const float> coeffs, std::span<float> block);

void quantize(std::span<const float> coeffs, const QuantizationTable& table,
              std::span<std::int32_t> levels);
void dequantize(std::span<const std::int32_t> levels, const QuantizationTable& table,
                std::span<float> coeffs);

// Scan position -> block index, generated by the diagonal walk.
const std::array<int, 64>& zigzag_order();

struct EncodeOptions {
    // 4:2:0 chroma below q=95; at q>=95 the encoder always keeps full
    // chroma so near-lossless quality levels stay near-lossless.
    bool chroma_subsample = true;
};

std::vector<std::uint8_t> encode_image(const PixelTensor& img, QualityLevel q,
                                       EncodeOptions opts = {});
// Throws ParseError on malformed/truncated streams.
PixelTensor decode_image(std::span<const std::uint8_t> bytes);

std::pair<std::vector<std::uint8_t>, PixelTensor>
compress_image_reference(const PixelTensor& img, QualityLevel q, EncodeOptions opts = {});

inline constexpr std::array<std::uint8_t, 4> kMagic = {'M', 'Z', 'D', 'C'};
inline constexpr std::uint8_t kFormatVersion = 1;
inline constexpr const char* kFileExtension = ".mzdc";

} // namespace muzzle::codec
