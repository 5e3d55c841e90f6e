#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace muzzle {

// Planar float image, channel-major: data[(c*height + y)*width + x].
// Intensities live in [0,1] until model normalization is applied; codec and
// I/O boundaries convert to/from the 0..255 scale.
struct PixelTensor {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<float> data;

    PixelTensor() = default;
    PixelTensor(int h, int w, int c)
        : height(h), width(w), channels(c),
          data(static_cast<std::size_t>(h) * w * c, 0.0f) {}

    float& at(int c, int y, int x) {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    float at(int c, int y, int x) const {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    float* plane(int c) { return data.data() + static_cast<std::size_t>(c) * height * width; }
    const float* plane(int c) const {
        return data.data() + static_cast<std::size_t>(c) * height * width;
    }
    std::size_t pixels_per_plane() const {
        return static_cast<std::size_t>(height) * width;
    }
    bool empty() const { return data.empty(); }

    bool all_finite() const;
    bool in_unit_range(float slack = 0.0f) const;
    // Throws DataError when shape/data are inconsistent or values non-finite.
    void validate() const;
};

// Mean squared error on the 0..255 intensity scale, averaged over all
// channels and pixels. Shapes must match.
double image_mse(const PixelTensor& a, const PixelTensor& b);
// Max absolute difference in rounded 8-bit intensity levels.
int image_max_level_error(const PixelTensor& a, const PixelTensor& b);
// 10*log10(255^2 / mse); +inf when mse == 0.
double psnr_from_mse(double mse);

// File I/O (JPEG/PNG via OpenCV imgcodecs; .mzdc via the reference codec).
bool is_supported_image_file(const std::filesystem::path& p);
PixelTensor load_image(const std::filesystem::path& p);          // throws DataError
PixelTensor decode_image_bytes(const std::vector<std::uint8_t>& bytes,
                               const std::string& ext_hint = ".jpg");
void save_png(const std::filesystem::path& p, const PixelTensor& img);
void save_jpeg(const std::filesystem::path& p, const PixelTensor& img, int quality,
               bool optimize = false);
std::vector<std::uint8_t> encode_jpeg_bytes(const PixelTensor& img, int quality,
                                            bool optimize = false);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& p);
void write_file_bytes(const std::filesystem::path& p, const std::vector<std::uint8_t>& bytes);

} // namespace muzzle
