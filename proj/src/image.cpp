#include "muzzle/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "muzzle/codec.hpp"
#include "muzzle/common.hpp"
#include "muzzle/kernels.hpp"

namespace muzzle {

namespace fs = std::filesystem;

bool PixelTensor::all_finite() const {
    for (float v : data)
        if (!std::isfinite(v)) return false;
    return true;
}

bool PixelTensor::in_unit_range(float slack) const {
    for (float v : data)
        if (v < -slack || v > 1.0f + slack) return false;
    return true;
}

void PixelTensor::validate() const {
    if (height <= 0 || width <= 0 || channels <= 0)
        throw DataError(strformat("invalid image shape %dx%dx%d", height, width, channels));
    if (data.size() != static_cast<std::size_t>(height) * width * channels)
        throw DataError("image data size does not match declared shape");
    if (!all_finite()) throw DataError("image contains non-finite values");
}

double image_mse(const PixelTensor& a, const PixelTensor& b) {
    if (a.height != b.height || a.width != b.width || a.channels != b.channels)
        throw ArgumentError("image_mse: shape mismatch");
    if (a.data.empty()) return 0.0;
    double ss = kernels::ops().sum_sq_diff(a.data.data(), b.data.data(), a.data.size());
    return ss * 255.0 * 255.0 / static_cast<double>(a.data.size());
}

int image_max_level_error(const PixelTensor& a, const PixelTensor& b) {
    if (a.height != b.height || a.width != b.width || a.channels != b.channels)
        throw ArgumentError("image_max_level_error: shape mismatch");
    int worst = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        int la = static_cast<int>(std::lround(std::clamp(a.data[i], 0.0f, 1.0f) * 255.0f));
        int lb = static_cast<int>(std::lround(std::clamp(b.data[i], 0.0f, 1.0f) * 255.0f));
        worst = std::max(worst, std::abs(la - lb));
    }
    return worst;
}

double psnr_from_mse(double mse) {
    if (mse <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

bool is_supported_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".jpg" || ext == ".jpeg" || ext == ".png" || ext == ".mzdc";
}

namespace {

PixelTensor from_bgr_mat(const cv::Mat& m) {
    if (m.empty()) throw DataError("image decode produced empty matrix");
    cv::Mat bgr;
    if (m.channels() == 3) {
        bgr = m;
    } else if (m.channels() == 1) {
        cv::Mat tmp;
        cv::merge(std::vector<cv::Mat>{m, m, m}, tmp);
        bgr = tmp;
    } else {
        throw DataError(strformat("unsupported channel count %d", m.channels()));
    }
    PixelTensor img(bgr.rows, bgr.cols, 3);
    const float inv = 1.0f / 255.0f;
    for (int y = 0; y < bgr.rows; ++y) {
        const unsigned char* row = bgr.ptr<unsigned char>(y);
        for (int x = 0; x < bgr.cols; ++x) {
            img.at(0, y, x) = row[x * 3 + 2] * inv; // R
            img.at(1, y, x) = row[x * 3 + 1] * inv; // G
            img.at(2, y, x) = row[x * 3 + 0] * inv; // B
        }
    }
    return img;
}

cv::Mat to_bgr_mat(const PixelTensor& img) {
    if (img.channels != 3) throw ArgumentError("expected a 3-channel image");
    cv::Mat m(img.height, img.width, CV_8UC3);
    for (int y = 0; y < img.height; ++y) {
        unsigned char* row = m.ptr<unsigned char>(y);
        for (int x = 0; x < img.width; ++x) {
            auto q = [&](int c) {
                float v = std::clamp(img.at(c, y, x), 0.0f, 1.0f) * 255.0f;
                return static_cast<unsigned char>(std::lround(v));
            };
            row[x * 3 + 0] = q(2);
            row[x * 3 + 1] = q(1);
            row[x * 3 + 2] = q(0);
        }
    }
    return m;
}

bool is_mzdc(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".mzdc";
}

} // namespace

PixelTensor load_image(const fs::path& p) {
    if (!fs::exists(p)) throw DataError("image file not found: " + p.string());
    if (is_mzdc(p)) {
        return codec::decode_image(read_file_bytes(p));
    }
    cv::Mat m = cv::imread(p.string(), cv::IMREAD_COLOR);
    if (m.empty()) throw DataError("cannot decode image: " + p.string());
    return from_bgr_mat(m);
}

PixelTensor decode_image_bytes(const std::vector<std::uint8_t>& bytes, const std::string& ext_hint) {
    if (ext_hint == ".mzdc") return codec::decode_image(bytes);
    cv::Mat raw(1, static_cast<int>(bytes.size()), CV_8UC1, const_cast<std::uint8_t*>(bytes.data()));
    cv::Mat m = cv::imdecode(raw, cv::IMREAD_COLOR);
    if (m.empty()) throw DataError("cannot decode image bytes");
    return from_bgr_mat(m);
}

void save_png(const fs::path& p, const PixelTensor& img) {
    if (!cv::imwrite(p.string(), to_bgr_mat(img)))
        throw IoError("failed to write " + p.string());
}

void save_jpeg(const fs::path& p, const PixelTensor& img, int quality, bool optimize) {
    std::vector<int> params{cv::IMWRITE_JPEG_QUALITY, quality,
                            cv::IMWRITE_JPEG_OPTIMIZE, optimize ? 1 : 0};
    if (!cv::imwrite(p.string(), to_bgr_mat(img), params))
        throw IoError("failed to write " + p.string());
}

std::vector<std::uint8_t> encode_jpeg_bytes(const PixelTensor& img, int quality, bool optimize) {
    std::vector<std::uint8_t> out;
    std::vector<int> params{cv::IMWRITE_JPEG_QUALITY, quality,
                            cv::IMWRITE_JPEG_OPTIMIZE, optimize ? 1 : 0};
    if (!cv::imencode(".jpg", to_bgr_mat(img), out, params))
        throw IoError("jpeg encode failed");
    return out;
}

std::vector<std::uint8_t> read_file_bytes(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw IoError("cannot open " + p.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

void write_file_bytes(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open for write: " + p.string());
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("write failed: " + p.string());
}

} // namespace muzzle
