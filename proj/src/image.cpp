#include "scriptorium/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace scriptorium {

Tensor minmax_normalize(const ImageU8& img) {
    Tensor out({img.channels, img.height, img.width});
    if (img.pixels.empty()) return out;
    uint8_t mn = *std::min_element(img.pixels.begin(), img.pixels.end());
    uint8_t mx = *std::max_element(img.pixels.begin(), img.pixels.end());
    if (mn == mx) return out;  // degenerate range -> all zeros
    float inv = 1.0f / (mx - mn);
    for (int c = 0; c < img.channels; ++c)
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x)
                out.data[(static_cast<size_t>(c) * img.height + y) * img.width + x] =
                    (img.at(y, x, c) - mn) * inv;
    return out;
}

Tensor minmax_normalize(const Tensor& chw) {
    Tensor out(chw.shape);
    if (chw.data.empty()) return out;
    float mn = *std::min_element(chw.data.begin(), chw.data.end());
    float mx = *std::max_element(chw.data.begin(), chw.data.end());
    if (mn == mx) return out;
    float inv = 1.0f / (mx - mn);
    for (size_t i = 0; i < chw.data.size(); ++i) out.data[i] = (chw.data[i] - mn) * inv;
    return out;
}

ImageU8 tensor_to_image(const Tensor& chw) {
    if (chw.ndim() != 3) throw std::invalid_argument("tensor_to_image: expected [C,H,W]");
    int C = chw.dim(0), H = chw.dim(1), W = chw.dim(2);
    ImageU8 img(H, W, C);
    for (int c = 0; c < C; ++c)
        for (int y = 0; y < H; ++y)
            for (int x = 0; x < W; ++x) {
                float v = chw.data[(static_cast<size_t>(c) * H + y) * W + x];
                v = std::clamp(v * 255.0f, 0.0f, 255.0f);
                img.at(y, x, c) = static_cast<uint8_t>(std::lround(v));
            }
    return img;
}

Tensor replicate_channels(const Tensor& chw, int n) {
    if (chw.ndim() != 3 || chw.dim(0) != 1)
        throw std::invalid_argument("replicate_channels: expected [1,H,W]");
    int H = chw.dim(1), W = chw.dim(2);
    Tensor out({n, H, W});
    for (int c = 0; c < n; ++c)
        std::copy(chw.data.begin(), chw.data.end(),
                  out.data.begin() + static_cast<size_t>(c) * H * W);
    return out;
}

void save_image(const ImageU8& img, const std::string& path) {
    cv::Mat mat;
    if (img.channels == 1) {
        mat = cv::Mat(img.height, img.width, CV_8UC1, const_cast<uint8_t*>(img.pixels.data()));
    } else if (img.channels == 3) {
        // ImageU8 is RGB; OpenCV writes BGR
        mat = cv::Mat(img.height, img.width, CV_8UC3);
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x) {
                auto& px = mat.at<cv::Vec3b>(y, x);
                px[0] = img.at(y, x, 2);
                px[1] = img.at(y, x, 1);
                px[2] = img.at(y, x, 0);
            }
    } else {
        throw std::invalid_argument("save_image: unsupported channel count");
    }
    if (!cv::imwrite(path, mat)) throw std::runtime_error("save_image: cannot write " + path);
}

ImageU8 load_image(const std::string& path, int channels) {
    cv::Mat mat = cv::imread(path, channels == 1 ? cv::IMREAD_GRAYSCALE : cv::IMREAD_COLOR);
    if (mat.empty()) throw std::runtime_error("load_image: cannot read " + path);
    ImageU8 img(mat.rows, mat.cols, channels);
    if (channels == 1) {
        for (int y = 0; y < mat.rows; ++y)
            for (int x = 0; x < mat.cols; ++x) img.at(y, x) = mat.at<uint8_t>(y, x);
    } else {
        for (int y = 0; y < mat.rows; ++y)
            for (int x = 0; x < mat.cols; ++x) {
                const auto& px = mat.at<cv::Vec3b>(y, x);
                img.at(y, x, 0) = px[2];
                img.at(y, x, 1) = px[1];
                img.at(y, x, 2) = px[0];
            }
    }
    return img;
}

}  // namespace scriptorium
