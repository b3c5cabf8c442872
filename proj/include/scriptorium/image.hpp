#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scriptorium/tensor.hpp"

namespace scriptorium {

// 8-bit image, row-major, interleaved channels (1 = gray, 3 = RGB).
struct ImageU8 {
    int height = 0;
    int width = 0;
    int channels = 1;
    std::vector<uint8_t> pixels;

    ImageU8() = default;
    ImageU8(int h, int w, int c, uint8_t fill_value = 0)
        : height(h), width(w), channels(c),
          pixels(static_cast<size_t>(h) * w * c, fill_value) {}

    uint8_t& at(int y, int x, int c = 0) {
        return pixels[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    uint8_t at(int y, int x, int c = 0) const {
        return pixels[(static_cast<size_t>(y) * width + x) * channels + c];
    }
};

// min-max normalization to [0,1]; a constant image maps to all zeros
Tensor minmax_normalize(const ImageU8& img);   // -> [C,H,W]
Tensor minmax_normalize(const Tensor& chw);    // same rule on float input

// [C,H,W] in [0,1] -> 8-bit image (values scaled by 255 and rounded)
ImageU8 tensor_to_image(const Tensor& chw);

// replicate a single channel to n channels
Tensor replicate_channels(const Tensor& chw, int n);

void save_image(const ImageU8& img, const std::string& path);  // PNG via extension
ImageU8 load_image(const std::string& path, int channels);     // channels: 1 or 3

}  // namespace scriptorium
