#pragma once

#include <cstddef>
#include <vector>

namespace viewaug {

// Row-major H x W x C raster of float samples. 8-bit images decode to the
// 0..255 range unchanged.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<float> pixels;

  Image() = default;
  Image(int w, int h, int c, float fill = 0.0f)
      : width(w), height(h), channels(c),
        pixels(static_cast<std::size_t>(w) * h * c, fill) {}

  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width + x) * channels + c;
  }
  float at(int x, int y, int c) const { return pixels[index(x, y, c)]; }
  float& at(int x, int y, int c) { return pixels[index(x, y, c)]; }

  bool same_shape(const Image& other) const {
    return width == other.width && height == other.height && channels == other.channels;
  }
  bool empty() const { return pixels.empty(); }
};

}  // namespace viewaug
