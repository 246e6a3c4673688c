#pragma once

#include "viewaug/image.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace viewaug {

// Decodes an 8-bit PNG to float samples in 0..255. Palette images expand to
// RGB, 16-bit files are scaled down, alpha channels are dropped. The result
// has 1 or 3 channels.
Image read_png(const std::filesystem::path& path);

// Encodes 1- or 3-channel float samples as an 8-bit PNG, rounding to nearest
// and clamping to 0..255. Encoder settings are fixed so identical rasters
// produce identical bytes.
void write_png(const std::filesystem::path& path, const Image& image);

// 16-bit grayscale PNG, used for depth rasters.
std::vector<std::uint16_t> read_png16(const std::filesystem::path& path, int& width,
                                      int& height);
void write_png16(const std::filesystem::path& path,
                 const std::vector<std::uint16_t>& samples, int width, int height);

}  // namespace viewaug
