#pragma once

#include "viewaug/image.hpp"

#include <filesystem>
#include <vector>

namespace viewaug {

// 10*log10(peak^2 / MSE) over all samples; +infinity when the rasters are
// identical. Throws std::invalid_argument on shape mismatch.
double psnr(const Image& a, const Image& b, double peak = 255.0);

struct SsimConfig {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double peak = 255.0;
};

// Mean local SSIM with a Gaussian window, channels averaged. Windows are
// fully inside the image, so both dims must be >= the window size.
double ssim(const Image& a, const Image& b, const SsimConfig& cfg = {});

struct FeatureLayer {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<float> data;     // h * w * c, row-major
  std::vector<float> weights;  // per channel
};

// Caller-supplied activations, unit-normalized along channels at every
// location. Normalization is validated, never applied.
struct FeatureStack {
  std::vector<FeatureLayer> layers;

  void validate(double tol = 1e-6) const;
};

// Channel-weighted squared distance, averaged over locations and summed over
// layers:
//   d = sum_l (1/(H_l W_l)) sum_{h,w} || w_l . (a^l_hw - b^l_hw) ||^2
// With unit weights this is twice the cosine distance at each location.
double perceptual_distance(const FeatureStack& a, const FeatureStack& b);

// Flat binary container: u32 layer count; per layer u32 H, W, C; then each
// layer's float32 data row-major; then each layer's float32 channel weights.
// Little-endian throughout.
FeatureStack read_feature_stack(const std::filesystem::path& path);
void write_feature_stack(const std::filesystem::path& path, const FeatureStack& stack);

}  // namespace viewaug
