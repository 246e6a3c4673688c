#pragma once

#include "viewaug/image.hpp"
#include "viewaug/point_cloud.hpp"

#include <span>
#include <vector>

namespace viewaug {

struct HeatmapConfig {
  int stride = 4;              // image pixels per heatmap cell
  double iou_threshold = 0.7;  // adaptive radius target overlap
  double sigma_divisor = 3.0;  // sigma = radius / sigma_divisor

  void validate() const;
};

// Per-category grid of Gaussian keypoint peaks at ceil(image/stride)
// resolution; values in [0, 1].
struct Heatmap {
  int width = 0;
  int height = 0;
  int channels = 0;
  int stride = 4;
  std::vector<double> values;  // h * w * c

  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width + x) * channels + c;
  }
  double at(int x, int y, int c) const { return values[index(x, y, c)]; }
  double& at(int x, int y, int c) { return values[index(x, y, c)]; }
  bool same_shape(const Heatmap& other) const {
    return width == other.width && height == other.height &&
           channels == other.channels && stride == other.stride;
  }
};

// Largest center displacement keeping at least `iou_threshold` overlap with a
// box of the given size, taken as the minimum over the three corner-motion
// cases (grown, shrunk, diagonally shifted), each a closed-form quadratic
// root. Positive, and non-decreasing in the box size. Throws
// std::invalid_argument for degenerate boxes or thresholds outside (0, 1).
double gaussian_radius(double box_w, double box_h, double iou_threshold);

struct HeatmapRender {
  Heatmap heatmap;
  std::vector<int> skipped;  // boxes whose center fell outside the grid
};

// Renders one Gaussian per box center onto the category channel given by
// box.category (which must be in [0, num_categories)). Box dimensions are
// scaled to heatmap cells before the adaptive-radius rule, centers snap to
// their cell, and overlapping Gaussians combine with elementwise max.
HeatmapRender render_heatmap(std::span<const BoundingBox> boxes, int image_w,
                             int image_h, int num_categories, const HeatmapConfig& cfg);

struct HeatSample {
  Image image;
  Heatmap heatmap;
};

// Convex blend: lambda * a + (1 - lambda) * b applied elementwise to both the
// image and the heatmap. Exact at lambda == 0 and 1, and mixup(a, a, l) == a
// bit-for-bit. Throws std::invalid_argument on shape mismatch or lambda
// outside [0, 1].
HeatSample mixup(const HeatSample& a, const HeatSample& b, double lambda);

}  // namespace viewaug
