#pragma once

#include "viewaug/camera.hpp"
#include "viewaug/image.hpp"

#include <array>
#include <span>
#include <vector>

namespace viewaug {

// Per-pixel depth in scene units, row-major, paired with an image of the same
// dimensions. Every value must be positive and finite.
struct DepthMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  // Throws BadDepthError naming the first offending pixel.
  void validate() const;
};

// Axis-aligned box in source-pixel coordinates, corner form, bounds inclusive.
struct BoundingBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;
  int category = 0;
  int index = 0;  // per-image ordinal

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  bool contains(double u, double v) const {
    return u >= x_min && u <= x_max && v >= y_min && v <= y_max;
  }
};

// Structure-of-arrays point cloud: one world position and one payload vector
// per point, plus the source-grid pixel each point was lifted from and the
// set of box indices marking it. lift_image fills grid_uv; mark_boxes fills
// marks (sorted, unique per point).
struct PayloadPointCloud {
  int channels = 0;
  std::vector<Vec3> positions;
  std::vector<float> payloads;  // size() == positions.size() * channels
  std::vector<std::array<double, 2>> grid_uv;
  std::vector<std::vector<int>> marks;

  std::size_t size() const { return positions.size(); }
  const float* payload(std::size_t i) const { return payloads.data() + i * channels; }
};

// Lifts an image + depth map into a point cloud. grid == 0 samples every
// pixel; grid == S places an S x S lattice of samples snapped to integer
// pixels spanning the image (S <= min(W, H); S == W == H is per-pixel).
// Payload and depth are read at the sampled pixel.
PayloadPointCloud lift_image(const Image& image, const DepthMap& depth,
                             const CameraIntrinsics& k, int grid = 0);

struct MarkReport {
  std::vector<int> unmarkable;  // boxes that received no marks
};

// Marks every cloud point whose source pixel lies inside each box (bounds
// inclusive) with that box's index. A box containing no grid sample falls
// back to snapping its in-image corners to the nearest samples; if that also
// yields nothing the box is reported unmarkable.
MarkReport mark_boxes(PayloadPointCloud& cloud, std::span<const BoundingBox> boxes);

}  // namespace viewaug
