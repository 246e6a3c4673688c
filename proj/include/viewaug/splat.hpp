#pragma once

#include "viewaug/camera.hpp"
#include "viewaug/point_cloud.hpp"

#include <vector>

namespace viewaug {

struct SplatConfig {
  int k_nearest = 128;
  double radius = 4.0;  // pixels
  int palette_w = 256;
  int palette_h = 256;
  double falloff_exponent = 1.0;
  double alpha_eps = 1e-4;

  void validate() const;
};

// Target-view raster produced by splat(). payload holds the composited and
// alpha-normalized values, alpha the accumulated coverage in [0, 1], and
// mark_hits the sorted box indices of the contributors at each pixel.
struct Palette {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<float> payload;  // h * w * c
  std::vector<float> alpha;    // h * w
  std::vector<std::vector<int>> mark_hits;

  std::size_t pixel(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
};

// Differentiable point rasterization. Every point is taken through
// world_to_camera and project (behind-camera points are culled); at each
// pixel the points whose projected center lies strictly within `radius` of
// the pixel center are gathered, the k_nearest nearest in depth kept (depth
// ties broken by point index), weighted
//   w = max(0, 1 - dist/radius)^falloff_exponent,
// and front-to-back alpha-composited:
//   out_c  = sum_i w_i c_i prod_{j<i} (1 - w_j)
//   alpha  = 1 - prod_i (1 - w_i)
// The payload is divided by max(alpha, alpha_eps). Output is bit-identical
// regardless of thread count; viewaug::reference::splat_naive reproduces it
// exactly and is the test oracle.
Palette splat(const PayloadPointCloud& cloud, const RigidPose& pose,
              const CameraIntrinsics& k, const SplatConfig& cfg);

struct SplatGradients {
  std::vector<Vec3> d_position;    // per point, world frame
  std::vector<double> d_payload;   // per point * channels
};

// Analytic adjoint of splat(): gradients of <upstream.payload, out.payload> +
// <upstream.alpha, out.alpha> with respect to point positions and payloads.
// The weight kernel is treated by its interior derivative at dist == radius
// and d dist/d position is taken as zero at dist == 0; changes of contributor
// selection or depth order are discontinuities with zero gradient almost
// everywhere and are excluded by the finite-difference harness.
SplatGradients splat_gradients(const PayloadPointCloud& cloud, const RigidPose& pose,
                               const CameraIntrinsics& k, const SplatConfig& cfg,
                               const Palette& upstream);

}  // namespace viewaug
