#include "viewaug/point_cloud.hpp"

#include "viewaug/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace viewaug {

namespace {

// Integer sample coordinate of lattice index i out of n spanning [0, extent-1].
long long grid_coord(int i, int n, int extent) {
  if (n == 1) return std::llround((extent - 1) / 2.0);
  return std::llround(static_cast<double>(i) * (extent - 1) / (n - 1));
}

}  // namespace

void DepthMap::validate() const {
  if (width <= 0 || height <= 0 ||
      values.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("DepthMap: dimensions do not match value count");
  }
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double d = at(x, y);
      if (!(d > 0.0) || !std::isfinite(d)) throw BadDepthError(x, y, d);
    }
  }
}

PayloadPointCloud lift_image(const Image& image, const DepthMap& depth,
                             const CameraIntrinsics& k, int grid) {
  if (image.width <= 0 || image.height <= 0 || image.channels <= 0) {
    throw std::invalid_argument("lift_image: empty image");
  }
  if (image.width != depth.width || image.height != depth.height) {
    throw std::invalid_argument("lift_image: image and depth dimensions differ");
  }
  if (grid < 0 || grid > std::min(image.width, image.height)) {
    throw std::invalid_argument("lift_image: grid must be in [0, min(W, H)]");
  }
  if (!k.valid()) throw std::invalid_argument("lift_image: invalid intrinsics");

  const int gw = grid > 0 ? grid : image.width;
  const int gh = grid > 0 ? grid : image.height;

  PayloadPointCloud cloud;
  cloud.channels = image.channels;
  const std::size_t n = static_cast<std::size_t>(gw) * gh;
  cloud.positions.reserve(n);
  cloud.payloads.reserve(n * image.channels);
  cloud.grid_uv.reserve(n);
  cloud.marks.resize(n);

  for (int j = 0; j < gh; ++j) {
    const int sv = static_cast<int>(grid > 0 ? grid_coord(j, gh, image.height) : j);
    for (int i = 0; i < gw; ++i) {
      const int su = static_cast<int>(grid > 0 ? grid_coord(i, gw, image.width) : i);
      const double d = depth.at(su, sv);
      if (!(d > 0.0) || !std::isfinite(d)) throw BadDepthError(su, sv, d);
      cloud.positions.push_back(
          unproject({static_cast<double>(su), static_cast<double>(sv), d}, k));
      cloud.grid_uv.push_back({static_cast<double>(su), static_cast<double>(sv)});
      for (int c = 0; c < image.channels; ++c) {
        cloud.payloads.push_back(image.at(su, sv, c));
      }
    }
  }
  return cloud;
}

MarkReport mark_boxes(PayloadPointCloud& cloud, std::span<const BoundingBox> boxes) {
  if (cloud.grid_uv.size() != cloud.size() || cloud.marks.size() != cloud.size()) {
    throw std::invalid_argument("mark_boxes: cloud was not built by lift_image");
  }
  double min_u = 0.0, max_u = 0.0, min_v = 0.0, max_v = 0.0;
  if (!cloud.grid_uv.empty()) {
    min_u = max_u = cloud.grid_uv[0][0];
    min_v = max_v = cloud.grid_uv[0][1];
    for (const auto& uv : cloud.grid_uv) {
      min_u = std::min(min_u, uv[0]);
      max_u = std::max(max_u, uv[0]);
      min_v = std::min(min_v, uv[1]);
      max_v = std::max(max_v, uv[1]);
    }
  }

  MarkReport report;
  for (const BoundingBox& box : boxes) {
    if (!(box.x_min <= box.x_max) || !(box.y_min <= box.y_max)) {
      throw std::invalid_argument("mark_boxes: malformed box " + std::to_string(box.index));
    }
    bool any = false;
    for (std::size_t p = 0; p < cloud.size(); ++p) {
      if (box.contains(cloud.grid_uv[p][0], cloud.grid_uv[p][1])) {
        auto& m = cloud.marks[p];
        if (m.empty() || m.back() != box.index) m.push_back(box.index);
        any = true;
      }
    }
    if (any) continue;

    // No sample inside the box: the in-image corners vote for their nearest
    // grid sample instead.
    const std::array<std::array<double, 2>, 4> corners = {{{box.x_min, box.y_min},
                                                           {box.x_max, box.y_min},
                                                           {box.x_min, box.y_max},
                                                           {box.x_max, box.y_max}}};
    for (const auto& corner : corners) {
      if (corner[0] < min_u || corner[0] > max_u || corner[1] < min_v || corner[1] > max_v) {
        continue;
      }
      std::size_t best = 0;
      double best_d2 = std::numeric_limits<double>::infinity();
      for (std::size_t p = 0; p < cloud.size(); ++p) {
        const double du = cloud.grid_uv[p][0] - corner[0];
        const double dv = cloud.grid_uv[p][1] - corner[1];
        const double d2 = du * du + dv * dv;
        if (d2 < best_d2) {
          best_d2 = d2;
          best = p;
        }
      }
      auto& m = cloud.marks[best];
      if (m.empty() || m.back() != box.index) m.push_back(box.index);
      any = true;
    }
    if (!any) report.unmarkable.push_back(box.index);
  }
  return report;
}

}  // namespace viewaug
