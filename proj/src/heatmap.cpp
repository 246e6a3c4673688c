#include "viewaug/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace viewaug {

void HeatmapConfig::validate() const {
  if (stride < 1) throw std::invalid_argument("HeatmapConfig: stride must be >= 1");
  if (!(iou_threshold > 0.0) || !(iou_threshold < 1.0))
    throw std::invalid_argument("HeatmapConfig: iou_threshold must be in (0, 1)");
  if (!(sigma_divisor > 0.0))
    throw std::invalid_argument("HeatmapConfig: sigma_divisor must be > 0");
}

double gaussian_radius(double box_w, double box_h, double iou_threshold) {
  if (!(box_w > 0.0) || !(box_h > 0.0)) {
    throw std::invalid_argument("gaussian_radius: degenerate box");
  }
  if (!(iou_threshold > 0.0) || !(iou_threshold < 1.0)) {
    throw std::invalid_argument("gaussian_radius: threshold must be in (0, 1)");
  }
  const double w = box_w, h = box_h, t = iou_threshold;
  const double s = w + h;

  // Both corners out by r: overlap wh, union (w+2r)(h+2r).
  const double r_grow = (-s + std::sqrt(s * s - 4.0 * (w * h - w * h / t))) / 4.0;
  // Both corners in by r: overlap (w-2r)(h-2r), union wh.
  const double r_shrink = (s - std::sqrt(s * s - 4.0 * w * h * (1.0 - t))) / 4.0;
  // Diagonal shift by (r, r): overlap (w-r)(h-r), union 2wh - overlap.
  const double r_shift =
      (s - std::sqrt(s * s - 4.0 * w * h * (1.0 - t) / (1.0 + t))) / 2.0;

  return std::min({r_grow, r_shrink, r_shift});
}

HeatmapRender render_heatmap(std::span<const BoundingBox> boxes, int image_w,
                             int image_h, int num_categories, const HeatmapConfig& cfg) {
  cfg.validate();
  if (image_w < 1 || image_h < 1 || num_categories < 1) {
    throw std::invalid_argument("render_heatmap: bad dimensions");
  }

  HeatmapRender out;
  Heatmap& hm = out.heatmap;
  hm.stride = cfg.stride;
  hm.width = (image_w + cfg.stride - 1) / cfg.stride;
  hm.height = (image_h + cfg.stride - 1) / cfg.stride;
  hm.channels = num_categories;
  hm.values.assign(static_cast<std::size_t>(hm.width) * hm.height * num_categories, 0.0);

  for (const BoundingBox& box : boxes) {
    if (box.category < 0 || box.category >= num_categories) {
      throw std::invalid_argument("render_heatmap: category out of range");
    }
    const double cu = (box.x_min + box.x_max) / 2.0;
    const double cv = (box.y_min + box.y_max) / 2.0;
    const int cell_x = static_cast<int>(std::floor(cu / cfg.stride));
    const int cell_y = static_cast<int>(std::floor(cv / cfg.stride));
    if (cell_x < 0 || cell_x >= hm.width || cell_y < 0 || cell_y >= hm.height) {
      out.skipped.push_back(box.index);
      continue;
    }

    // Radius rule runs in heatmap cells.
    const double radius =
        gaussian_radius(std::max(box.width() / cfg.stride, 1e-9),
                        std::max(box.height() / cfg.stride, 1e-9), cfg.iou_threshold);
    const double sigma = radius / cfg.sigma_divisor;
    const int reach = std::max(0, static_cast<int>(std::ceil(radius)));
    const double two_sigma2 = 2.0 * sigma * sigma;

    const int x0 = std::max(0, cell_x - reach);
    const int x1 = std::min(hm.width - 1, cell_x + reach);
    const int y0 = std::max(0, cell_y - reach);
    const int y1 = std::min(hm.height - 1, cell_y + reach);
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double dx = x - cell_x;
        const double dy = y - cell_y;
        const double value = std::exp(-(dx * dx + dy * dy) / two_sigma2);
        double& cell = hm.at(x, y, box.category);
        cell = std::max(cell, value);
      }
    }
  }
  return out;
}

HeatSample mixup(const HeatSample& a, const HeatSample& b, double lambda) {
  if (!(lambda >= 0.0) || !(lambda <= 1.0)) {
    throw std::invalid_argument("mixup: lambda must be in [0, 1]");
  }
  if (!a.image.same_shape(b.image) || !a.heatmap.same_shape(b.heatmap)) {
    throw std::invalid_argument("mixup: sample shapes differ");
  }
  HeatSample out;
  out.image = a.image;
  out.heatmap = a.heatmap;
  // lerp(b, a, lambda) = b + lambda * (a - b): exact endpoints and exact when
  // both inputs are equal.
  for (std::size_t i = 0; i < out.image.pixels.size(); ++i) {
    out.image.pixels[i] = std::lerp(b.image.pixels[i], a.image.pixels[i],
                                    static_cast<float>(lambda));
  }
  for (std::size_t i = 0; i < out.heatmap.values.size(); ++i) {
    out.heatmap.values[i] = std::lerp(b.heatmap.values[i], a.heatmap.values[i], lambda);
  }
  return out;
}

}  // namespace viewaug
