#include "viewaug/annotation.hpp"

#include <algorithm>
#include <stdexcept>

namespace viewaug {

std::string to_string(DropReason reason) {
  switch (reason) {
    case DropReason::kAllPointsCulled: return "all-points-culled";
    case DropReason::kBelowVisibility: return "below-visibility";
    case DropReason::kBelowMinArea: return "below-min-area";
    case DropReason::kFullyOutOfFrame: return "fully-out-of-frame";
  }
  return "unknown";
}

std::vector<MarkedBoxProjection> project_marks(const PayloadPointCloud& cloud,
                                               const RigidPose& pose,
                                               const CameraIntrinsics& k,
                                               std::span<const BoundingBox> boxes) {
  std::vector<MarkedBoxProjection> out(boxes.size());
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    out[b].box_index = boxes[b].index;
    out[b].category = boxes[b].category;
  }
  // Box index -> slot, so marks survive arbitrary index values.
  int max_index = -1;
  for (const BoundingBox& box : boxes) max_index = std::max(max_index, box.index);
  std::vector<std::size_t> slot_of(max_index >= 0 ? static_cast<std::size_t>(max_index) + 1 : 0,
                                   boxes.size());
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    slot_of[static_cast<std::size_t>(boxes[b].index)] = b;
  }

  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto& marks = cloud.marks[i];
    if (marks.empty()) continue;
    const Vec3 pc = world_to_camera(cloud.positions[i], pose);
    const auto pp = project(pc, k);
    for (int mark : marks) {
      if (mark < 0 || static_cast<std::size_t>(mark) >= slot_of.size()) continue;
      const std::size_t b = slot_of[static_cast<std::size_t>(mark)];
      if (b >= out.size()) continue;
      ++out[b].total_marks;
      if (pp) out[b].survivors.push_back({pp->u, pp->v});
    }
  }
  return out;
}

TransferReport recover_boxes(std::span<const MarkedBoxProjection> marks, int palette_w,
                             int palette_h, double min_visibility, double min_area) {
  if (palette_w < 1 || palette_h < 1) {
    throw std::invalid_argument("recover_boxes: palette dims must be >= 1");
  }
  const double w = static_cast<double>(palette_w);
  const double h = static_cast<double>(palette_h);

  TransferReport report;
  for (const MarkedBoxProjection& mbp : marks) {
    if (mbp.survivors.empty()) {
      report.dropped.push_back({mbp.box_index, DropReason::kAllPointsCulled});
      continue;
    }
    double x_min = mbp.survivors[0][0], x_max = mbp.survivors[0][0];
    double y_min = mbp.survivors[0][1], y_max = mbp.survivors[0][1];
    std::size_t in_frame = 0;
    for (const auto& uv : mbp.survivors) {
      x_min = std::min(x_min, uv[0]);
      x_max = std::max(x_max, uv[0]);
      y_min = std::min(y_min, uv[1]);
      y_max = std::max(y_max, uv[1]);
      if (uv[0] >= 0.0 && uv[0] <= w && uv[1] >= 0.0 && uv[1] <= h) ++in_frame;
    }

    const double cx0 = std::clamp(x_min, 0.0, w);
    const double cx1 = std::clamp(x_max, 0.0, w);
    const double cy0 = std::clamp(y_min, 0.0, h);
    const double cy1 = std::clamp(y_max, 0.0, h);
    if (!(cx1 > cx0) || !(cy1 > cy0)) {
      report.dropped.push_back({mbp.box_index, DropReason::kFullyOutOfFrame});
      continue;
    }

    const double visibility =
        mbp.total_marks == 0
            ? 0.0
            : static_cast<double>(in_frame) / static_cast<double>(mbp.total_marks);
    if (visibility < min_visibility) {
      report.dropped.push_back({mbp.box_index, DropReason::kBelowVisibility});
      continue;
    }
    if ((cx1 - cx0) * (cy1 - cy0) < min_area) {
      report.dropped.push_back({mbp.box_index, DropReason::kBelowMinArea});
      continue;
    }
    report.kept.push_back({mbp.box_index, mbp.category, cx0, cy0, cx1, cy1, visibility});
  }
  return report;
}

}  // namespace viewaug
