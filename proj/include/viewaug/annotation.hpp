#pragma once

#include "viewaug/camera.hpp"
#include "viewaug/point_cloud.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace viewaug {

enum class DropReason {
  kAllPointsCulled,
  kBelowVisibility,
  kBelowMinArea,
  kFullyOutOfFrame,
};

std::string to_string(DropReason reason);

// Target-view pixel positions of one box's marked points that survived
// behind-camera culling, plus the total mark count for visibility accounting.
struct MarkedBoxProjection {
  int box_index = 0;
  int category = 0;
  std::size_t total_marks = 0;
  std::vector<std::array<double, 2>> survivors;
};

struct RecoveredBox {
  int box_index = 0;
  int category = 0;
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;
  double visibility = 0.0;  // in-frame survivors / total marks
};

struct DroppedBox {
  int box_index = 0;
  DropReason reason = DropReason::kAllPointsCulled;
};

// kept + dropped covers every input box exactly once.
struct TransferReport {
  std::vector<RecoveredBox> kept;
  std::vector<DroppedBox> dropped;
};

// Re-projects every marked cloud point with the given pose/intrinsics and
// groups the surviving positions by box index. num_boxes fixes the output
// length so boxes with no marks still appear (with total_marks == 0).
std::vector<MarkedBoxProjection> project_marks(const PayloadPointCloud& cloud,
                                               const RigidPose& pose,
                                               const CameraIntrinsics& k,
                                               std::span<const BoundingBox> boxes);

// Min/max box recovery over the surviving marks. Boxes are clipped to
// [0, palette_w] x [0, palette_h] first, then dropped if no in-frame extent
// remains, the in-frame survivor fraction is below min_visibility, or the
// clipped area is below min_area.
TransferReport recover_boxes(std::span<const MarkedBoxProjection> marks, int palette_w,
                             int palette_h, double min_visibility, double min_area);

}  // namespace viewaug
