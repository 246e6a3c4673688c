#pragma once

#include "viewaug/splat.hpp"

namespace viewaug::reference {

// Naive serial rasterizer: every pixel tests every point. Kept as the ground
// truth for the fast kernel; splat() must match it bit-for-bit.
Palette splat_naive(const PayloadPointCloud& cloud, const RigidPose& pose,
                    const CameraIntrinsics& k, const SplatConfig& cfg);

}  // namespace viewaug::reference
