#include "viewaug/splat_reference.hpp"

#include <algorithm>
#include <cmath>

namespace viewaug::reference {

namespace {

struct Candidate {
  double depth;
  int idx;
  double d2;
};

}  // namespace

Palette splat_naive(const PayloadPointCloud& cloud, const RigidPose& pose,
                    const CameraIntrinsics& k, const SplatConfig& cfg) {
  cfg.validate();
  const int W = cfg.palette_w;
  const int H = cfg.palette_h;
  const int C = cloud.channels;

  Palette out;
  out.width = W;
  out.height = H;
  out.channels = C;
  out.payload.assign(static_cast<std::size_t>(W) * H * C, 0.0f);
  out.alpha.assign(static_cast<std::size_t>(W) * H, 0.0f);
  out.mark_hits.assign(static_cast<std::size_t>(W) * H, {});

  struct Proj {
    double u, v, depth;
    int idx;
  };
  std::vector<Proj> proj;
  proj.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec3 pc = world_to_camera(cloud.positions[i], pose);
    if (auto pp = project(pc, k)) proj.push_back({pp->u, pp->v, pp->depth, static_cast<int>(i)});
  }
  if (proj.empty()) return out;

  const double r2 = cfg.radius * cfg.radius;
  std::vector<Candidate> cands;
  std::vector<double> acc(C);
  std::vector<int> hit_marks;

  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      cands.clear();
      for (const Proj& pp : proj) {
        const double dx = pp.u - static_cast<double>(x);
        const double dy = pp.v - static_cast<double>(y);
        const double d2 = dx * dx + dy * dy;
        if (d2 < r2) cands.push_back({pp.depth, pp.idx, d2});
      }
      if (cands.empty()) continue;

      std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.idx < b.idx;
      });
      if (cands.size() > static_cast<std::size_t>(cfg.k_nearest)) {
        cands.resize(cfg.k_nearest);
      }

      std::fill(acc.begin(), acc.end(), 0.0);
      hit_marks.clear();
      double transmit = 1.0;
      for (const Candidate& cand : cands) {
        const double dist = std::sqrt(cand.d2);
        const double w =
            std::pow(std::max(0.0, 1.0 - dist / cfg.radius), cfg.falloff_exponent);
        const float* payload = cloud.payload(cand.idx);
        for (int c = 0; c < C; ++c) {
          acc[c] += w * static_cast<double>(payload[c]) * transmit;
        }
        transmit *= (1.0 - w);
        const auto& marks = cloud.marks[cand.idx];
        hit_marks.insert(hit_marks.end(), marks.begin(), marks.end());
      }
      const double alpha = 1.0 - transmit;
      const double denom = std::max(alpha, cfg.alpha_eps);
      const std::size_t q = out.pixel(x, y);
      for (int c = 0; c < C; ++c) {
        out.payload[q * C + c] = static_cast<float>(acc[c] / denom);
      }
      out.alpha[q] = static_cast<float>(alpha);
      if (!hit_marks.empty()) {
        std::sort(hit_marks.begin(), hit_marks.end());
        hit_marks.erase(std::unique(hit_marks.begin(), hit_marks.end()), hit_marks.end());
        out.mark_hits[q] = hit_marks;
      }
    }
  }
  return out;
}

}  // namespace viewaug::reference
