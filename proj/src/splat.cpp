#include "viewaug/splat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace viewaug {

namespace {

struct ProjPoint {
  double u;
  double v;
  double depth;
  int idx;
};

struct Contributor {
  double depth;
  int idx;
  double d2;
};

std::vector<ProjPoint> project_cloud(const PayloadPointCloud& cloud,
                                     const RigidPose& pose, const CameraIntrinsics& k) {
  std::vector<ProjPoint> out;
  out.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec3 pc = world_to_camera(cloud.positions[i], pose);
    if (auto pp = project(pc, k)) {
      out.push_back({pp->u, pp->v, pp->depth, static_cast<int>(i)});
    }
  }
  return out;
}

// Uniform grid with cell size == radius covering the palette plus a one-cell
// apron; points are clamped into the edge cells, so a pixel only ever needs
// its 3x3 cell neighborhood.
class BucketGrid {
 public:
  BucketGrid(std::span<const ProjPoint> points, int palette_w, int palette_h,
             double radius)
      : origin_(-radius),
        cell_(radius),
        cols_(std::max(1, static_cast<int>(std::ceil((palette_w - 1 + 2.0 * radius) / radius)) + 1)),
        rows_(std::max(1, static_cast<int>(std::ceil((palette_h - 1 + 2.0 * radius) / radius)) + 1)),
        cells_(static_cast<std::size_t>(cols_) * rows_) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      const int cx = clamp_col(std::floor((points[i].u - origin_) / cell_));
      const int cy = clamp_row(std::floor((points[i].v - origin_) / cell_));
      cells_[static_cast<std::size_t>(cy) * cols_ + cx].push_back(static_cast<int>(i));
    }
  }

  template <typename Fn>
  void for_candidates(double x, double y, Fn&& fn) const {
    const int cx0 = clamp_col(std::floor((x - cell_ - origin_) / cell_));
    const int cx1 = clamp_col(std::floor((x + cell_ - origin_) / cell_));
    const int cy0 = clamp_row(std::floor((y - cell_ - origin_) / cell_));
    const int cy1 = clamp_row(std::floor((y + cell_ - origin_) / cell_));
    for (int cy = cy0; cy <= cy1; ++cy) {
      for (int cx = cx0; cx <= cx1; ++cx) {
        for (int i : cells_[static_cast<std::size_t>(cy) * cols_ + cx]) fn(i);
      }
    }
  }

 private:
  int clamp_col(double c) const {
    return std::clamp(static_cast<int>(c), 0, cols_ - 1);
  }
  int clamp_row(double r) const {
    return std::clamp(static_cast<int>(r), 0, rows_ - 1);
  }

  double origin_;
  double cell_;
  int cols_;
  int rows_;
  std::vector<std::vector<int>> cells_;
};

void sort_and_truncate(std::vector<Contributor>& cands, int k_nearest) {
  std::sort(cands.begin(), cands.end(), [](const Contributor& a, const Contributor& b) {
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.idx < b.idx;
  });
  if (cands.size() > static_cast<std::size_t>(k_nearest)) cands.resize(k_nearest);
}

}  // namespace

void SplatConfig::validate() const {
  if (k_nearest < 1) throw std::invalid_argument("SplatConfig: k_nearest must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("SplatConfig: radius must be > 0");
  if (palette_w < 1 || palette_h < 1)
    throw std::invalid_argument("SplatConfig: palette dims must be >= 1");
  if (!(falloff_exponent >= 1.0))
    throw std::invalid_argument("SplatConfig: falloff_exponent must be >= 1");
  if (!(alpha_eps > 0.0) || !(alpha_eps < 1.0))
    throw std::invalid_argument("SplatConfig: alpha_eps must be in (0, 1)");
}

Palette splat(const PayloadPointCloud& cloud, const RigidPose& pose,
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

  const std::vector<ProjPoint> proj = project_cloud(cloud, pose, k);
  if (proj.empty()) return out;

  const BucketGrid grid(proj, W, H, cfg.radius);
  const double r2 = cfg.radius * cfg.radius;

#pragma omp parallel
  {
    std::vector<Contributor> cands;
    std::vector<double> acc(C);
    std::vector<int> hit_marks;

#pragma omp for schedule(static)
    for (int y = 0; y < H; ++y) {
      for (int x = 0; x < W; ++x) {
        cands.clear();
        grid.for_candidates(static_cast<double>(x), static_cast<double>(y),
                            [&](int pi) {
                              const ProjPoint& pp = proj[pi];
                              const double dx = pp.u - static_cast<double>(x);
                              const double dy = pp.v - static_cast<double>(y);
                              const double d2 = dx * dx + dy * dy;
                              if (d2 < r2) cands.push_back({pp.depth, pp.idx, d2});
                            });
        if (cands.empty()) continue;
        sort_and_truncate(cands, cfg.k_nearest);

        std::fill(acc.begin(), acc.end(), 0.0);
        hit_marks.clear();
        double transmit = 1.0;
        for (const Contributor& cand : cands) {
          const double dist = std::sqrt(cand.d2);
          const double w = std::pow(std::max(0.0, 1.0 - dist / cfg.radius),
                                    cfg.falloff_exponent);
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
          hit_marks.erase(std::unique(hit_marks.begin(), hit_marks.end()),
                          hit_marks.end());
          out.mark_hits[q] = hit_marks;
        }
      }
    }
  }
  return out;
}

SplatGradients splat_gradients(const PayloadPointCloud& cloud, const RigidPose& pose,
                               const CameraIntrinsics& k, const SplatConfig& cfg,
                               const Palette& upstream) {
  cfg.validate();
  const int W = cfg.palette_w;
  const int H = cfg.palette_h;
  const int C = cloud.channels;
  if (upstream.width != W || upstream.height != H || upstream.channels != C) {
    throw std::invalid_argument("splat_gradients: upstream shape does not match palette");
  }

  SplatGradients grads;
  grads.d_position.assign(cloud.size(), Vec3::Zero());
  grads.d_payload.assign(cloud.size() * C, 0.0);

  const std::vector<ProjPoint> proj = project_cloud(cloud, pose, k);
  if (proj.empty()) return grads;

  // Projected state per original point index; -1 depth marks culled points.
  std::vector<ProjPoint> by_idx(cloud.size(), ProjPoint{0.0, 0.0, -1.0, -1});
  for (const ProjPoint& pp : proj) by_idx[pp.idx] = pp;

  const BucketGrid grid(proj, W, H, cfg.radius);
  const double r2 = cfg.radius * cfg.radius;
  const double p = cfg.falloff_exponent;

  // dL/dw and the payload coefficient w_i T_i / D for each contributor of
  // each pixel, sorted by point index for the scatter pass.
  struct PixelRec {
    int idx;
    double g;
    double coeff;
  };
  std::vector<std::vector<PixelRec>> pixel_recs(static_cast<std::size_t>(W) * H);

#pragma omp parallel
  {
    std::vector<Contributor> cands;
    std::vector<double> weights, prefix, nc, tail;

#pragma omp for schedule(static)
    for (int y = 0; y < H; ++y) {
      for (int x = 0; x < W; ++x) {
        cands.clear();
        grid.for_candidates(static_cast<double>(x), static_cast<double>(y),
                            [&](int pi) {
                              const ProjPoint& pp = proj[pi];
                              const double dx = pp.u - static_cast<double>(x);
                              const double dy = pp.v - static_cast<double>(y);
                              const double d2 = dx * dx + dy * dy;
                              if (d2 < r2) cands.push_back({pp.depth, pp.idx, d2});
                            });
        if (cands.empty()) continue;
        sort_and_truncate(cands, cfg.k_nearest);
        const std::size_t m = cands.size();

        weights.resize(m);
        prefix.resize(m);  // prod_{j<i} (1 - w_j)
        double transmit = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
          const double dist = std::sqrt(cands[i].d2);
          weights[i] =
              std::pow(std::max(0.0, 1.0 - dist / cfg.radius), cfg.falloff_exponent);
          prefix[i] = transmit;
          transmit *= (1.0 - weights[i]);
        }
        const double alpha = 1.0 - transmit;
        const double denom = std::max(alpha, cfg.alpha_eps);
        const bool alpha_active = alpha > cfg.alpha_eps;

        nc.assign(C, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
          const float* payload = cloud.payload(cands[i].idx);
          for (int c = 0; c < C; ++c) {
            nc[c] += weights[i] * static_cast<double>(payload[c]) * prefix[i];
          }
        }

        const std::size_t q = static_cast<std::size_t>(y) * W + x;
        const float* up_payload = upstream.payload.data() + q * C;
        const double up_alpha = static_cast<double>(upstream.alpha[q]);

        auto& recs = pixel_recs[q];
        recs.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
          // tail[c] = sum_{k>i} w_k c_k prod_{i<j<k} (1 - w_j)
          tail.assign(C, 0.0);
          double inner = 1.0;
          for (std::size_t kk = i + 1; kk < m; ++kk) {
            const float* payload = cloud.payload(cands[kk].idx);
            for (int c = 0; c < C; ++c) {
              tail[c] += weights[kk] * static_cast<double>(payload[c]) * inner;
            }
            inner *= (1.0 - weights[kk]);
          }
          const double da_dw = prefix[i] * inner;  // prod_{j != i} (1 - w_j)
          double g = up_alpha * da_dw;
          const float* payload = cloud.payload(cands[i].idx);
          for (int c = 0; c < C; ++c) {
            const double dn_dw = prefix[i] * (static_cast<double>(payload[c]) - tail[c]);
            double dout_dw = dn_dw / denom;
            if (alpha_active) dout_dw -= nc[c] * da_dw / (denom * denom);
            g += static_cast<double>(up_payload[c]) * dout_dw;
          }
          recs.push_back({cands[i].idx, g, weights[i] * prefix[i] / denom});
        }
        std::sort(recs.begin(), recs.end(),
                  [](const PixelRec& a, const PixelRec& b) { return a.idx < b.idx; });
      }
    }
  }

  // Scatter back to points. Each point walks its influence box in row-major
  // order, so accumulation order is fixed regardless of thread count.
  const Mat3& rot = pose.rotation;
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const ProjPoint& pp = by_idx[i];
    if (pp.idx < 0) continue;  // culled

    const double z = pp.depth;
    const Vec3 ju = (k.fx / z) * rot.row(0).transpose() - ((pp.u - k.cx) / z) * rot.row(2).transpose();
    const Vec3 jv = (k.fy / z) * rot.row(1).transpose() - ((pp.v - k.cy) / z) * rot.row(2).transpose();

    const int x0 = std::max(0, static_cast<int>(std::ceil(pp.u - cfg.radius)));
    const int x1 = std::min(W - 1, static_cast<int>(std::floor(pp.u + cfg.radius)));
    const int y0 = std::max(0, static_cast<int>(std::ceil(pp.v - cfg.radius)));
    const int y1 = std::min(H - 1, static_cast<int>(std::floor(pp.v + cfg.radius)));

    Vec3 dpos = Vec3::Zero();
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const std::size_t q = static_cast<std::size_t>(y) * W + x;
        const auto& recs = pixel_recs[q];
        const auto it = std::lower_bound(
            recs.begin(), recs.end(), static_cast<int>(i),
            [](const PixelRec& r, int idx) { return r.idx < idx; });
        if (it == recs.end() || it->idx != static_cast<int>(i)) continue;

        const float* up_payload = upstream.payload.data() + q * C;
        for (int c = 0; c < C; ++c) {
          grads.d_payload[i * C + c] += it->coeff * static_cast<double>(up_payload[c]);
        }

        const double dx = pp.u - static_cast<double>(x);
        const double dy = pp.v - static_cast<double>(y);
        const double dist = std::sqrt(dx * dx + dy * dy);
        if (dist > 0.0) {
          const double dw_ddist =
              -(p / cfg.radius) * std::pow(std::max(0.0, 1.0 - dist / cfg.radius), p - 1.0);
          const double dw_du = dw_ddist * dx / dist;
          const double dw_dv = dw_ddist * dy / dist;
          dpos += it->g * (dw_du * ju + dw_dv * jv);
        }
      }
    }
    grads.d_position[i] = dpos;
  }
  return grads;
}

}  // namespace viewaug
