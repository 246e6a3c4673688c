#include "viewaug/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace viewaug {

double psnr(const Image& a, const Image& b, double peak) {
  if (!a.same_shape(b)) throw std::invalid_argument("psnr: shape mismatch");
  if (a.empty()) throw std::invalid_argument("psnr: empty image");
  if (!(peak > 0.0)) throw std::invalid_argument("psnr: peak must be > 0");

  double sum = 0.0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
    sum += d * d;
  }
  const double mse = sum / static_cast<double>(a.pixels.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

double ssim(const Image& a, const Image& b, const SsimConfig& cfg) {
  if (!a.same_shape(b)) throw std::invalid_argument("ssim: shape mismatch");
  if (a.width < cfg.window || a.height < cfg.window) {
    throw std::invalid_argument("ssim: image smaller than window");
  }
  if (cfg.window < 1 || cfg.window % 2 == 0 || !(cfg.sigma > 0.0)) {
    throw std::invalid_argument("ssim: bad window configuration");
  }

  const int n = cfg.window;
  const int half = n / 2;
  std::vector<double> kernel(static_cast<std::size_t>(n) * n);
  double ksum = 0.0;
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const double dx = x - half;
      const double dy = y - half;
      const double g = std::exp(-(dx * dx + dy * dy) / (2.0 * cfg.sigma * cfg.sigma));
      kernel[static_cast<std::size_t>(y) * n + x] = g;
      ksum += g;
    }
  }
  for (double& g : kernel) g /= ksum;

  const double c1 = (cfg.k1 * cfg.peak) * (cfg.k1 * cfg.peak);
  const double c2 = (cfg.k2 * cfg.peak) * (cfg.k2 * cfg.peak);

  double total = 0.0;
  std::size_t count = 0;
  for (int c = 0; c < a.channels; ++c) {
    for (int y = 0; y + n <= a.height; ++y) {
      for (int x = 0; x + n <= a.width; ++x) {
        double mu_a = 0.0, mu_b = 0.0, aa = 0.0, bb = 0.0, ab = 0.0;
        for (int ky = 0; ky < n; ++ky) {
          for (int kx = 0; kx < n; ++kx) {
            const double g = kernel[static_cast<std::size_t>(ky) * n + kx];
            const double va = a.at(x + kx, y + ky, c);
            const double vb = b.at(x + kx, y + ky, c);
            mu_a += g * va;
            mu_b += g * vb;
            aa += g * va * va;
            bb += g * vb * vb;
            ab += g * va * vb;
          }
        }
        const double var_a = aa - mu_a * mu_a;
        const double var_b = bb - mu_b * mu_b;
        const double cov = ab - mu_a * mu_b;
        const double num = (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2);
        const double den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2);
        total += num / den;
        ++count;
      }
    }
  }
  return total / static_cast<double>(count);
}

void FeatureStack::validate(double tol) const {
  if (layers.empty()) throw std::invalid_argument("FeatureStack: no layers");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const FeatureLayer& layer = layers[l];
    if (layer.height < 1 || layer.width < 1 || layer.channels < 1 ||
        layer.data.size() != static_cast<std::size_t>(layer.height) * layer.width *
                                 layer.channels ||
        layer.weights.size() != static_cast<std::size_t>(layer.channels)) {
      throw std::invalid_argument("FeatureStack: layer " + std::to_string(l) +
                                  " has inconsistent dimensions");
    }
    const std::size_t locations = static_cast<std::size_t>(layer.height) * layer.width;
    for (std::size_t loc = 0; loc < locations; ++loc) {
      double norm2 = 0.0;
      const float* v = layer.data.data() + loc * layer.channels;
      for (int c = 0; c < layer.channels; ++c) {
        norm2 += static_cast<double>(v[c]) * static_cast<double>(v[c]);
      }
      if (std::abs(std::sqrt(norm2) - 1.0) > tol) {
        throw std::invalid_argument("FeatureStack: layer " + std::to_string(l) +
                                    " location " + std::to_string(loc) +
                                    " is not unit-normalized");
      }
    }
  }
}

double perceptual_distance(const FeatureStack& a, const FeatureStack& b) {
  a.validate();
  b.validate();
  if (a.layers.size() != b.layers.size()) {
    throw std::invalid_argument("perceptual_distance: layer counts differ");
  }
  double total = 0.0;
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    const FeatureLayer& la = a.layers[l];
    const FeatureLayer& lb = b.layers[l];
    if (la.height != lb.height || la.width != lb.width || la.channels != lb.channels) {
      throw std::invalid_argument("perceptual_distance: layer " + std::to_string(l) +
                                  " shapes differ");
    }
    double layer_sum = 0.0;
    const std::size_t locations = static_cast<std::size_t>(la.height) * la.width;
    for (std::size_t loc = 0; loc < locations; ++loc) {
      const float* va = la.data.data() + loc * la.channels;
      const float* vb = lb.data.data() + loc * la.channels;
      for (int c = 0; c < la.channels; ++c) {
        const double d = static_cast<double>(la.weights[c]) *
                         (static_cast<double>(va[c]) - static_cast<double>(vb[c]));
        layer_sum += d * d;
      }
    }
    total += layer_sum / static_cast<double>(locations);
  }
  return total;
}

namespace {

template <typename T>
void write_raw(std::ofstream& out, const T* data, std::size_t count) {
  out.write(reinterpret_cast<const char*>(data),
            static_cast<std::streamsize>(count * sizeof(T)));
}

template <typename T>
void read_raw(std::ifstream& in, T* data, std::size_t count, const std::filesystem::path& path) {
  in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(count * sizeof(T)));
  if (!in) throw std::runtime_error("truncated feature container: " + path.string());
}

}  // namespace

FeatureStack read_feature_stack(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open feature container: " + path.string());

  std::uint32_t layer_count = 0;
  read_raw(in, &layer_count, 1, path);
  if (layer_count == 0 || layer_count > 1024) {
    throw std::runtime_error("implausible layer count in " + path.string());
  }

  FeatureStack stack;
  stack.layers.resize(layer_count);
  for (auto& layer : stack.layers) {
    std::uint32_t dims[3];
    read_raw(in, dims, 3, path);
    layer.height = static_cast<int>(dims[0]);
    layer.width = static_cast<int>(dims[1]);
    layer.channels = static_cast<int>(dims[2]);
    if (layer.height < 1 || layer.width < 1 || layer.channels < 1) {
      throw std::runtime_error("bad layer dims in " + path.string());
    }
  }
  for (auto& layer : stack.layers) {
    layer.data.resize(static_cast<std::size_t>(layer.height) * layer.width * layer.channels);
    read_raw(in, layer.data.data(), layer.data.size(), path);
  }
  for (auto& layer : stack.layers) {
    layer.weights.resize(static_cast<std::size_t>(layer.channels));
    read_raw(in, layer.weights.data(), layer.weights.size(), path);
  }
  return stack;
}

void write_feature_stack(const std::filesystem::path& path, const FeatureStack& stack) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot create feature container: " + path.string());

  const std::uint32_t layer_count = static_cast<std::uint32_t>(stack.layers.size());
  write_raw(out, &layer_count, 1);
  for (const auto& layer : stack.layers) {
    const std::uint32_t dims[3] = {static_cast<std::uint32_t>(layer.height),
                                   static_cast<std::uint32_t>(layer.width),
                                   static_cast<std::uint32_t>(layer.channels)};
    write_raw(out, dims, 3);
  }
  for (const auto& layer : stack.layers) {
    write_raw(out, layer.data.data(), layer.data.size());
  }
  for (const auto& layer : stack.layers) {
    write_raw(out, layer.weights.data(), layer.weights.size());
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace viewaug
