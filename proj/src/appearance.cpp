#include "swarmtrack/appearance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace swarmtrack {

GrayImage::GrayImage(int w, int h, std::uint8_t fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {
  if (w < 1 || h < 1) throw std::invalid_argument("image dimensions must be >= 1");
}

std::size_t HogConfig::length() const {
  const int cells = patch_size / cell_size;
  const int blocks = cells - block_size + 1;
  return static_cast<std::size_t>(blocks) * blocks * block_size * block_size * bins;
}

namespace {

// Bilinear sample with edge replication; (x, y) in pixel-center coordinates.
double sample_bilinear(const GrayImage& img, double x, double y) {
  x = std::clamp(x, 0.0, static_cast<double>(img.width - 1));
  y = std::clamp(y, 0.0, static_cast<double>(img.height - 1));
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, img.width - 1);
  const int y1 = std::min(y0 + 1, img.height - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  const double top = (1 - fx) * img.at(x0, y0) + fx * img.at(x1, y0);
  const double bottom = (1 - fx) * img.at(x0, y1) + fx * img.at(x1, y1);
  return (1 - fy) * top + fy * bottom;
}

}  // namespace

std::optional<FeatureVec> extract_hog(const GrayImage& img, const BBox& box, const HogConfig& cfg) {
  const double left = box.u - box.w / 2;
  const double top = box.v - box.h / 2;
  const double overlap_x = std::min(left + box.w, static_cast<double>(img.width)) - std::max(left, 0.0);
  const double overlap_y = std::min(top + box.h, static_cast<double>(img.height)) - std::max(top, 0.0);
  if (overlap_x <= 0.0 || overlap_y <= 0.0) return std::nullopt;

  const int n = cfg.patch_size;
  std::vector<double> patch(static_cast<std::size_t>(n) * n);
  const double sx = box.w / n;
  const double sy = box.h / n;
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      // Patch pixel centers map to image pixel-center coordinates.
      patch[static_cast<std::size_t>(y) * n + x] =
          sample_bilinear(img, left + (x + 0.5) * sx - 0.5, top + (y + 0.5) * sy - 0.5);
    }
  }

  const int cells = n / cfg.cell_size;
  std::vector<double> hist(static_cast<std::size_t>(cells) * cells * cfg.bins, 0.0);
  const double bin_width = 180.0 / cfg.bins;
  auto px = [&](int x, int y) {
    x = std::clamp(x, 0, n - 1);
    y = std::clamp(y, 0, n - 1);
    return patch[static_cast<std::size_t>(y) * n + x];
  };
  for (int y = 0; y < cells * cfg.cell_size; ++y) {
    for (int x = 0; x < cells * cfg.cell_size; ++x) {
      const double gx = px(x + 1, y) - px(x - 1, y);
      const double gy = px(x, y + 1) - px(x, y - 1);
      const double mag = std::hypot(gx, gy);
      if (mag == 0.0) continue;
      double angle = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
      if (angle < 0.0) angle += 180.0;
      if (angle >= 180.0) angle -= 180.0;
      // Bin k is centered on k * bin_width; votes split linearly between
      // the two nearest centers with wrap-around at 180 degrees.
      const double pos = angle / bin_width;
      const int lo = static_cast<int>(std::floor(pos)) % cfg.bins;
      const int hi = (lo + 1) % cfg.bins;
      const double frac = pos - std::floor(pos);
      const std::size_t cell = static_cast<std::size_t>(y / cfg.cell_size) * cells + x / cfg.cell_size;
      hist[cell * cfg.bins + lo] += mag * (1.0 - frac);
      hist[cell * cfg.bins + hi] += mag * frac;
    }
  }

  const int blocks = cells - cfg.block_size + 1;
  const std::size_t block_len = static_cast<std::size_t>(cfg.block_size) * cfg.block_size * cfg.bins;
  FeatureVec out;
  out.reserve(cfg.length());
  std::vector<double> block(block_len);
  constexpr double kEps = 1e-6;
  for (int by = 0; by < blocks; ++by) {
    for (int bx = 0; bx < blocks; ++bx) {
      std::size_t k = 0;
      for (int cy = by; cy < by + cfg.block_size; ++cy) {
        for (int cx = bx; cx < bx + cfg.block_size; ++cx) {
          const std::size_t cell = static_cast<std::size_t>(cy) * cells + cx;
          for (int b = 0; b < cfg.bins; ++b) block[k++] = hist[cell * cfg.bins + b];
        }
      }
      // L2-Hys: normalize, clip, renormalize.
      for (int pass = 0; pass < 2; ++pass) {
        double ss = 0.0;
        for (double val : block) ss += val * val;
        const double norm = std::sqrt(ss + kEps * kEps);
        for (double& val : block) {
          val /= norm;
          if (pass == 0) val = std::min(val, cfg.clip);
        }
      }
      out.insert(out.end(), block.begin(), block.end());
    }
  }
  return out;
}

double cosine_sim(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("feature length mismatch: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

}  // namespace swarmtrack
