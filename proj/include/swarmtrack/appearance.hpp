#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swarmtrack/geometry.hpp"

namespace swarmtrack {

/// 8-bit grayscale image, row-major.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 0);

  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

/// Non-negative appearance descriptor.
using FeatureVec = std::vector<double>;

struct HogConfig {
  int patch_size = 48;  // canonical square patch the box is resampled to
  int cell_size = 8;
  int bins = 9;         // unsigned orientations over [0, 180)
  int block_size = 2;   // cells per block side, stride one cell
  double clip = 0.2;    // L2-Hys clipping level

  /// Descriptor length for this configuration.
  std::size_t length() const;
};

/// HoG descriptor of `box` in `img`. The box is bilinearly resampled to a
/// patch_size square first so every box yields the same length. Returns
/// nullopt when the box does not overlap the image.
std::optional<FeatureVec> extract_hog(const GrayImage& img, const BBox& box, const HogConfig& cfg = {});

/// Cosine similarity of two non-negative vectors; 0 when either has zero
/// magnitude. Throws std::invalid_argument on length mismatch.
double cosine_sim(std::span<const double> a, std::span<const double> b);

}  // namespace swarmtrack
