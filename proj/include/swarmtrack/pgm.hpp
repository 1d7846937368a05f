#pragma once

#include <filesystem>
#include <string>

#include "swarmtrack/appearance.hpp"

namespace swarmtrack {

/// Reads a binary 8-bit PGM (P5). Throws IoError / ParseError.
GrayImage read_pgm(const std::filesystem::path& path);

void write_pgm(const GrayImage& img, const std::filesystem::path& path);

/// `<dir>/%06d.pgm` for a 1-based frame number.
std::filesystem::path frame_path(const std::filesystem::path& dir, long frame);

}  // namespace swarmtrack
