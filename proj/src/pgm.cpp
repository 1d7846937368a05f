#include "swarmtrack/pgm.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>

#include "swarmtrack/mot_io.hpp"

namespace swarmtrack {

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string token(std::istream& in) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      if (!tok.empty()) break;
    } else {
      tok.push_back(static_cast<char>(c));
    }
    c = in.get();
  }
  return tok;
}

}  // namespace

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::string source = path.string();
  if (token(in) != "P5") throw ParseError(source, 0, "not a binary PGM (P5) file");
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(token(in));
    h = std::stoi(token(in));
    maxval = std::stoi(token(in));
  } catch (const std::exception&) {
    throw ParseError(source, 0, "malformed PGM header");
  }
  if (w < 1 || h < 1 || maxval < 1 || maxval > 255) throw ParseError(source, 0, "unsupported PGM dimensions or depth");
  GrayImage img(w, h);
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.pixels.size())) throw ParseError(source, 0, "truncated PGM data");
  if (maxval != 255) {
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(std::min(255, p * 255 / maxval));
  }
  return img;
}

void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::filesystem::path frame_path(const std::filesystem::path& dir, long frame) {
  char name[32];
  std::snprintf(name, sizeof name, "%06ld.pgm", frame);
  return dir / name;
}

}  // namespace swarmtrack
