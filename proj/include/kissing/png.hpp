#pragma once

#include <zlib.h>

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "kissing/antirational.hpp"
#include "kissing/reflection_group.hpp"

namespace kissing {

/// Minimal RGB8 PNG writer (zlib deflate, one IDAT chunk).
inline void write_png(const std::string& path, int width, int height,
                      const std::vector<uint8_t>& rgb) {
  if (static_cast<size_t>(width) * height * 3 != rgb.size())
    fail(ErrorCode::BadDocument, "pixel buffer size mismatch");
  std::vector<uint8_t> raw;
  raw.reserve(rgb.size() + height);
  for (int y = 0; y < height; ++y) {
    raw.push_back(0);  // filter: none
    raw.insert(raw.end(), rgb.begin() + static_cast<size_t>(y) * width * 3,
               rgb.begin() + static_cast<size_t>(y + 1) * width * 3);
  }
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::vector<uint8_t> compressed(bound);
  if (compress2(compressed.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 9) != Z_OK)
    fail(ErrorCode::BadDocument, "deflate failed");
  compressed.resize(bound);

  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::BadDocument, "cannot write " + path);
  auto be32 = [](uint32_t v) {
    return std::string{static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                       static_cast<char>(v >> 8), static_cast<char>(v)};
  };
  auto chunk = [&](const char* type, const std::string& data) {
    out << be32(static_cast<uint32_t>(data.size()));
    std::string body = std::string(type) + data;
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    uLong crc = crc32(0, reinterpret_cast<const Bytef*>(body.data()),
                      static_cast<uInt>(body.size()));
    out << be32(static_cast<uint32_t>(crc));
  };
  out.write("\x89PNG\r\n\x1a\n", 8);
  std::string ihdr = be32(width) + be32(height);
  ihdr += static_cast<char>(8);  // bit depth
  ihdr += static_cast<char>(2);  // color type: RGB
  ihdr += static_cast<char>(0);
  ihdr += static_cast<char>(0);
  ihdr += static_cast<char>(0);
  chunk("IHDR", ihdr);
  chunk("IDAT", std::string(compressed.begin(), compressed.end()));
  chunk("IEND", "");
}

inline std::array<uint8_t, 3> label_color(int label) {
  static const std::array<uint8_t, 3> palette[] = {
      {31, 119, 180}, {255, 127, 14}, {44, 160, 44},  {214, 39, 40},   {148, 103, 189},
      {140, 86, 75},  {227, 119, 194}, {127, 127, 127}, {188, 189, 34}, {23, 190, 207},
      {174, 199, 232}, {255, 187, 120}, {152, 223, 138}, {255, 152, 150}, {197, 176, 213},
      {196, 156, 148}, {247, 182, 210}, {199, 199, 199}, {219, 219, 141}, {158, 218, 229}};
  if (label < 0) return {0, 0, 0};
  return palette[label % 20];
}

inline void render_to_png(const RenderResult& img, const std::string& path) {
  std::vector<uint8_t> rgb(static_cast<size_t>(img.width) * img.height * 3);
  for (size_t i = 0; i < img.labels.size(); ++i) {
    auto c = label_color(img.labels[i]);
    rgb[3 * i] = c[0];
    rgb[3 * i + 1] = c[1];
    rgb[3 * i + 2] = c[2];
  }
  write_png(path, img.width, img.height, rgb);
}

/// Rasterizes a disk cover (limit-set approximation) on a white background,
/// colored by the first letter of each disk's word.
inline void cover_to_png(const LimitSetCover& cover, int res, const std::string& path) {
  double xmin = 1e9, xmax = -1e9, ymin = 1e9, ymax = -1e9;
  for (const auto& e : cover.disks) {
    if (e.disk.disk_contains_infinity()) continue;
    Complex c = e.disk.center();
    double r = e.disk.radius();
    xmin = std::min(xmin, c.real() - r);
    xmax = std::max(xmax, c.real() + r);
    ymin = std::min(ymin, c.imag() - r);
    ymax = std::max(ymax, c.imag() + r);
  }
  if (xmin > xmax) {
    xmin = ymin = -1;
    xmax = ymax = 1;
  }
  double span = std::max(xmax - xmin, ymax - ymin) * 1.05;
  double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  std::vector<uint8_t> rgb(static_cast<size_t>(res) * res * 3, 255);
  auto to_px = [&](double x, double y) {
    int i = static_cast<int>((x - (cx - span / 2)) / span * res);
    int j = static_cast<int>(((cy + span / 2) - y) / span * res);
    return std::pair<int, int>(i, j);
  };
  for (const auto& e : cover.disks) {
    if (e.disk.disk_contains_infinity()) continue;
    int first = e.word.empty() ? e.vertex : e.word.front();
    auto col = label_color(first);
    Complex c = e.disk.center();
    double r = e.disk.radius();
    auto [i0, j1] = to_px(c.real() - r, c.imag() - r);
    auto [i1, j0] = to_px(c.real() + r, c.imag() + r);
    for (int j = std::max(0, j0); j <= std::min(res - 1, j1); ++j)
      for (int i = std::max(0, i0); i <= std::min(res - 1, i1); ++i) {
        double x = cx - span / 2 + (i + 0.5) * span / res;
        double y = cy + span / 2 - (j + 0.5) * span / res;
        if (std::norm(Complex(x, y) - c) <= r * r) {
          size_t idx = (static_cast<size_t>(j) * res + i) * 3;
          rgb[idx] = col[0];
          rgb[idx + 1] = col[1];
          rgb[idx + 2] = col[2];
        }
      }
  }
  write_png(path, res, res, rgb);
}

}  // namespace kissing
