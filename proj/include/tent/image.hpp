#pragma once

#include <vector>

#include "tent/errors.hpp"

namespace tent {

// 2-D grayscale raster, row-major, values in [0, levels−1].
struct GrayImage {
  int width = 0;
  int height = 0;
  int levels = 256;  // L
  std::vector<int> pixels;

  void check() const {
    if (width < 1 || height < 1)
      throw Error(Errc::InvalidConfig, "image dimensions must be positive");
    if (levels < 2 || levels > 256)
      throw Error(Errc::InvalidConfig, "levels must be in [2, 256]");
    if (pixels.size() != static_cast<std::size_t>(width) *
                             static_cast<std::size_t>(height))
      throw Error(Errc::InvalidConfig, "pixel count must equal width*height");
    for (int v : pixels)
      if (v < 0 || v >= levels)
        throw Error(Errc::InvalidConfig, "pixel value outside [0, levels-1]");
  }
};

// Gray-level frequency vector of an image.
struct Histogram {
  std::vector<long long> counts;
  long long total = 0;

  int levels() const { return static_cast<int>(counts.size()); }
  int occupied_levels() const {
    int n = 0;
    for (long long c : counts) n += (c > 0);
    return n;
  }
};

Histogram histogram(const GrayImage& img);

}  // namespace tent
