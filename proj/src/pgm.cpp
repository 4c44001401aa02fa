#include "tent/pgm.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace tent {

namespace {

// Header tokenizer: skips whitespace and '#' comments (comment runs to end of
// line), then reads one token. Returns false at end of input.
struct TokenReader {
  const std::string& bytes;
  std::size_t pos = 0;

  bool skip_separators() {
    while (pos < bytes.size()) {
      char ch = bytes[pos];
      if (ch == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos;
      } else {
        return true;
      }
    }
    return false;
  }

  bool next(std::string& token) {
    if (!skip_separators()) return false;
    std::size_t start = pos;
    while (pos < bytes.size() &&
           !std::isspace(static_cast<unsigned char>(bytes[pos])) &&
           bytes[pos] != '#')
      ++pos;
    token = bytes.substr(start, pos - start);
    return true;
  }

  int next_int(const char* what) {
    std::string token;
    if (!next(token))
      throw Error(Errc::MalformedHeader,
                  std::string("missing ") + what + " in header");
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(),
                                     value);
    if (ec != std::errc() || ptr != token.data() + token.size())
      throw Error(Errc::MalformedHeader,
                  std::string("bad ") + what + " token '" + token + "'");
    return value;
  }
};

}  // namespace

GrayImage read_pgm(const std::string& bytes) {
  TokenReader reader{bytes};
  std::string magic;
  if (!reader.next(magic) || (magic != "P2" && magic != "P5"))
    throw Error(Errc::MalformedHeader, "expected magic P2 or P5");
  bool binary = (magic == "P5");

  int width = reader.next_int("width");
  int height = reader.next_int("height");
  int maxval = reader.next_int("maxval");
  if (width < 1 || height < 1)
    throw Error(Errc::MalformedHeader, "dimensions must be positive");
  if (maxval < 1 || maxval > 255) {
    std::ostringstream msg;
    msg << "maxval " << maxval << " unsupported; need 1..255";
    throw Error(Errc::UnsupportedMaxval, msg.str());
  }

  GrayImage img;
  img.width = width;
  img.height = height;
  img.levels = maxval + 1;
  std::size_t count =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  img.pixels.reserve(count);

  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (reader.pos >= bytes.size() ||
        !std::isspace(static_cast<unsigned char>(bytes[reader.pos])))
      throw Error(Errc::MalformedHeader,
                  "expected single whitespace before binary raster");
    std::size_t start = reader.pos + 1;
    if (bytes.size() - start < count)
      throw Error(Errc::TruncatedPixelData, "binary raster shorter than w*h");
    for (std::size_t i = 0; i < count; ++i) {
      int v = static_cast<unsigned char>(bytes[start + i]);
      if (v > maxval) {
        std::ostringstream msg;
        msg << "pixel value " << v << " exceeds maxval " << maxval;
        throw Error(Errc::TruncatedPixelData, msg.str());
      }
      img.pixels.push_back(v);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      std::string token;
      if (!reader.next(token))
        throw Error(Errc::TruncatedPixelData, "fewer pixel tokens than w*h");
      int v = 0;
      auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size() || v < 0)
        throw Error(Errc::TruncatedPixelData,
                    "bad pixel token '" + token + "'");
      if (v > maxval) {
        std::ostringstream msg;
        msg << "pixel value " << v << " exceeds maxval " << maxval;
        throw Error(Errc::TruncatedPixelData, msg.str());
      }
      img.pixels.push_back(v);
    }
  }
  img.check();
  return img;
}

std::string write_pgm(const GrayImage& img, PgmVariant variant) {
  img.check();
  std::ostringstream out;
  int maxval = img.levels - 1;
  if (variant == PgmVariant::P5) {
    out << "P5\n" << img.width << " " << img.height << "\n" << maxval << "\n";
    for (int v : img.pixels) out.put(static_cast<char>(v));
    return out.str();
  }
  out << "P2\n" << img.width << " " << img.height << "\n" << maxval << "\n";
  std::size_t line_len = 0;
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    std::string token = std::to_string(img.pixels[i]);
    if (line_len == 0) {
      out << token;
      line_len = token.size();
    } else if (line_len + 1 + token.size() <= 70) {
      out << ' ' << token;
      line_len += 1 + token.size();
    } else {
      out << '\n' << token;
      line_len = token.size();
    }
  }
  out << '\n';
  return out.str();
}

}  // namespace tent
