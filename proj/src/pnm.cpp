#include "expofuse/pnm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <random>
#include <system_error>

namespace expofuse {

namespace {

bool is_space(char c)
{
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class HeaderReader
{
public:
  explicit HeaderReader(std::string_view bytes)
    : bytes_(bytes)
  {
  }

  std::size_t pos() const { return pos_; }
  std::size_t last_field_offset() const { return last_start_; }

  void skip_space_and_comments()
  {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
          ++pos_;
      } else {
        break;
      }
    }
  }

  long field(const char* name)
  {
    skip_space_and_comments();
    const std::size_t start = pos_;
    last_start_ = start;
    long value = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000)
        throw ParseError(std::string("header field ") + name + " is too large", start);
      ++pos_;
    }
    if (pos_ == start) {
      if (pos_ >= bytes_.size())
        throw ParseError(std::string("truncated header, missing ") + name, pos_);
      throw ParseError(std::string("expected a decimal ") + name, pos_);
    }
    return value;
  }

  void single_whitespace()
  {
    if (pos_ >= bytes_.size())
      throw ParseError("truncated header, missing whitespace before raster", pos_);
    if (!is_space(bytes_[pos_]))
      throw ParseError("expected whitespace before raster", pos_);
    ++pos_;
  }

private:
  std::string_view bytes_;
  std::size_t pos_ = 2;
  std::size_t last_start_ = 2;
};

} // namespace

ImageD read_pnm(std::string_view bytes)
{
  if (bytes.size() < 2)
    throw ParseError("truncated magic number", bytes.size());
  std::size_t channels = 0;
  if (bytes.substr(0, 2) == "P5")
    channels = 1;
  else if (bytes.substr(0, 2) == "P6")
    channels = 3;
  else
    throw ParseError("unsupported magic number, expected P5 or P6", 0);

  HeaderReader header(bytes);
  const long width = header.field("width");
  const long height = header.field("height");
  const long maxval = header.field("maxval");
  const std::size_t maxval_offset = header.last_field_offset();
  if (width < 1 || height < 1)
    throw ParseError("image dimensions must be positive", maxval_offset);
  if (maxval != 255)
    throw ParseError("unsupported maxval " + std::to_string(maxval) + ", only 255 is supported",
                     maxval_offset);
  header.single_whitespace();

  const std::size_t start = header.pos();
  const std::size_t count =
    static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * channels;
  if (bytes.size() - start < count)
    throw ParseError("truncated raster: expected " + std::to_string(count) + " bytes, found " +
                       std::to_string(bytes.size() - start),
                     bytes.size());

  std::vector<PlaneD> planes(channels, PlaneD(height, width));
  const auto* raster = reinterpret_cast<const unsigned char*>(bytes.data() + start);
  for (Eigen::Index y = 0; y < height; ++y) {
    for (Eigen::Index x = 0; x < width; ++x) {
      for (std::size_t c = 0; c < channels; ++c)
        planes[c](y, x) = static_cast<double>(*raster++) / 255.0;
    }
  }
  return ImageD(std::move(planes));
}

std::uint8_t quantize(double v)
{
  const double scaled = std::clamp(v, 0.0, 1.0) * 255.0;
  return static_cast<std::uint8_t>(std::clamp(std::lround(scaled), 0L, 255L));
}

std::string write_pnm(const ImageD& image)
{
  const std::size_t channels = image.channel_count();
  std::string out = (channels == 1 ? "P5\n" : "P6\n") + std::to_string(image.width()) + " " +
                    std::to_string(image.height()) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + static_cast<std::size_t>(image.width() * image.height()) * channels);
  std::size_t i = header;
  for (Eigen::Index y = 0; y < image.height(); ++y) {
    for (Eigen::Index x = 0; x < image.width(); ++x) {
      for (std::size_t c = 0; c < channels; ++c)
        out[i++] = static_cast<char>(quantize(image.channel(c)(y, x)));
    }
  }
  return out;
}

ImageD read_pnm_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path.string() + " for reading");
  std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad())
    throw IoError("error reading " + path.string());
  try {
    return read_pnm(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.message(), e.offset());
  }
}

void write_pnm_file(const std::filesystem::path& path, const ImageD& image)
{
  const std::string bytes = write_pnm(image);
  std::random_device rd;
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("error writing " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot rename into " + path.string() + ": " + ec.message());
  }
}

} // namespace expofuse
