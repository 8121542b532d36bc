#pragma once

#include "expofuse/image.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace expofuse {

/// Parses binary PGM (P5) or PPM (P6) data with maxval 255. Samples are
/// mapped to [0,1] by v/255. Throws ParseError on malformed input.
ImageD read_pnm(std::string_view bytes);

/// Encodes a gray image as P5 and an RGB image as P6. Samples are clamped
/// to [0,1] and rounded half away from zero.
std::string write_pnm(const ImageD& image);

/// Quantizes one sample to 8 bits: round(v * 255) clamped to [0, 255].
std::uint8_t quantize(double v);

ImageD read_pnm_file(const std::filesystem::path& path);

/// Writes through a temporary sibling file that is renamed into place, so a
/// failed write never leaves a partial image at path.
void write_pnm_file(const std::filesystem::path& path, const ImageD& image);

} // namespace expofuse
