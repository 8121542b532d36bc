#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace expofuse {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Malformed or unsupported PNM data. offset is the byte position where
// parsing stopped.
class ParseError : public Error
{
public:
  ParseError(const std::string& what, std::size_t offset)
    : Error(what + " (at byte offset " + std::to_string(offset) + ")"), message_(what),
      offset_(offset)
  {
  }

  std::size_t offset() const noexcept { return offset_; }
  /// The description without the offset suffix.
  const std::string& message() const noexcept { return message_; }

private:
  std::string message_;
  std::size_t offset_;
};

// Filesystem failures while reading or writing images.
class IoError : public Error
{
public:
  using Error::Error;
};

// Planes, images or pyramids whose shapes do not agree.
class DimensionError : public Error
{
public:
  using Error::Error;
};

// A parameter outside its admissible range.
class ConfigError : public Error
{
public:
  using Error::Error;
};

} // namespace expofuse
