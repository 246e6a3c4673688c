#pragma once

#include <stdexcept>
#include <string>

namespace viewaug {

// Raised when a depth sample is non-positive or non-finite; carries the pixel.
class BadDepthError : public std::runtime_error {
 public:
  BadDepthError(int x, int y, double value)
      : std::runtime_error("bad depth " + std::to_string(value) + " at pixel (" +
                           std::to_string(x) + ", " + std::to_string(y) + ")"),
        x_(x),
        y_(y),
        value_(value) {}

  int x() const { return x_; }
  int y() const { return y_; }
  double value() const { return value_; }

 private:
  int x_;
  int y_;
  double value_;
};

// Dataset ingestion failure; message names the offending record.
class LoadError : public std::runtime_error {
 public:
  explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace viewaug
