#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "alphaunit/errors.hpp"

namespace alphaunit {

/// Observations validated to lie in (0, 1]. `squeezed` records whether a
/// boundary squeeze was applied on the way in.
class unit_sample {
 public:
  unit_sample() = default;

  explicit unit_sample(std::vector<double> values, bool squeezed = false,
                       std::string source = "inline")
      : values_(std::move(values)), squeezed_(squeezed), source_(std::move(source)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double x = values_[i];
      if (!(x > 0.0 && x <= 1.0)) {
        throw domain_error("unit_sample: value " + std::to_string(x) + " at position " +
                           std::to_string(i + 1) + " is outside (0, 1]");
      }
    }
  }

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  bool squeezed() const { return squeezed_; }
  const std::string& source() const { return source_; }

  bool has_upper_boundary() const {
    for (double x : values_) {
      if (x == 1.0) return true;
    }
    return false;
  }

 private:
  std::vector<double> values_;
  bool squeezed_ = false;
  std::string source_ = "inline";
};

}  // namespace alphaunit
