#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "alphaunit/alpha_unit.hpp"
#include "alphaunit/errors.hpp"

namespace alphaunit {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// The key is the 64-bit seed; the 128-bit counter is (block index, stream id).
class philox4x32 {
 public:
  using block_type = std::array<std::uint32_t, 4>;
  using key_type = std::array<std::uint32_t, 2>;

  static block_type generate(block_type counter, key_type key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      counter = single_round(counter, key);
    }
    return counter;
  }

 private:
  static block_type single_round(const block_type& c, const key_type& k) {
    const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * c[0];
    const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

/// Single-owner random stream identified by (seed, stream_id). Identical
/// identifiers reproduce identical sequences.
///
/// Normals come from the Box-Muller transform; both variates of a pair are
/// used, the second being held until the next request.
class random_stream {
 public:
  random_stream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed),
        stream_id_(stream_id),
        key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() {
    if (word_ == 2) refill();
    return buffer_[word_++];
  }

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_normal() {
    if (spare_normal_) {
      const double z = *spare_normal_;
      spare_normal_.reset();
      return z;
    }
    const double radius = std::sqrt(-2.0 * std::log(next_uniform()));
    const double angle = 2.0 * std::numbers::pi * next_uniform();
    spare_normal_ = radius * std::sin(angle);
    return radius * std::cos(angle);
  }

 private:
  void refill() {
    const philox4x32::block_type counter{
        static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)};
    const auto out = philox4x32::generate(counter, key_);
    buffer_[0] = (std::uint64_t{out[1]} << 32) | out[0];
    buffer_[1] = (std::uint64_t{out[3]} << 32) | out[2];
    ++block_;
    word_ = 0;
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  philox4x32::key_type key_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int word_ = 2;
  std::optional<double> spare_normal_;
};

enum class distribution_tag { chi_square_3, bimodal_normal_1, bimodal_half_normal, alpha_unit };

inline std::string_view to_string(distribution_tag tag) {
  switch (tag) {
    case distribution_tag::chi_square_3: return "chi2_3";
    case distribution_tag::bimodal_normal_1: return "bn1";
    case distribution_tag::bimodal_half_normal: return "bhn";
    case distribution_tag::alpha_unit: return "au";
  }
  return "unknown";
}

struct sample_batch {
  std::vector<double> values;
  distribution_tag tag;
  std::optional<double> alpha;  // set for bhn and au
};

// Single-variate draws. Each AU variate consumes exactly the randomness of one
// BN(1) variate, which in turn consumes one chi-square(3) variate and one
// uniform for the sign.

/// W = Z^2 - 2 ln U: chi-square(1) plus chi-square(2).
inline double draw_chi2_3(random_stream& stream) {
  const double z = stream.next_normal();
  return z * z - 2.0 * std::log(stream.next_uniform());
}

inline double draw_bn1(random_stream& stream) {
  const double magnitude = std::sqrt(draw_chi2_3(stream));
  return stream.next_uniform() <= 0.5 ? magnitude : -magnitude;
}

inline double draw_bhn(double alpha, random_stream& stream) {
  return alpha * std::abs(draw_bn1(stream));
}

inline double draw_au(double alpha, random_stream& stream) {
  // Clamped to the smallest normal double when exp underflows.
  return std::max(std::exp(-draw_bhn(alpha, stream)), std::numeric_limits<double>::min());
}

namespace detail {

inline void check_count(std::size_t n, const char* where) {
  if (n == 0) throw domain_error(std::string(where) + ": n must be at least 1");
}

template <class Draw>
std::vector<double> draw_many(std::size_t n, Draw&& draw) {
  std::vector<double> values(n);
  for (auto& v : values) v = draw();
  return values;
}

}  // namespace detail

inline sample_batch sample_chi2_3(random_stream& stream, std::size_t n) {
  detail::check_count(n, "sample_chi2_3");
  return {detail::draw_many(n, [&] { return draw_chi2_3(stream); }),
          distribution_tag::chi_square_3, std::nullopt};
}

inline sample_batch sample_bn1(random_stream& stream, std::size_t n) {
  detail::check_count(n, "sample_bn1");
  return {detail::draw_many(n, [&] { return draw_bn1(stream); }),
          distribution_tag::bimodal_normal_1, std::nullopt};
}

inline sample_batch sample_bhn(double alpha, random_stream& stream, std::size_t n) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw domain_error("sample_bhn: alpha must be positive and finite");
  }
  detail::check_count(n, "sample_bhn");
  return {detail::draw_many(n, [&] { return draw_bhn(alpha, stream); }),
          distribution_tag::bimodal_half_normal, alpha};
}

inline sample_batch sample_au(const alpha_unit_params& params, random_stream& stream,
                              std::size_t n) {
  detail::check_count(n, "sample_au");
  const double alpha = params.alpha();
  return {detail::draw_many(n, [&] { return draw_au(alpha, stream); }),
          distribution_tag::alpha_unit, alpha};
}

}  // namespace alphaunit
