#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace latspec {

/// Largest lattice dimension supported by the fixed-size site representation.
inline constexpr int kMaxDim = 4;

/// Coordinates are kept inside [-kCoordLimit, kCoordLimit] so that translating
/// by any offset of comparable size cannot overflow a 32-bit integer.
inline constexpr std::int32_t kCoordLimit = 1 << 28;

class LatticeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A point of Z^d. Coordinates beyond the active dimension are kept at zero,
/// so comparisons and hashing never need to know d.
struct Site {
  std::array<std::int32_t, kMaxDim> c{};

  constexpr std::int32_t &operator[](int k) { return c[static_cast<std::size_t>(k)]; }
  constexpr std::int32_t operator[](int k) const { return c[static_cast<std::size_t>(k)]; }

  friend constexpr auto operator<=>(const Site &, const Site &) = default;
  friend constexpr bool operator==(const Site &, const Site &) = default;

  friend constexpr Site operator+(Site a, const Site &b) {
    for (int k = 0; k < kMaxDim; ++k) a[k] += b[k];
    return a;
  }
  friend constexpr Site operator-(Site a, const Site &b) {
    for (int k = 0; k < kMaxDim; ++k) a[k] -= b[k];
    return a;
  }
  friend constexpr Site operator*(std::int32_t s, Site a) {
    for (int k = 0; k < kMaxDim; ++k) a[k] *= s;
    return a;
  }

  static constexpr Site unit(int k) {
    Site s;
    s[k] = 1;
    return s;
  }
};

struct SiteHash {
  std::size_t operator()(const Site &s) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (int k = 0; k < kMaxDim; ++k) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(s[k])) + 0x9e3779b97f4a7c15ULL +
           (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

inline void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw LatticeError("dimension must be in [1, " + std::to_string(kMaxDim) + "], got " +
                       std::to_string(dim));
}

inline void check_coord_range(const Site &s) {
  for (int k = 0; k < kMaxDim; ++k)
    if (s[k] > kCoordLimit || s[k] < -kCoordLimit)
      throw LatticeError("site coordinate outside the supported range");
}

inline std::int64_t dot(const Site &a, const Site &b, int dim) {
  std::int64_t s = 0;
  for (int k = 0; k < dim; ++k) s += static_cast<std::int64_t>(a[k]) * b[k];
  return s;
}

inline std::int64_t squared_norm(const Site &a, int dim) { return dot(a, a, dim); }

std::string to_string(const Site &s, int dim);

} // namespace latspec
