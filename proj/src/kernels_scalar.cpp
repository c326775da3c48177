#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>

#include "aqsgd/kernels.hpp"

namespace aqsgd::kernels {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
constexpr std::uint64_t kCoordMul = 0xd1b54a32d192ed03ull;
}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t domain, std::uint64_t worker,
                         std::uint64_t step) {
  std::uint64_t h = mix64(seed ^ kGolden * (domain + 1));
  h = mix64(h ^ kGolden * (worker + 1));
  return mix64(h ^ kGolden * (step + 1));
}

std::uint64_t bucket_key(std::uint64_t stream, std::uint64_t bucket) {
  return mix64(stream ^ kGolden * (bucket + 1));
}

double u01_from_bits(std::uint64_t h) {
  // Top 52 bits into the mantissa of a double in [1,2), then shift down.
  const std::uint64_t bits = (h >> 12) | 0x3ff0000000000000ull;
  return std::bit_cast<double>(bits) - 1.0;
}

double counter_u01(std::uint64_t key, std::uint64_t i) {
  return u01_from_bits(mix64(key + kCoordMul * (i + 1)));
}

namespace {

double norm_l1_scalar(const double* v, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::abs(v[i]);
  return acc;
}

double norm_l2_scalar(const double* v, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += v[i] * v[i];
  return std::sqrt(acc);
}

double norm_linf_scalar(const double* v, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc = std::max(acc, std::abs(v[i]));
  return acc;
}

// Index of the bin [g_u, g_{u+1}] containing r, as (count of grid points <= r)
// minus one, clamped so the top endpoint maps to the last bin.
inline std::size_t bin_of(double r, const double* grid, std::size_t grid_n) {
  std::size_t count = 0;
  for (std::size_t j = 0; j < grid_n; ++j) count += (grid[j] <= r) ? 1 : 0;
  if (count == grid_n) --count;  // r == top endpoint
  return count - 1;
}

void quantize_bucket_scalar(const double* v, std::size_t n, const double* grid, std::size_t grid_n,
                            double inv_norm, bool signed_r, std::uint64_t key, std::uint16_t* out_idx,
                            std::uint8_t* out_sign) {
  const double lo = grid[0];
  const double hi = grid[grid_n - 1];
  for (std::size_t i = 0; i < n; ++i) {
    double r = signed_r ? v[i] * inv_norm : std::abs(v[i]) * inv_norm;
    r = r < lo ? lo : (r > hi ? hi : r);
    const std::size_t u = bin_of(r, grid, grid_n);
    const double rho = (r - grid[u]) / (grid[u + 1] - grid[u]);
    const double draw = counter_u01(key, i);
    out_idx[i] = static_cast<std::uint16_t>(u + (draw < rho ? 1 : 0));
    if (out_sign) out_sign[i] = v[i] < 0.0 ? 1 : 0;
  }
}

void dequantize_bucket_scalar(const std::uint16_t* idx, const std::uint8_t* sign, std::size_t n,
                              const double* grid, double norm, bool signed_r, double* out) {
  if (signed_r) {
    for (std::size_t i = 0; i < n; ++i) out[i] = norm * grid[idx[i]];
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double m = norm * grid[idx[i]];
      out[i] = sign[i] ? -m : m;
    }
  }
}

double variance_bucket_scalar(const double* v, std::size_t n, const double* grid, std::size_t grid_n,
                              double inv_norm, bool signed_r) {
  const double lo = grid[0];
  const double hi = grid[grid_n - 1];
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = signed_r ? v[i] * inv_norm : std::abs(v[i]) * inv_norm;
    r = r < lo ? lo : (r > hi ? hi : r);
    const std::size_t u = bin_of(r, grid, grid_n);
    acc += (grid[u + 1] - r) * (r - grid[u]);
  }
  return acc;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {
      "scalar",          norm_l1_scalar,          norm_l2_scalar,          norm_linf_scalar,
      quantize_bucket_scalar, dequantize_bucket_scalar, variance_bucket_scalar,
  };
  return ops;
}

}  // namespace aqsgd::kernels
