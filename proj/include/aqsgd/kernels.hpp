#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops of the quantizer. A scalar reference
// implementation always exists; an AVX2 variant is selected at runtime when
// the CPU supports it (override with AQSGD_SIMD=scalar|avx2|auto or
// set_active_ops). The per-coordinate paths (counter RNG, level search,
// stochastic rounding, dequantize) are bit-identical across variants; the
// reductions (norms, variance sums) may differ in final ulps because the
// accumulation order differs.
namespace aqsgd::kernels {

struct Ops {
  const char* name;
  double (*norm_l1)(const double* v, std::size_t n);
  double (*norm_l2)(const double* v, std::size_t n);
  double (*norm_linf)(const double* v, std::size_t n);
  // Stochastic rounding of one bucket. r_i = v_i * inv_norm (signed when
  // signed_r, |.| otherwise), clamped into the grid range; out_idx gets the
  // chosen grid index, out_sign the sign bit (non-symmetric grids only; pass
  // nullptr when signed_r). The uniform draw for coordinate i is
  // counter_u01(key, i).
  void (*quantize_bucket)(const double* v, std::size_t n, const double* grid, std::size_t grid_n,
                          double inv_norm, bool signed_r, std::uint64_t key, std::uint16_t* out_idx,
                          std::uint8_t* out_sign);
  void (*dequantize_bucket)(const std::uint16_t* idx, const std::uint8_t* sign, std::size_t n,
                            const double* grid, double norm, bool signed_r, double* out);
  // Sum over the bucket of the single-coordinate quantization variance
  // (upper-neighbour minus r) * (r minus lower-neighbour) on the full grid.
  double (*variance_bucket)(const double* v, std::size_t n, const double* grid, std::size_t grid_n,
                            double inv_norm, bool signed_r);
};

const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when unavailable on this CPU/build
const Ops& active_ops();
// Test hook; nullptr restores automatic selection.
void set_active_ops(const Ops* ops);

// Counter-based RNG primitives (SplitMix64 finalizer). Pure functions of the
// key material, so any worker/step/coordinate draw is reproducible without
// shared state.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t domain, std::uint64_t worker,
                         std::uint64_t step);
std::uint64_t bucket_key(std::uint64_t stream, std::uint64_t bucket);
double u01_from_bits(std::uint64_t h);  // 52-bit uniform in [0,1)
double counter_u01(std::uint64_t key, std::uint64_t i);

}  // namespace aqsgd::kernels
