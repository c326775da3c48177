#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace aqsgd {

// Normalization norm. q = 1, 2 and infinity have fast paths; any finite q >= 1
// is accepted.
struct NormKind {
  double q = 2.0;

  static NormKind l1() { return {1.0}; }
  static NormKind l2() { return {2.0}; }
  static NormKind linf();
  bool is_inf() const;
  bool operator==(const NormKind&) const = default;
};

NormKind norm_from_text(const std::string& text);  // "1", "2", "inf", "4.5", ...
std::string norm_to_text(NormKind q);

// Ordered quantization grid. Non-symmetric grids live on [0,1] with implicit
// endpoints 0 and 1 around the stored interior levels. Symmetric grids store
// the positive interior and materialize the mirrored grid on [-1,1] with
// implicit endpoints -1 and 1. The ternary grid {-1,0,1} is the symmetric grid
// with an empty positive interior; its materialized grid gains the 0 level so
// the quantizer never special-cases it.
class LevelSet {
 public:
  static LevelSet nonsymmetric(std::vector<double> interior);
  static LevelSet symmetric(std::vector<double> interior);

  bool is_symmetric() const { return symmetric_; }
  bool is_ternary() const { return symmetric_ && interior_.empty(); }
  std::size_t interior_count() const { return interior_.size(); }  // s
  const std::vector<double>& interior() const { return interior_; }

  // Full sorted grid: [0, l_1..l_s, 1] or [-1, -l_s..-l_1, l_1..l_s, 1]
  // (with 0 in place of the empty mirrored interior for ternary).
  const std::vector<double>& grid() const { return grid_; }
  std::size_t alphabet_size() const { return grid_.size(); }

  // Positive half including the top endpoint 1: [0, l_1..l_s, 1] for
  // non-symmetric grids, [l_1..l_s, 1] for symmetric ones ([0, 1] for
  // ternary). This is the grid the variance objective integrates over.
  std::span<const double> positive_grid() const;

  std::uint64_t hash() const { return hash_; }

  std::string to_text() const;  // interior levels as decimals
  static LevelSet from_text(const std::string& text, bool symmetric);

  bool operator==(const LevelSet& other) const {
    return symmetric_ == other.symmetric_ && grid_ == other.grid_;
  }

 private:
  LevelSet(std::vector<double> interior, bool symmetric);

  std::vector<double> interior_;
  std::vector<double> grid_;
  bool symmetric_ = false;
  std::uint64_t hash_ = 0;
};

// QSGD-style arithmetic grid l_j = j/(s+1) on [0,1].
LevelSet uniform_levels(std::size_t s);
// Same spacing for the positive half of a symmetric grid.
LevelSet uniform_levels_symmetric(std::size_t s);
// Exponentially spaced levels {p^s,...,p,1}; symmetric by default (NUQSGD
// uses the symmetric form under L2 with p = 0.5).
LevelSet exponential_levels(std::size_t s, double p, bool symmetric = true);
// TernGrad grid {-1,0,1}.
LevelSet ternary_levels();

std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t seed = 0xcbf29ce484222325ull);

}  // namespace aqsgd
