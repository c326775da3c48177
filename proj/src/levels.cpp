#include "aqsgd/levels.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace aqsgd {

namespace {
constexpr double kMinSeparation = 1e-9;  // keeps bisection and rho well-conditioned
}

NormKind NormKind::linf() { return {std::numeric_limits<double>::infinity()}; }

bool NormKind::is_inf() const { return std::isinf(q); }

NormKind norm_from_text(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF") return NormKind::linf();
  double q = 0.0;
  try {
    std::size_t pos = 0;
    q = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw std::invalid_argument("norm: expected a number >= 1 or 'inf', got '" + text + "'");
  }
  if (!(q >= 1.0)) throw std::invalid_argument("norm: q must be >= 1, got '" + text + "'");
  return {q};
}

std::string norm_to_text(NormKind q) {
  if (q.is_inf()) return "inf";
  std::ostringstream os;
  os << q.q;
  return os.str();
}

std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t seed) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

LevelSet::LevelSet(std::vector<double> interior, bool symmetric)
    : interior_(std::move(interior)), symmetric_(symmetric) {
  for (double v : interior_) {
    if (!std::isfinite(v)) throw std::invalid_argument("levels: non-finite interior level");
  }
  if (!symmetric_ && interior_.empty()) {
    throw std::invalid_argument("levels: non-symmetric grid needs at least one interior level");
  }

  if (symmetric_ && interior_.empty()) {
    grid_ = {-1.0, 0.0, 1.0};  // ternary
  } else if (symmetric_) {
    grid_.reserve(2 * interior_.size() + 2);
    grid_.push_back(-1.0);
    for (auto it = interior_.rbegin(); it != interior_.rend(); ++it) grid_.push_back(-*it);
    for (double v : interior_) grid_.push_back(v);
    grid_.push_back(1.0);
  } else {
    grid_.reserve(interior_.size() + 2);
    grid_.push_back(0.0);
    for (double v : interior_) grid_.push_back(v);
    grid_.push_back(1.0);
  }

  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    if (!(grid_[i + 1] - grid_[i] >= kMinSeparation)) {
      throw std::invalid_argument("levels: grid must be strictly increasing with separation >= 1e-9");
    }
  }

  std::uint8_t flag = symmetric_ ? 1 : 0;
  std::uint64_t h = fnv1a64(&flag, 1);
  std::uint64_t n = grid_.size();
  h = fnv1a64(&n, sizeof(n), h);
  hash_ = fnv1a64(grid_.data(), grid_.size() * sizeof(double), h);
}

LevelSet LevelSet::nonsymmetric(std::vector<double> interior) {
  return LevelSet(std::move(interior), false);
}

LevelSet LevelSet::symmetric(std::vector<double> interior) {
  return LevelSet(std::move(interior), true);
}

std::span<const double> LevelSet::positive_grid() const {
  if (!symmetric_) return {grid_.data(), grid_.size()};
  // Mirrored grid: positive side starts at l_1; the ternary grid {-1,0,1}
  // yields [0,1].
  std::size_t start = is_ternary() ? 1 : grid_.size() / 2;
  return {grid_.data() + start, grid_.size() - start};
}

std::string LevelSet::to_text() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < interior_.size(); ++i) {
    if (i) os << ' ';
    os << interior_[i];
  }
  return os.str();
}

LevelSet LevelSet::from_text(const std::string& text, bool symmetric) {
  std::vector<double> interior;
  std::string token;
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream is(normalized);
  while (is >> token) {
    std::size_t pos = 0;
    double v = std::stod(token, &pos);
    if (pos != token.size()) throw std::invalid_argument("levels: bad number '" + token + "'");
    interior.push_back(v);
  }
  return LevelSet(std::move(interior), symmetric);
}

LevelSet uniform_levels(std::size_t s) {
  if (s == 0) throw std::invalid_argument("uniform_levels: s must be >= 1");
  std::vector<double> interior(s);
  for (std::size_t j = 1; j <= s; ++j) interior[j - 1] = static_cast<double>(j) / static_cast<double>(s + 1);
  return LevelSet::nonsymmetric(std::move(interior));
}

LevelSet uniform_levels_symmetric(std::size_t s) {
  if (s == 0) throw std::invalid_argument("uniform_levels_symmetric: s must be >= 1");
  std::vector<double> interior(s);
  for (std::size_t j = 1; j <= s; ++j) interior[j - 1] = static_cast<double>(j) / static_cast<double>(s + 1);
  return LevelSet::symmetric(std::move(interior));
}

LevelSet exponential_levels(std::size_t s, double p, bool symmetric) {
  if (s == 0) throw std::invalid_argument("exponential_levels: s must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("exponential_levels: p must be in (0,1)");
  std::vector<double> interior(s);
  for (std::size_t j = 0; j < s; ++j) interior[j] = std::pow(p, static_cast<double>(s - j));
  return symmetric ? LevelSet::symmetric(std::move(interior)) : LevelSet::nonsymmetric(std::move(interior));
}

LevelSet ternary_levels() { return LevelSet::symmetric({}); }

}  // namespace aqsgd
