#pragma once

// Seeded generators. std::mt19937_64 is fully specified by the standard;
// bounded draws and shuffles are done here rather than through
// <random> distributions, whose output is implementation-defined.

#include <random>
#include <variant>

#include "ramsey/core.hpp"

namespace ramsey {

class Rng {
public:
  static constexpr const char *algorithm = "mt19937_64/rejection-mod";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0)
      throw std::invalid_argument("Rng::below requires a positive bound");
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      const std::uint64_t x = engine_();
      if (x >= threshold)
        return x % bound;
    }
  }

  /// Uniform on [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo)
      throw std::invalid_argument("Rng::between requires lo <= hi");
    if (hi - lo == std::numeric_limits<std::uint64_t>::max())
      return engine_();
    return lo + below(hi - lo + 1);
  }

  bool coin() { return engine_() >> 63; }

  template <class T> void shuffle(std::vector<T> &v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

  /// A uniformly random size-k subset of [lo, hi_exclusive), increasing.
  Tuple subset(Element lo, Element hi_exclusive, std::size_t k) {
    std::vector<Element> pool;
    for (Element x = lo; x < hi_exclusive; ++x)
      pool.push_back(x);
    if (k > pool.size())
      throw std::invalid_argument("subset larger than its range");
    for (std::size_t i = 0; i < k; ++i)
      std::swap(pool[i], pool[i + below(pool.size() - i)]);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return Tuple(std::move(pool));
  }

private:
  std::mt19937_64 engine_;
};

/// Uniform colors in [0, colors).
struct UniformKind {
  Color colors;
};
/// Each color used by at most b tuples; color_budget caps the palette.
struct BBoundedKind {
  std::size_t b;
  std::optional<Color> color_budget;
};
/// f(σ) uniform in I^σ_k; the unbounded top trap is capped at σ(r-1)+cap.
struct KTrappedKind {
  std::size_t k;
  Color cap = 16;
};
/// f(σ) uniform in [0, max σ + offset].
struct BelowMaxKind {
  Color offset;
};

using ColoringKind = std::variant<UniformKind, BBoundedKind, KTrappedKind, BelowMaxKind>;

inline Coloring random_coloring(const ColoringKind &kind, unsigned r, unsigned n, std::uint64_t seed) {
  Rng rng(seed);
  const std::uint64_t size = binom(n, r);

  if (const auto *u = std::get_if<UniformKind>(&kind)) {
    if (u->colors < 1)
      throw std::invalid_argument("uniform coloring needs at least one color");
    std::vector<Color> v(size);
    for (auto &x : v)
      x = rng.below(u->colors);
    return Coloring(r, n, std::move(v), u->colors);
  }

  if (const auto *bb = std::get_if<BBoundedKind>(&kind)) {
    if (bb->b < 1)
      throw std::invalid_argument("b-bounded coloring needs b >= 1");
    if (bb->color_budget && size > bb->b * *bb->color_budget)
      throw std::invalid_argument("b-bounded coloring infeasible: " + std::to_string(size) +
                                  " tuples exceed b * colors = " +
                                  std::to_string(bb->b * *bb->color_budget));
    std::vector<std::uint64_t> ranks(size);
    for (std::uint64_t i = 0; i < size; ++i)
      ranks[i] = i;
    rng.shuffle(ranks);
    std::vector<Color> v(size);
    std::uint64_t pos = 0;
    Color color = 0;
    while (pos < size) {
      const std::uint64_t remaining = size - pos;
      std::uint64_t lo = 1;
      if (bb->color_budget) {
        const std::uint64_t later = (*bb->color_budget - color - 1) * bb->b;
        if (remaining > later)
          lo = remaining - later;
      }
      const std::uint64_t hi = std::min<std::uint64_t>(bb->b, remaining);
      const std::uint64_t block = rng.between(lo, hi);
      for (std::uint64_t i = 0; i < block; ++i)
        v[ranks[pos++]] = color;
      ++color;
    }
    return Coloring(r, n, std::move(v), bb->color_budget ? *bb->color_budget : std::max<Color>(color, 1));
  }

  if (const auto *kt = std::get_if<KTrappedKind>(&kind)) {
    if (kt->k > r)
      throw std::invalid_argument("trap index k must be at most r");
    if (kt->k == r && kt->cap < 1)
      throw std::invalid_argument("top trap cap must be positive");
    return Coloring::from_function(r, n, [&](std::span<const Element> s) -> Color {
      const std::size_t k = kt->k;
      if (k == r)
        return rng.between(Color{s[r - 1]} + 1, Color{s[r - 1]} + kt->cap);
      const Color lo = k == 0 ? 0 : s[k - 1];
      return rng.between(lo, s[k]);
    });
  }

  const auto &bm = std::get<BelowMaxKind>(kind);
  return Coloring::from_function(r, n, [&](std::span<const Element> s) -> Color {
    return rng.between(0, Color{s.back()} + bm.offset);
  });
}

} // namespace ramsey
