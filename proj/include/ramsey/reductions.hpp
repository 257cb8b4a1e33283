#pragma once

// Coloring-to-coloring transformations and the greedy set builders.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/core.hpp"

namespace ramsey {

/// Raised by rainbow_to_free when some color has three or more preimages.
class not_two_bounded : public std::invalid_argument {
public:
  explicit not_two_bounded(Color c)
      : std::invalid_argument("coloring is not 2-bounded: color " + std::to_string(c) +
                              " has more than two preimages"),
        color_(c) {}
  Color color() const noexcept { return color_; }

private:
  Color color_;
};

/// g(σ) = min(d, f(σ)); the result declares d+1 colors.
inline Coloring truncate(const Coloring &f, Color d) {
  if (d < 1)
    throw std::invalid_argument("truncation bound d must be at least 1");
  std::vector<Color> out(f.values());
  for (Color &v : out)
    v = std::min(v, d);
  return Coloring(f.arity(), f.domain(), std::move(out), d + 1);
}

/// g(σ) = min(τ - σ) for the colex-earlier τ sharing σ's color, else 0.
/// Every g-free set is an f-rainbow. The fallback 0 may coincide with a
/// genuine value; soundness only uses the first branch.
inline Coloring rainbow_to_free(const Coloring &f) {
  std::unordered_map<Color, std::uint64_t> first; // color -> earliest rank
  std::unordered_map<Color, unsigned> mult;
  for (Color c : f.values())
    if (++mult[c] > 2)
      throw not_two_bounded(c);

  std::vector<Color> out(f.size(), 0);
  for_each_tuple_colex(f.domain(), f.arity(), [&](std::span<const Element> sigma, std::uint64_t rank) {
    const Color c = f.at_rank(rank);
    auto [it, inserted] = first.emplace(c, rank);
    if (inserted)
      return;
    const Tuple tau = colex_unrank(it->second, f.arity());
    for (Element x : tau)
      if (!std::binary_search(sigma.begin(), sigma.end(), x)) {
        out[rank] = x;
        break;
      }
  });
  return Coloring(f.arity(), f.domain(), std::move(out));
}

/// f_0..f_r with f_k k-trapped and f(σ) = f_{trap_index(σ)}(σ).
inline std::vector<Coloring> trap_decompose(const Coloring &f) {
  const std::size_t r = f.arity();
  std::vector<std::vector<Color>> parts(r + 1, std::vector<Color>(f.size()));
  for_each_tuple_colex(f.domain(), r, [&](std::span<const Element> s, std::uint64_t rank) {
    const Color v = f.at_rank(rank);
    parts[0][rank] = std::min<Color>(s[0], v);
    for (std::size_t k = 1; k < r; ++k)
      parts[k][rank] = std::min<Color>(s[k], std::max<Color>(s[k - 1], v));
    parts[r][rank] = std::max<Color>(Color{s[r - 1]} + 1, v);
  });
  std::vector<Coloring> out;
  out.reserve(r + 1);
  for (auto &p : parts)
    out.emplace_back(f.arity(), f.domain(), std::move(p));
  return out;
}

// ---------------------------------------------------------------------------
// windows

/// A finite stand-in for a Mathias condition: a stem below a reservoir window.
struct WindowCondition {
  Tuple stem;
  Tuple window;

  WindowCondition(Tuple s, Tuple w) : stem(std::move(s)), window(std::move(w)) {
    if (!stem.empty() && !window.empty() && stem.back() >= window.front())
      throw std::invalid_argument("window condition requires max stem < min window");
  }
};

namespace detail {
inline void check_window(const Coloring &g, const Tuple &w, const char *what) {
  if (!w.empty() && w.back() >= g.domain())
    throw std::out_of_range(std::string(what) + " exceeds the coloring domain");
}
} // namespace detail

/// Partial limit ḡ(σ) = lim_{x ∈ Z} g(σ⟨x⟩), read off the last t usable
/// witnesses in the window.
class LimitColoring {
public:
  LimitColoring(unsigned base_arity, unsigned domain, std::size_t threshold,
                std::vector<std::optional<Color>> table)
      : m_(base_arity), n_(domain), t_(threshold), table_(std::move(table)) {}

  unsigned base_arity() const noexcept { return m_; }
  unsigned domain() const noexcept { return n_; }
  std::size_t threshold() const noexcept { return t_; }
  const std::vector<std::optional<Color>> &table() const noexcept { return table_; }

  std::optional<Color> value(const Tuple &sigma) const {
    if (sigma.size() != m_ || (!sigma.empty() && sigma.back() >= n_))
      throw std::invalid_argument("limit coloring lookup outside its domain");
    return table_[colex_rank(sigma)];
  }

  std::vector<Tuple> undefined() const {
    std::vector<Tuple> out;
    for (std::size_t i = 0; i < table_.size(); ++i)
      if (!table_[i])
        out.push_back(colex_unrank(i, m_));
    return out;
  }

  bool total() const {
    return std::all_of(table_.begin(), table_.end(), [](const auto &v) { return v.has_value(); });
  }

  /// ḡ([W]^m) over the defined entries; `complete` reports whether every
  /// m-subset of W had a defined value.
  Palette palette_on(std::span<const Element> w, bool *complete = nullptr) const {
    std::vector<Color> out;
    bool all = true;
    for_each_combination(w, m_, [&](std::span<const Element> s) {
      if (const auto &v = table_[colex_rank(s)])
        out.push_back(*v);
      else
        all = false;
    });
    if (complete)
      *complete = all;
    return Palette(std::move(out));
  }

private:
  unsigned m_;
  unsigned n_;
  std::size_t t_;
  std::vector<std::optional<Color>> table_;
};

/// ḡ(σ) is defined with value v iff g(σ⟨x⟩) = v for the last t elements x of
/// Z above max σ. Entries with disagreement or too few witnesses stay
/// undefined.
inline LimitColoring limit_coloring(const Coloring &g, const Tuple &z, std::size_t t = 3) {
  if (g.arity() < 2)
    throw std::invalid_argument("limit coloring needs arity m+1 with m >= 1");
  if (t < 2)
    throw std::invalid_argument("stability threshold must be at least 2");
  detail::check_window(g, z, "window Z");
  const unsigned m = g.arity() - 1;
  const std::uint64_t entries = binom(g.domain(), m);
  std::vector<std::optional<Color>> table(entries);
  const auto &zs = z.elements();
  for_each_tuple_colex(g.domain(), m, [&](std::span<const Element> s, std::uint64_t rank) {
    auto first_above = std::upper_bound(zs.begin(), zs.end(), s.back());
    const auto usable = static_cast<std::size_t>(zs.end() - first_above);
    if (usable < t)
      return;
    const std::uint64_t base = colex_rank(s);
    std::optional<Color> agreed;
    for (auto it = zs.end() - static_cast<std::ptrdiff_t>(t); it != zs.end(); ++it) {
      const Color v = g.at_rank(base + binom(*it, g.arity()));
      if (!agreed)
        agreed = v;
      else if (*agreed != v)
        return;
    }
    table[rank] = agreed;
  });
  return LimitColoring(m, g.domain(), t, std::move(table));
}

/// Adjoins, in order, the least x ∈ W above the current maximum with
/// g(ρ⟨x⟩) ∈ θ for every ρ ∈ [current]^m, where g has arity m+1.
inline Tuple greedy_achromatic_extension(const Coloring &g, const Palette &theta, const Tuple &w) {
  detail::check_window(g, w, "window W");
  const std::size_t m = g.arity() - 1;
  std::vector<Element> chain;
  for (Element x : w) {
    if (!chain.empty() && x <= chain.back())
      continue;
    const std::uint64_t top = binom(x, g.arity());
    bool admissible = true;
    for_each_combination(chain, m, [&](std::span<const Element> rho) {
      if (admissible && !theta.contains(g.at_rank(colex_rank(rho) + top)))
        admissible = false;
    });
    if (admissible)
      chain.push_back(x);
  }
  return Tuple(std::move(chain));
}

/// Extends a g-free seed by the least y ∈ D above its maximum that keeps it
/// free, until D is exhausted.
inline Tuple greedy_free_extension(const Coloring &g, const Tuple &seed, const Tuple &d) {
  detail::check_window(g, d, "window D");
  if (!is_free(g, seed))
    throw std::invalid_argument("seed " + seed.str() + " is not free for g");
  GrowingSet set(g);
  for (Element x : seed)
    set.push(x);
  for (Element y : d) {
    if (set.size() && y <= set.elements().back())
      continue;
    if (set.probe_free(y))
      set.push(y);
  }
  return Tuple(std::vector<Element>(set.elements().begin(), set.elements().end()));
}

inline Tuple greedy_free_extension(const Coloring &g, const WindowCondition &cond) {
  return greedy_free_extension(g, cond.stem, cond.window);
}

// ---------------------------------------------------------------------------
// block pigeonhole

/// Consecutive blocks ξ_0 < ξ_1 < ... with a palette per block.
class BlockPartition {
public:
  BlockPartition(std::vector<Tuple> blocks, std::vector<Palette> palettes)
      : blocks_(std::move(blocks)), palettes_(std::move(palettes)) {
    if (blocks_.size() != palettes_.size())
      throw std::invalid_argument("one palette per block is required");
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (blocks_[i].empty())
        throw std::invalid_argument("blocks must be nonempty");
      if (i && blocks_[i - 1].back() >= blocks_[i].front())
        throw std::invalid_argument("blocks must satisfy max ξ_i < min ξ_{i+1}");
    }
  }

  /// Palettes computed as f([ξ_i]^r).
  static BlockPartition from_coloring(const Coloring &f, std::vector<Tuple> blocks) {
    std::vector<Palette> p;
    p.reserve(blocks.size());
    for (const auto &b : blocks)
      p.push_back(palette(f, b));
    return BlockPartition(std::move(blocks), std::move(p));
  }

  const std::vector<Tuple> &blocks() const noexcept { return blocks_; }
  const std::vector<Palette> &palettes() const noexcept { return palettes_; }

private:
  std::vector<Tuple> blocks_;
  std::vector<Palette> palettes_;
};

struct PigeonholeResult {
  Palette palette;
  Tuple elements;
};

/// The palette α maximizing |G_α| (ties: lexicographically least α) and G_α.
inline PigeonholeResult block_pigeonhole(const BlockPartition &p) {
  std::map<Palette, std::vector<Element>> groups;
  for (std::size_t i = 0; i < p.blocks().size(); ++i) {
    auto &g = groups[p.palettes()[i]];
    g.insert(g.end(), p.blocks()[i].begin(), p.blocks()[i].end());
  }
  const std::pair<const Palette, std::vector<Element>> *best = nullptr;
  for (const auto &entry : groups) // ascending palette order
    if (!best || entry.second.size() > best->second.size())
      best = &entry;
  if (!best)
    return {};
  return {best->first, Tuple(best->second)};
}

} // namespace ramsey
