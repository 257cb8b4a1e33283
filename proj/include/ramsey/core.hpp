#pragma once

// Domain types for finite colorings of r-subsets, the colex codec and the
// witness predicates (homogeneous, achromatic, free, thin, rainbow).

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace ramsey {

using Element = std::uint32_t;
using Color = std::uint64_t;
using Mask = std::uint64_t;

/// Raised when a request is well-formed but too large to carry out.
class infeasible_error : public std::runtime_error {
public:
  infeasible_error(const std::string &what, std::string estimate)
      : std::runtime_error(what), estimate_(std::move(estimate)) {}
  const std::string &estimate() const noexcept { return estimate_; }

private:
  std::string estimate_;
};

// ---------------------------------------------------------------------------
// binomials

__extension__ using u128 = unsigned __int128;

/// binom(n, k) in 64 bits; throws std::overflow_error if it does not fit.
constexpr std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n)
    return 0;
  k = std::min(k, n - k);
  u128 acc = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    acc = acc * (n - i) / (i + 1);
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

// ---------------------------------------------------------------------------
// Tuple

inline bool strictly_increasing(std::span<const Element> xs) {
  return std::adjacent_find(xs.begin(), xs.end(),
                            [](Element a, Element b) { return a >= b; }) ==
         xs.end();
}

/// A finite set of naturals, stored as its strictly increasing enumeration.
class Tuple {
public:
  using const_iterator = std::vector<Element>::const_iterator;

  Tuple() = default;
  explicit Tuple(std::vector<Element> elements) : e_(std::move(elements)) {
    if (!strictly_increasing(e_))
      throw std::invalid_argument("tuple must be strictly increasing");
  }
  Tuple(std::initializer_list<Element> il) : Tuple(std::vector<Element>(il)) {}

  static Tuple from_mask(Mask m) {
    std::vector<Element> out;
    while (m) {
      out.push_back(static_cast<Element>(__builtin_ctzll(m)));
      m &= m - 1;
    }
    return Tuple(std::move(out));
  }

  std::size_t size() const noexcept { return e_.size(); }
  bool empty() const noexcept { return e_.empty(); }
  Element operator[](std::size_t i) const { return e_[i]; }
  Element back() const { return e_.back(); }
  Element front() const { return e_.front(); }
  const_iterator begin() const noexcept { return e_.begin(); }
  const_iterator end() const noexcept { return e_.end(); }
  const std::vector<Element> &elements() const noexcept { return e_; }
  operator std::span<const Element>() const noexcept { return e_; }

  bool contains(Element x) const {
    return std::binary_search(e_.begin(), e_.end(), x);
  }

  /// this ⟨x⟩; x must exceed every element.
  Tuple append(Element x) const {
    if (!e_.empty() && x <= e_.back())
      throw std::invalid_argument("appended element must exceed the maximum");
    Tuple t = *this;
    t.e_.push_back(x);
    return t;
  }

  /// Concatenation στ; requires max σ < min τ.
  Tuple concat(const Tuple &rest) const {
    if (!e_.empty() && !rest.empty() && rest.front() <= e_.back())
      throw std::invalid_argument("concatenation requires max σ < min τ");
    Tuple t = *this;
    t.e_.insert(t.e_.end(), rest.e_.begin(), rest.e_.end());
    return t;
  }

  Mask mask() const {
    Mask m = 0;
    for (Element x : e_) {
      if (x >= 64)
        throw std::out_of_range("element does not fit a 64-bit mask");
      m |= Mask{1} << x;
    }
    return m;
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i)
        s += ",";
      s += std::to_string(e_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const Tuple &, const Tuple &) = default;
  friend auto operator<=>(const Tuple &a, const Tuple &b) { return a.e_ <=> b.e_; }

private:
  std::vector<Element> e_;
};

inline Tuple range_tuple(Element lo, Element hi_exclusive) {
  std::vector<Element> v;
  for (Element x = lo; x < hi_exclusive; ++x)
    v.push_back(x);
  return Tuple(std::move(v));
}

// ---------------------------------------------------------------------------
// combinations and the colex codec

/// Calls fn(span) for each size-k subset of `set` in lexicographic order.
/// The span aliases a scratch buffer valid only during the call.
template <class Fn>
void for_each_combination(std::span<const Element> set, std::size_t k, Fn &&fn) {
  const std::size_t n = set.size();
  if (k > n)
    return;
  std::vector<std::size_t> idx(k);
  std::vector<Element> buf(k);
  for (std::size_t i = 0; i < k; ++i)
    idx[i] = i;
  while (true) {
    for (std::size_t i = 0; i < k; ++i)
      buf[i] = set[idx[i]];
    fn(std::span<const Element>(buf));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1)
      --i;
    if (i == 0)
      return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j)
      idx[j] = idx[j - 1] + 1;
  }
}

inline std::uint64_t colex_rank(std::span<const Element> t) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    rank += binom(t[i], i + 1);
  return rank;
}

/// Rank Σ binom(t(i), i+1); rejects non-increasing input.
inline std::uint64_t colex_rank(const Tuple &t) {
  return colex_rank(std::span<const Element>(t));
}

inline std::uint64_t checked_colex_rank(std::span<const Element> t) {
  if (!strictly_increasing(t))
    throw std::invalid_argument("colex_rank: tuple must be strictly increasing");
  return colex_rank(t);
}

inline Tuple colex_unrank(std::uint64_t rank, std::size_t r) {
  std::vector<Element> t(r);
  for (std::size_t i = r; i > 0; --i) {
    // largest x with binom(x, i) <= rank
    std::uint64_t lo = i - 1, hi = i - 1;
    while (binom(hi + 1, i) <= rank)
      hi = hi == lo ? hi + 1 : hi * 2;
    // binom(lo, i) <= rank; find boundary in [lo, hi]
    while (lo < hi) {
      std::uint64_t mid = lo + (hi - lo + 1) / 2;
      if (binom(mid, i) <= rank)
        lo = mid;
      else
        hi = mid - 1;
    }
    t[i - 1] = static_cast<Element>(lo);
    rank -= binom(lo, i);
  }
  return Tuple(std::move(t));
}

/// Visits every r-subset of {0..n-1} in colex order as fn(span, rank).
template <class Fn>
void for_each_tuple_colex(std::size_t n, std::size_t r, Fn &&fn) {
  if (r > n)
    return;
  std::vector<Element> t(r);
  for (std::size_t i = 0; i < r; ++i)
    t[i] = static_cast<Element>(i);
  std::uint64_t rank = 0;
  while (true) {
    fn(std::span<const Element>(t), rank);
    ++rank;
    std::size_t i = 0;
    while (i < r) {
      const Element limit = i + 1 < r ? t[i + 1] : static_cast<Element>(n);
      if (t[i] + 1 < limit)
        break;
      ++i;
    }
    if (i == r)
      return;
    ++t[i];
    for (std::size_t j = 0; j < i; ++j)
      t[j] = static_cast<Element>(j);
  }
}

// ---------------------------------------------------------------------------
// Coloring

/// f : [n]^r -> colors, stored densely by colex rank.
class Coloring {
public:
  Coloring(unsigned r, unsigned n, std::vector<Color> values,
           std::optional<Color> color_count = std::nullopt)
      : r_(r), n_(n), count_(color_count), values_(std::move(values)) {
    if (r_ < 1)
      throw std::invalid_argument("coloring arity must be at least 1");
    if (values_.size() != binom(n_, r_))
      throw std::invalid_argument(
          "coloring has " + std::to_string(values_.size()) +
          " values, expected binom(" + std::to_string(n_) + "," +
          std::to_string(r_) + ") = " + std::to_string(binom(n_, r_)));
    if (count_) {
      for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] >= *count_)
          throw std::invalid_argument("value " + std::to_string(values_[i]) +
                                      " at rank " + std::to_string(i) +
                                      " is outside the declared color count " +
                                      std::to_string(*count_));
    }
  }

  /// Tabulates fn(span tuple) over [n]^r.
  template <class Fn>
  static Coloring from_function(unsigned r, unsigned n, Fn &&fn,
                                std::optional<Color> color_count = std::nullopt) {
    if (r < 1)
      throw std::invalid_argument("coloring arity must be at least 1");
    std::vector<Color> values(binom(n, r));
    for_each_tuple_colex(n, r, [&](std::span<const Element> t, std::uint64_t rank) {
      values[rank] = fn(t);
    });
    return Coloring(r, n, std::move(values), color_count);
  }

  unsigned arity() const noexcept { return r_; }
  unsigned domain() const noexcept { return n_; }
  std::optional<Color> color_count() const noexcept { return count_; }
  const std::vector<Color> &values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  Color at_rank(std::uint64_t rank) const { return values_[rank]; }

  /// Unchecked lookup of a strictly increasing r-tuple below n.
  Color operator()(std::span<const Element> t) const { return values_[colex_rank(t)]; }

  Color at(const Tuple &t) const {
    if (t.size() != r_)
      throw std::invalid_argument("tuple arity " + std::to_string(t.size()) +
                                  " does not match coloring arity " +
                                  std::to_string(r_));
    if (!t.empty() && t.back() >= n_)
      throw std::out_of_range("tuple " + t.str() + " outside domain [" +
                              std::to_string(n_) + "]");
    return values_[colex_rank(t)];
  }

  friend bool operator==(const Coloring &, const Coloring &) = default;

private:
  unsigned r_;
  unsigned n_;
  std::optional<Color> count_;
  std::vector<Color> values_;
};

// ---------------------------------------------------------------------------
// Palette

/// A finite set of colors, iterated in ascending order.
class Palette {
public:
  using const_iterator = std::vector<Color>::const_iterator;

  Palette() = default;
  explicit Palette(std::vector<Color> colors) : c_(std::move(colors)) {
    std::sort(c_.begin(), c_.end());
    c_.erase(std::unique(c_.begin(), c_.end()), c_.end());
  }
  Palette(std::initializer_list<Color> il) : Palette(std::vector<Color>(il)) {}

  static Palette iota(Color count) {
    std::vector<Color> v(count);
    for (Color i = 0; i < count; ++i)
      v[i] = i;
    return Palette(std::move(v));
  }

  std::size_t size() const noexcept { return c_.size(); }
  bool empty() const noexcept { return c_.empty(); }
  const_iterator begin() const noexcept { return c_.begin(); }
  const_iterator end() const noexcept { return c_.end(); }
  const std::vector<Color> &colors() const noexcept { return c_; }

  bool contains(Color x) const { return std::binary_search(c_.begin(), c_.end(), x); }
  bool subset_of(const Palette &other) const {
    return std::includes(other.c_.begin(), other.c_.end(), c_.begin(), c_.end());
  }

  friend bool operator==(const Palette &, const Palette &) = default;
  friend auto operator<=>(const Palette &a, const Palette &b) { return a.c_ <=> b.c_; }

private:
  std::vector<Color> c_;
};

// ---------------------------------------------------------------------------
// PropertySpec

struct Homogeneous {
  friend bool operator==(const Homogeneous &, const Homogeneous &) = default;
};

struct Achromatic {
  std::size_t d;
  explicit Achromatic(std::size_t d_) : d(d_) {
    if (d < 1)
      throw std::invalid_argument("achromatic bound d must be at least 1");
  }
  friend bool operator==(const Achromatic &, const Achromatic &) = default;
};

struct Free {
  friend bool operator==(const Free &, const Free &) = default;
};

/// Thin relative to a declared universe: the palette differs from it.
struct Thin {
  Palette universe;
  explicit Thin(Palette u) : universe(std::move(u)) {
    if (universe.empty())
      throw std::invalid_argument("thin universe must be nonempty");
  }
  friend bool operator==(const Thin &, const Thin &) = default;
};

struct Rainbow {
  friend bool operator==(const Rainbow &, const Rainbow &) = default;
};

using PropertySpec = std::variant<Homogeneous, Achromatic, Free, Thin, Rainbow>;

inline std::string spec_name(const PropertySpec &spec) {
  struct {
    std::string operator()(const Homogeneous &) const { return "homogeneous"; }
    std::string operator()(const Achromatic &a) const {
      return "achromatic(" + std::to_string(a.d) + ")";
    }
    std::string operator()(const Free &) const { return "free"; }
    std::string operator()(const Thin &t) const {
      return "thin(" + std::to_string(t.universe.size()) + " colors)";
    }
    std::string operator()(const Rainbow &) const { return "rainbow"; }
  } v;
  return std::visit(v, spec);
}

// ---------------------------------------------------------------------------
// predicates

namespace detail {
inline void check_subset(const Coloring &f, std::span<const Element> h) {
  if (!strictly_increasing(h))
    throw std::invalid_argument("set must be given in strictly increasing order");
  if (!h.empty() && h.back() >= f.domain())
    throw std::out_of_range("set element " + std::to_string(h.back()) +
                            " exceeds the domain bound " +
                            std::to_string(f.domain()));
}
} // namespace detail

/// f([H]^r).
inline Palette palette(const Coloring &f, std::span<const Element> h) {
  detail::check_subset(f, h);
  std::vector<Color> colors;
  for_each_combination(h, f.arity(), [&](std::span<const Element> t) { colors.push_back(f(t)); });
  return Palette(std::move(colors));
}

inline bool is_free(const Coloring &f, std::span<const Element> h) {
  detail::check_subset(f, h);
  bool ok = true;
  for_each_combination(h, f.arity(), [&](std::span<const Element> t) {
    if (!ok)
      return;
    const Color v = f(t);
    if (v > std::numeric_limits<Element>::max())
      return;
    const auto x = static_cast<Element>(v);
    if (std::binary_search(h.begin(), h.end(), x) &&
        !std::binary_search(t.begin(), t.end(), x))
      ok = false;
  });
  return ok;
}

inline bool is_rainbow(const Coloring &f, std::span<const Element> h) {
  detail::check_subset(f, h);
  std::vector<Color> colors;
  for_each_combination(h, f.arity(), [&](std::span<const Element> t) { colors.push_back(f(t)); });
  std::sort(colors.begin(), colors.end());
  return std::adjacent_find(colors.begin(), colors.end()) == colors.end();
}

inline bool check_property(const Coloring &f, std::span<const Element> h,
                           const PropertySpec &spec) {
  struct {
    const Coloring &f;
    std::span<const Element> h;
    bool operator()(const Homogeneous &) const { return palette(f, h).size() <= 1; }
    bool operator()(const Achromatic &a) const { return palette(f, h).size() <= a.d; }
    bool operator()(const Free &) const { return is_free(f, h); }
    bool operator()(const Thin &t) const { return palette(f, h) != t.universe; }
    bool operator()(const Rainbow &) const { return is_rainbow(f, h); }
  } v{f, h};
  return std::visit(v, spec);
}

/// Every color has at most b preimage tuples.
inline bool is_b_bounded(const Coloring &f, std::size_t b) {
  std::unordered_map<Color, std::size_t> mult;
  for (Color c : f.values())
    if (++mult[c] > b)
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// trap intervals

struct TrapInterval {
  Color lo;
  std::optional<Color> hi; // nullopt: unbounded above
  bool lo_open = false;

  bool contains(Color v) const {
    if (lo_open ? v <= lo : v < lo)
      return false;
    return !hi || v <= *hi;
  }
  friend bool operator==(const TrapInterval &, const TrapInterval &) = default;
};

/// I^σ_0 = [0, σ(0)], I^σ_k = [σ(k-1), σ(k)], I^σ_r = (σ(r-1), ∞).
inline std::vector<TrapInterval> trap_intervals(std::span<const Element> sigma) {
  if (sigma.empty())
    throw std::invalid_argument("trap intervals need a nonempty tuple");
  const std::size_t r = sigma.size();
  std::vector<TrapInterval> out;
  out.reserve(r + 1);
  out.push_back({0, sigma[0], false});
  for (std::size_t k = 1; k < r; ++k)
    out.push_back({sigma[k - 1], sigma[k], false});
  out.push_back({sigma[r - 1], std::nullopt, true});
  return out;
}

/// Least k with v ∈ I^σ_k; shared endpoints go to the lower index.
inline std::size_t trap_index(std::span<const Element> sigma, Color v) {
  const std::size_t r = sigma.size();
  for (std::size_t k = 0; k < r; ++k)
    if (v <= sigma[k])
      return k;
  return r;
}

inline std::size_t trap_index(const Coloring &f, const Tuple &sigma) {
  return trap_index(sigma, f.at(sigma));
}

inline bool in_trap(std::span<const Element> sigma, std::size_t k, Color v) {
  const std::size_t r = sigma.size();
  if (k == r)
    return v > sigma[r - 1];
  const Color lo = k == 0 ? 0 : sigma[k - 1];
  return lo <= v && v <= sigma[k];
}

/// f(σ) ∈ I^σ_k for every σ (membership, so endpoints count for both sides).
inline bool is_k_trapped(const Coloring &f, std::size_t k) {
  if (k > f.arity())
    return false;
  bool ok = true;
  for_each_tuple_colex(f.domain(), f.arity(), [&](std::span<const Element> t, std::uint64_t rank) {
    if (ok && !in_trap(t, k, f.at_rank(rank)))
      ok = false;
  });
  return ok;
}

// ---------------------------------------------------------------------------
// incremental sets

/// A strictly increasing set grown one element at a time, tracking the
/// multiset of colors over its r-subsets. Used by the greedy builders, the
/// tree measures and the exact search.
class GrowingSet {
public:
  explicit GrowingSet(const Coloring &f) : f_(&f) {}

  std::span<const Element> elements() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }
  std::size_t distinct_colors() const noexcept { return counts_.size(); }
  bool has_color(Color c) const { return counts_.count(c) != 0; }
  const std::unordered_map<Color, std::size_t> &color_counts() const noexcept { return counts_; }

  /// Colors of the r-subsets that adjoining x would create.
  const std::vector<Color> &probe(Element x) {
    scratch_.clear();
    const std::size_t r = f_->arity();
    const std::uint64_t top = binom(x, r);
    for_each_combination(elems_, r - 1, [&](std::span<const Element> rho) {
      scratch_.push_back(f_->at_rank(colex_rank(rho) + top));
    });
    return scratch_;
  }

  /// Whether elements ∪ {x} stays free, given that elements is free.
  bool probe_free(Element x) {
    if (has_color(x))
      return false;
    const std::size_t r = f_->arity();
    const std::uint64_t top = binom(x, r);
    bool ok = true;
    for_each_combination(elems_, r - 1, [&](std::span<const Element> rho) {
      if (!ok)
        return;
      const Color v = f_->at_rank(colex_rank(rho) + top);
      if (v >= x)
        return;
      const auto e = static_cast<Element>(v);
      if (std::binary_search(elems_.begin(), elems_.end(), e) &&
          !std::binary_search(rho.begin(), rho.end(), e))
        ok = false;
    });
    return ok;
  }

  void push(Element x) {
    if (!elems_.empty() && x <= elems_.back())
      throw std::invalid_argument("GrowingSet::push requires increasing elements");
    probe(x);
    for (Color c : scratch_)
      ++counts_[c];
    added_.push_back(scratch_);
    elems_.push_back(x);
  }

  void pop() {
    for (Color c : added_.back()) {
      auto it = counts_.find(c);
      if (--it->second == 0)
        counts_.erase(it);
    }
    added_.pop_back();
    elems_.pop_back();
  }

private:
  const Coloring *f_;
  std::vector<Element> elems_;
  std::unordered_map<Color, std::size_t> counts_;
  std::vector<std::vector<Color>> added_;
  std::vector<Color> scratch_;
};

} // namespace ramsey
