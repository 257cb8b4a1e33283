#pragma once

// Exact maximum-witness search, its decision form, and finite partition
// numbers by exhaustive enumeration of colorings.

#include <atomic>
#include <thread>

#include "ramsey/core.hpp"
#include "ramsey/treemeasure.hpp"

namespace ramsey {

struct SearchBudget {
  /// Cap on branch nodes explored below each first element. Applied per
  /// root branch so that the outcome does not depend on scheduling.
  std::optional<std::uint64_t> node_limit;
};

struct WitnessResult {
  std::size_t size = 0;
  Tuple witness;       // lexicographically least among maximum-size witnesses
  Palette palette;
  bool certified = true; // false: search hit its budget, size is a lower bound
  std::uint64_t nodes = 0;
};

namespace detail {

/// Every property reduces to one of three downward-closed rules once the
/// thin pre-check has run.
struct SearchRule {
  enum Kind { palette_cap, free, rainbow } kind;
  std::size_t cap = 0;
};

inline Mask full_mask(unsigned n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// Same-size masks: a precedes b lexicographically iff a owns the least
/// element of the symmetric difference.
inline bool lex_less_same_size(Mask a, Mask b) {
  if (a == b)
    return false;
  const Mask low = (a ^ b) & (0 - (a ^ b));
  return (a & low) != 0;
}

class Explorer {
public:
  Explorer(const Coloring &f, SearchRule rule, std::optional<std::uint64_t> limit)
      : f_(f), rule_(rule), set_(f), limit_(limit) {}

  bool admits(Element x) {
    switch (rule_.kind) {
    case SearchRule::free:
      return set_.probe_free(x);
    case SearchRule::rainbow: {
      const auto &colors = set_.probe(x);
      buf_.assign(colors.begin(), colors.end());
      std::sort(buf_.begin(), buf_.end());
      if (std::adjacent_find(buf_.begin(), buf_.end()) != buf_.end())
        return false;
      return std::none_of(buf_.begin(), buf_.end(), [&](Color c) { return set_.has_color(c); });
    }
    case SearchRule::palette_cap: {
      const auto &colors = set_.probe(x);
      buf_.clear();
      for (Color c : colors)
        if (!set_.has_color(c))
          buf_.push_back(c);
      std::sort(buf_.begin(), buf_.end());
      const auto fresh = static_cast<std::size_t>(std::unique(buf_.begin(), buf_.end()) - buf_.begin());
      return set_.distinct_colors() + fresh <= rule_.cap;
    }
    }
    return false;
  }

  Mask filter(Mask cand) {
    Mask out = 0;
    for (Mask m = cand; m; m &= m - 1) {
      const auto x = static_cast<Element>(__builtin_ctzll(m));
      if (admits(x))
        out |= Mask{1} << x;
    }
    return out;
  }

  void push(Element x) { set_.push(x); }
  void pop() { set_.pop(); }

  /// Explores all admissible supersets of the current set drawn from cand.
  void run(Mask current, Mask cand, std::size_t floor, std::optional<std::size_t> target) {
    floor_ = floor;
    target_ = target;
    dfs(current, cand);
  }

  bool found() const noexcept { return found_; }
  std::size_t best_size() const noexcept { return best_size_; }
  Mask best() const noexcept { return best_; }
  bool aborted() const noexcept { return aborted_; }
  bool reached_target() const noexcept { return done_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

private:
  void dfs(Mask current, Mask cand) {
    ++nodes_;
    if (limit_ && nodes_ > *limit_) {
      aborted_ = true;
      return;
    }
    const std::size_t size = set_.size();
    if (!found_ || size > best_size_) {
      found_ = true;
      best_size_ = size;
      best_ = current;
      if (target_ && size >= *target_) {
        done_ = true;
        return;
      }
    }
    while (cand) {
      const std::size_t ub = size + static_cast<std::size_t>(__builtin_popcountll(cand));
      if (ub < floor_ || ub <= best_size_)
        return;
      const auto x = static_cast<Element>(__builtin_ctzll(cand));
      cand &= cand - 1;
      set_.push(x);
      const Mask next = filter(cand);
      dfs(current | (Mask{1} << x), next);
      set_.pop();
      if (aborted_ || done_)
        return;
    }
  }

  const Coloring &f_;
  SearchRule rule_;
  GrowingSet set_;
  std::optional<std::uint64_t> limit_;
  std::vector<Color> buf_;
  std::size_t floor_ = 0;
  std::optional<std::size_t> target_;
  bool found_ = false;
  std::size_t best_size_ = 0;
  Mask best_ = 0;
  bool aborted_ = false;
  bool done_ = false;
  std::uint64_t nodes_ = 0;
};

/// Thin(U) is not downward closed when the palette leaves U. If the whole
/// domain is thin it is the answer; otherwise f([n]^r) = U and thinness of
/// a subset means missing a color of U, i.e. palette size <= |U| - 1.
inline std::optional<SearchRule> plan(const Coloring &f, const PropertySpec &spec) {
  if (const auto *a = std::get_if<Achromatic>(&spec))
    return SearchRule{SearchRule::palette_cap, a->d};
  if (std::holds_alternative<Homogeneous>(spec))
    return SearchRule{SearchRule::palette_cap, 1};
  if (std::holds_alternative<Free>(spec))
    return SearchRule{SearchRule::free, 0};
  if (std::holds_alternative<Rainbow>(spec))
    return SearchRule{SearchRule::rainbow, 0};
  const auto &thin = std::get<Thin>(spec);
  const Tuple all = range_tuple(0, f.domain());
  if (check_property(f, all, spec))
    return std::nullopt;
  return SearchRule{SearchRule::palette_cap, thin.universe.size() - 1};
}

inline Mask greedy(const Coloring &f, SearchRule rule) {
  Explorer e(f, rule, std::nullopt);
  Mask chosen = 0;
  for (Element x = 0; x < f.domain(); ++x)
    if (e.admits(x)) {
      e.push(x);
      chosen |= Mask{1} << x;
    }
  return chosen;
}

inline WitnessResult make_result(const Coloring &f, Mask m, bool certified, std::uint64_t nodes) {
  WitnessResult r;
  r.witness = Tuple::from_mask(m);
  r.size = r.witness.size();
  r.palette = palette(f, r.witness);
  r.certified = certified;
  r.nodes = nodes;
  return r;
}

inline void require_mask_domain(const Coloring &f) {
  if (f.domain() > 64)
    throw std::invalid_argument("exact search supports domains of at most 64 elements");
}

} // namespace detail

/// Exact maximum witness over all H ⊆ {0..n-1}, ties broken by the
/// lexicographically least witness. Root branches may run on `threads`
/// workers; the merge is order-independent.
inline WitnessResult max_witness(const Coloring &f, const PropertySpec &spec, SearchBudget budget = {},
                                 unsigned threads = 1) {
  detail::require_mask_domain(f);
  const unsigned n = f.domain();
  const auto rule = detail::plan(f, spec);
  if (!rule)
    return detail::make_result(f, detail::full_mask(n), true, 1);

  const Mask seed = detail::greedy(f, *rule);
  const auto floor = static_cast<std::size_t>(__builtin_popcountll(seed));

  struct Branch {
    bool found = false;
    std::size_t size = 0;
    Mask best = 0;
    bool aborted = false;
    std::uint64_t nodes = 0;
  };
  std::vector<Branch> branches(n);

  auto explore = [&](Element v) {
    detail::Explorer e(f, *rule, budget.node_limit);
    if (!e.admits(v))
      return;
    e.push(v);
    const Mask above = detail::full_mask(n) & ~detail::full_mask(v + 1);
    const Mask cand = e.filter(above);
    if (1 + static_cast<std::size_t>(__builtin_popcountll(cand)) < floor)
      return;
    e.run(Mask{1} << v, cand, floor, std::nullopt);
    branches[v] = {e.found(), e.best_size(), e.best(), e.aborted(), e.nodes()};
  };

  const unsigned workers = std::max(1u, std::min(threads, n));
  if (workers == 1) {
    for (Element v = 0; v < n; ++v)
      explore(v);
  } else {
    std::atomic<Element> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (Element v = next++; v < n; v = next++)
          explore(v);
      });
    for (auto &t : pool)
      t.join();
  }

  Mask best = seed;
  std::size_t best_size = floor;
  bool certified = true;
  std::uint64_t nodes = 1;
  for (const auto &b : branches) {
    nodes += b.nodes;
    certified = certified && !b.aborted;
    if (!b.found)
      continue;
    if (b.size > best_size || (b.size == best_size && detail::lex_less_same_size(b.best, best))) {
      best = b.best;
      best_size = b.size;
    }
  }
  return detail::make_result(f, best, certified, nodes);
}

/// Whether some H with |H| >= m has the property; agrees with max_witness.
inline bool has_witness(const Coloring &f, const PropertySpec &spec, std::size_t m) {
  if (m == 0)
    return true;
  if (m > f.domain())
    return false;
  if (m < f.arity())
    return true;
  detail::require_mask_domain(f);
  const auto rule = detail::plan(f, spec);
  if (!rule)
    return true;
  const Mask seed = detail::greedy(f, *rule);
  if (static_cast<std::size_t>(__builtin_popcountll(seed)) >= m)
    return true;
  detail::Explorer e(f, *rule, std::nullopt);
  e.run(0, e.filter(detail::full_mask(f.domain())), m, m);
  return e.reached_target();
}

// ---------------------------------------------------------------------------
// partition numbers

struct PartitionResult {
  std::optional<unsigned> number;       // least n; nullopt if beyond n_max
  std::optional<Coloring> counterexample; // coloring of [number-1]^r (or [n_max]^r) without a witness
  std::uint64_t colorings_checked = 0;
};

/// Least n <= n_max such that every f : [n]^r -> c admits a witness of size
/// m. Colorings are enumerated in lexicographic order of their value
/// vectors; the first failure at each n is kept.
inline PartitionResult partition_number(unsigned r, Color c, const PropertySpec &spec, std::size_t m,
                                        unsigned n_max, std::uint64_t max_colorings = std::uint64_t{1} << 26) {
  if (c < 1)
    throw std::invalid_argument("partition numbers need a finite color count c >= 1");
  if (r < 1)
    throw std::invalid_argument("arity must be at least 1");
  if (!std::holds_alternative<Homogeneous>(spec) && !std::holds_alternative<Achromatic>(spec))
    throw std::invalid_argument("partition numbers are defined for homogeneous or achromatic specs");
  if (n_max > 64)
    throw infeasible_error("domains above 64 elements are not enumerable", "n_max = " + std::to_string(n_max));

  PartitionResult out;
  std::optional<Coloring> last_failure;
  for (unsigned n = 1; n <= n_max; ++n) {
    const std::uint64_t len = binom(n, r);
    if (n < m) {
      last_failure = Coloring(r, n, std::vector<Color>(len, 0), c);
      continue;
    }
    const BigInt count = boost::multiprecision::pow(BigInt(c), static_cast<unsigned>(len));
    if (count > max_colorings)
      throw infeasible_error("enumeration of " + count.str() + " colorings of [" + std::to_string(n) + "]^" +
                                 std::to_string(r) + " exceeds the limit " + std::to_string(max_colorings),
                             std::to_string(c) + "^" + std::to_string(len) + " = " + count.str());

    std::vector<Color> values(len, 0);
    std::optional<Coloring> failure;
    while (true) {
      Coloring f(r, n, values, c);
      ++out.colorings_checked;
      if (!has_witness(f, spec, m)) {
        failure = std::move(f);
        break;
      }
      std::size_t i = len;
      while (i > 0 && values[i - 1] == c - 1)
        values[--i] = 0;
      if (i == 0)
        break;
      ++values[i - 1];
    }
    if (!failure) {
      out.number = n;
      out.counterexample = std::move(last_failure);
      return out;
    }
    last_failure = std::move(failure);
  }
  out.counterexample = std::move(last_failure);
  return out;
}

} // namespace ramsey
