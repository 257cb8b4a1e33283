#pragma once

// Finite measured trees, interval ladders, window certification and the
// counting/measure bounds for free extensions along a tree.

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <vector>

#include "ramsey/core.hpp"

namespace ramsey {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_binom(std::uint64_t n, std::uint64_t k) {
  if (k > n)
    return 0;
  k = std::min(k, n - k);
  BigInt acc = 1;
  for (std::uint64_t i = 0; i < k; ++i)
    acc = acc * (n - i) / (i + 1);
  return acc;
}

inline BigInt pow2(std::size_t e) { return BigInt(1) << e; }

/// Least c with 2^c >= x (x >= 1).
inline unsigned ceil_log2(const BigInt &x) {
  unsigned c = 0;
  while (pow2(c) < x)
    ++c;
  return c;
}

// ---------------------------------------------------------------------------
// MeasuredTree

/// A finite prefix-closed set of increasing tuples; m(∅) = 1 and each node
/// splits its measure equally among its children.
class MeasuredTree {
public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Node {
    Element label = 0;
    std::size_t parent = npos;
    std::size_t depth = 0;
    std::vector<std::size_t> children;
  };

  /// Builds from an explicit node list; the root ∅ is implied.
  static MeasuredTree from_nodes(std::vector<Tuple> nodes) {
    MeasuredTree t;
    std::sort(nodes.begin(), nodes.end(),
              [](const Tuple &a, const Tuple &b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    for (const auto &n : nodes) {
      if (n.empty())
        continue;
      std::vector<Element> parent(n.begin(), n.end() - 1);
      auto it = t.index_.find(parent);
      if (it == t.index_.end())
        throw std::invalid_argument("tree is not prefix-closed: missing parent of " + n.str());
      t.add_child(it->second, n.back());
    }
    return t;
  }

  /// ⋃_{l <= depth} ∏_{i < l} levels[i]: every node at depth i has the
  /// elements of levels[i] as children.
  static MeasuredTree product(const std::vector<std::vector<Element>> &levels) {
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (levels[i].empty())
        throw std::invalid_argument("product tree levels must be nonempty");
      if (!strictly_increasing(levels[i]))
        throw std::invalid_argument("product tree level must be strictly increasing");
      if (i && levels[i - 1].back() >= levels[i].front())
        throw std::invalid_argument("product tree levels must be consecutive");
    }
    MeasuredTree t;
    std::vector<std::size_t> frontier{0};
    for (const auto &level : levels) {
      std::vector<std::size_t> next;
      next.reserve(frontier.size() * level.size());
      for (std::size_t p : frontier)
        for (Element x : level)
          next.push_back(t.add_child(p, x));
      frontier = std::move(next);
    }
    return t;
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  const Node &node(std::size_t i) const { return nodes_[i]; }
  static constexpr std::size_t root() noexcept { return 0; }
  bool is_leaf(std::size_t i) const { return nodes_[i].children.empty(); }

  std::optional<std::size_t> find(const Tuple &t) const {
    auto it = index_.find(t.elements());
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }
  bool contains(const Tuple &t) const { return find(t).has_value(); }

  Tuple path(std::size_t i) const {
    std::vector<Element> out(nodes_[i].depth);
    for (std::size_t j = i; j != root(); j = nodes_[j].parent)
      out[nodes_[j].depth - 1] = nodes_[j].label;
    return Tuple(std::move(out));
  }

  std::vector<Element> children(const Tuple &t) const {
    std::vector<Element> out;
    for (std::size_t c : nodes_[require(t)].children)
      out.push_back(nodes_[c].label);
    return out;
  }

  std::vector<Tuple> leaves() const {
    std::vector<Tuple> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (is_leaf(i))
        out.push_back(path(i));
    return out;
  }

  std::size_t height() const {
    std::size_t h = 0;
    for (const auto &n : nodes_)
      h = std::max(h, n.depth);
    return h;
  }

  Rational measure_of(std::size_t i) const {
    Rational m = 1;
    for (std::size_t j = i; j != root(); j = nodes_[j].parent)
      m /= nodes_[nodes_[j].parent].children.size();
    return m;
  }

  Rational node_measure(const Tuple &t) const { return measure_of(require(t)); }

  /// m_T S for a prefix-free S ⊆ T.
  Rational set_measure(std::span<const Tuple> s) const {
    std::vector<std::size_t> ids;
    for (const auto &t : s)
      ids.push_back(require(t));
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
      throw std::invalid_argument("set_measure: duplicate node");
    for (std::size_t i : ids)
      for (std::size_t j = nodes_[i].parent; j != npos; j = nodes_[j].parent)
        if (std::binary_search(ids.begin(), ids.end(), j))
          throw std::invalid_argument("set_measure: set is not prefix-free");
    Rational total = 0;
    for (std::size_t i : ids)
      total += measure_of(i);
    return total;
  }

private:
  MeasuredTree() {
    nodes_.push_back(Node{});
    index_.emplace(std::vector<Element>{}, 0);
  }

  std::size_t require(const Tuple &t) const {
    auto id = find(t);
    if (!id)
      throw std::invalid_argument("node " + t.str() + " is not in the tree");
    return *id;
  }

  std::size_t add_child(std::size_t parent, Element x) {
    std::vector<Element> key = path(parent).elements();
    key.push_back(x);
    const std::size_t id = nodes_.size();
    nodes_.push_back(Node{x, parent, nodes_[parent].depth + 1, {}});
    nodes_[parent].children.push_back(id);
    index_.emplace(std::move(key), id);
    return id;
  }

  std::vector<Node> nodes_;
  std::map<std::vector<Element>, std::size_t> index_;
};

/// Every non-leaf τ has at least 2^{|τ|+c+2}·binom(n+|τ|, k) children.
inline bool is_fast_growing(const MeasuredTree &t, std::size_t order, std::size_t k, std::size_t c) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto &node = t.node(i);
    if (node.children.empty())
      continue;
    const BigInt need = pow2(node.depth + c + 2) * big_binom(order + node.depth, k);
    if (BigInt(node.children.size()) < need)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// interval ladders

struct LadderInterval {
  std::uint64_t lo;
  std::uint64_t hi;
  std::uint64_t width() const noexcept { return hi - lo + 1; }
  friend bool operator==(const LadderInterval &, const LadderInterval &) = default;
};

/// Consecutive intervals J_0, J_1, ... whose widths are the least powers of
/// two meeting a per-level threshold.
struct IntervalLadder {
  std::vector<LadderInterval> intervals;
  std::vector<unsigned> exponents;  // width = 2^exponent
  std::vector<BigInt> thresholds;   // lower bound the width had to meet
  std::vector<bool> degenerate;     // threshold was 0, width floored at 1

  std::size_t depth() const noexcept { return intervals.size(); }
  bool any_degenerate() const {
    return std::find(degenerate.begin(), degenerate.end(), true) != degenerate.end();
  }

  std::vector<std::vector<Element>> levels() const {
    std::vector<std::vector<Element>> out;
    for (const auto &j : intervals) {
      if (j.hi > std::numeric_limits<Element>::max())
        throw std::overflow_error("ladder interval exceeds the element range");
      std::vector<Element> level;
      for (std::uint64_t x = j.lo; x <= j.hi; ++x)
        level.push_back(static_cast<Element>(x));
      out.push_back(std::move(level));
    }
    return out;
  }
};

namespace detail {
inline void push_rung(IntervalLadder &l, const BigInt &threshold) {
  const std::uint64_t lo = l.intervals.empty() ? 0 : l.intervals.back().hi + 1;
  const bool degenerate = threshold == 0;
  const unsigned c = degenerate ? 0 : ceil_log2(threshold);
  if (c >= 63)
    throw std::overflow_error("ladder width exceeds 64 bits");
  const std::uint64_t width = std::uint64_t{1} << c;
  if (lo > std::numeric_limits<std::uint64_t>::max() - width)
    throw std::overflow_error("ladder endpoint exceeds 64 bits");
  l.intervals.push_back({lo, lo + width - 1});
  l.exponents.push_back(c);
  l.thresholds.push_back(threshold);
  l.degenerate.push_back(degenerate);
}
} // namespace detail

/// J_k = [k, k] for k < r; afterwards J_{k+1} has the least width 2^c with
/// 2^c >= 2^{k+3}·binom(k+1, r).
inline IntervalLadder interval_ladder_A(unsigned r, std::size_t depth) {
  if (r < 1)
    throw std::invalid_argument("ladder arity must be at least 1");
  if (depth < r)
    throw std::invalid_argument("ladder depth must be at least r");
  IntervalLadder l;
  for (std::size_t k = 0; k < depth; ++k) {
    if (k < r) {
      l.intervals.push_back({k, k});
      l.exponents.push_back(0);
      l.thresholds.push_back(1);
      l.degenerate.push_back(false);
    } else {
      detail::push_rung(l, pow2(k + 2) * big_binom(k, r));
    }
  }
  return l;
}

/// Widths 2^{n_l} with 2^{n_0} >= 2^{c+2}·binom(s, k) and
/// 2^{n_l} >= 2^{l+c+2}·binom(s+l, k), starting at 0. A zero threshold is
/// floored at width 1 and flagged.
inline IntervalLadder interval_ladder_B(std::size_t stem_len, unsigned k, unsigned c, std::size_t depth) {
  IntervalLadder l;
  for (std::size_t lvl = 0; lvl < depth; ++lvl)
    detail::push_rung(l, pow2(lvl + c + 2) * big_binom(stem_len + lvl, k));
  return l;
}

inline MeasuredTree ladder_tree(const IntervalLadder &l) { return MeasuredTree::product(l.levels()); }

// ---------------------------------------------------------------------------
// window certification

struct WindowEntry {
  Tuple rho;
  std::optional<Element> bound; // nullopt: no certificate within the window
  std::size_t completions = 0;
  std::size_t violations = 0;
};

/// For each ρ ⊆ E with k < |ρ| < r, the least b ∈ {0} ∪ E such that every
/// completion τ ⊆ E ∩ (b, ∞) above ρ has f(ρτ) ∉ E − ρ. A bound that leaves
/// no completion at all in the window is reported as a failure; ρ without
/// any completion inside E are skipped.
inline std::vector<WindowEntry> window_E_check(const Tuple &e, const Coloring &f, std::size_t k) {
  const std::size_t r = f.arity();
  if (k >= r)
    throw std::invalid_argument("window check requires k < r");
  detail::check_subset(f, e);
  std::vector<WindowEntry> out;
  const auto &es = e.elements();
  for (std::size_t len = k + 1; len < r; ++len) {
    for_each_combination(es, len, [&](std::span<const Element> rho) {
      WindowEntry entry{Tuple(std::vector<Element>(rho.begin(), rho.end())), std::nullopt};
      auto above = std::upper_bound(es.begin(), es.end(), rho.back());
      std::span<const Element> tail(es.data() + (above - es.begin()),
                                    static_cast<std::size_t>(es.end() - above));
      if (tail.size() < r - len)
        return; // no completion inside E at all
      std::optional<Element> worst; // max over bad τ of min τ
      std::vector<Element> mins;
      std::vector<Element> full(r);
      std::copy(rho.begin(), rho.end(), full.begin());
      for_each_combination(tail, r - len, [&](std::span<const Element> tau) {
        std::copy(tau.begin(), tau.end(), full.begin() + static_cast<std::ptrdiff_t>(len));
        ++entry.completions;
        mins.push_back(tau[0]);
        const Color v = f(full);
        const bool in_e = v <= std::numeric_limits<Element>::max() &&
                          std::binary_search(es.begin(), es.end(), static_cast<Element>(v));
        const bool in_rho = in_e && std::binary_search(rho.begin(), rho.end(), static_cast<Element>(v));
        if (in_e && !in_rho) {
          ++entry.violations;
          worst = worst ? std::max(*worst, tau[0]) : tau[0];
        }
      });
      if (!worst) {
        entry.bound = 0;
      } else if (std::any_of(mins.begin(), mins.end(), [&](Element m) { return m > *worst; })) {
        entry.bound = *worst;
      }
      out.push_back(std::move(entry));
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// counting and measure bounds

struct BadChildrenReport {
  std::vector<Element> bad;
  BigInt bound;                  // binom(|στ|, k)
  bool tree_free = true;         // στ⟨x⟩ is f-free for every child x
  bool bound_applies = false;    // r = k+1 and tree_free
  bool within_bound = true;      // |bad| <= bound (meaningful when it applies)
  std::size_t e_violations = 0;  // window violations when r > k+1
};

/// Children x of τ with στ⟨x⟩ξ not f-free, for a k-trapped f with στξ free
/// and |ξ| = r − k.
inline BadChildrenReport bad_children(const MeasuredTree &t, const Coloring &f, std::size_t k,
                                      const Tuple &sigma, const Tuple &tau, const Tuple &xi) {
  const std::size_t r = f.arity();
  if (k >= r)
    throw std::invalid_argument("bad_children requires k < r");
  if (xi.size() != r - k)
    throw std::invalid_argument("completion ξ must have r − k elements");
  if (!t.contains(tau))
    throw std::invalid_argument("τ is not a node of the tree");
  const Tuple st = sigma.concat(tau);
  const auto kids = t.children(tau);
  if (!kids.empty() && !xi.empty() && kids.back() >= xi.front())
    throw std::invalid_argument("children must lie below min ξ");
  const Tuple stx = st.concat(xi);
  detail::check_subset(f, stx);
  if (!kids.empty() && kids.back() >= f.domain())
    throw std::out_of_range("tree labels exceed the coloring domain");
  if (!is_k_trapped(f, k))
    throw std::invalid_argument("coloring is not " + std::to_string(k) + "-trapped");
  if (!is_free(f, stx))
    throw std::invalid_argument("στξ = " + stx.str() + " is not f-free");

  BadChildrenReport rep;
  rep.bound = big_binom(st.size(), k);
  std::vector<Element> window(st.begin(), st.end());
  for (Element x : kids) {
    std::vector<Element> with_x(st.begin(), st.end());
    with_x.push_back(x);
    if (!is_free(f, with_x))
      rep.tree_free = false;
    window.push_back(x);
    with_x.insert(with_x.end(), xi.begin(), xi.end());
    if (!is_free(f, with_x))
      rep.bad.push_back(x);
  }
  window.insert(window.end(), xi.begin(), xi.end());
  rep.bound_applies = r == k + 1 && rep.tree_free;
  rep.within_bound = BigInt(rep.bad.size()) <= rep.bound;
  if (r > k + 1)
    for (const auto &entry : window_E_check(Tuple(window), f, k))
      rep.e_violations += entry.violations;
  return rep;
}

/// m_T{τ ∈ [T] : στ is f-free}.
inline Rational free_leaf_measure(const MeasuredTree &t, const Coloring &f, const Tuple &sigma) {
  detail::check_subset(f, sigma);
  GrowingSet set(f);
  for (Element x : sigma) {
    if (!set.probe_free(x))
      return 0;
    set.push(x);
  }
  // children visited depth-first; measures accumulate as products of 1/deg
  Rational total = 0;
  struct Frame {
    std::size_t node;
    std::size_t next_child;
  };
  std::vector<Frame> stack{{MeasuredTree::root(), 0}};
  std::vector<Rational> mass{Rational(1)};
  if (t.is_leaf(MeasuredTree::root()))
    return 1;
  while (!stack.empty()) {
    Frame &top = stack.back();
    const auto &node = t.node(top.node);
    if (top.next_child == node.children.size()) {
      stack.pop_back();
      mass.pop_back();
      if (!stack.empty())
        set.pop();
      continue;
    }
    const std::size_t child = node.children[top.next_child++];
    const Element x = t.node(child).label;
    if ((set.size() && x <= set.elements().back()) || x >= f.domain())
      throw std::invalid_argument("tree labels must extend the stem inside the domain");
    if (!set.probe_free(x))
      continue;
    const Rational m = mass.back() / node.children.size();
    if (t.is_leaf(child)) {
      total += m;
      continue;
    }
    set.push(x);
    stack.push_back({child, 0});
    mass.push_back(m);
  }
  return total;
}

} // namespace ramsey
