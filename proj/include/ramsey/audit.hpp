#pragma once

// Seeded invariant suites behind `ramsey audit`.

#include "ramsey/bounds.hpp"
#include "ramsey/io.hpp"
#include "ramsey/random.hpp"
#include "ramsey/treemeasure.hpp"

namespace ramsey {

struct AuditReport {
  std::string kind;
  json parameters = json::object();
  std::size_t trials = 0;
  std::size_t passed = 0;
  json summary = json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t failed() const { return trials - passed; }
  bool ok() const { return passed == trials; }

  json result() const {
    json j = summary;
    j["trials"] = trials;
    j["passed"] = passed;
    j["failed"] = failed();
    j["ok"] = ok();
    json table = json::array();
    for (const auto &r : rows) {
      json row = json::object();
      for (std::size_t i = 0; i < header.size() && i < r.size(); ++i)
        row[header[i]] = r[i];
      table.push_back(row);
    }
    j["table"] = table;
    return j;
  }
};

inline std::string rational_str(const Rational &q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

// ---------------------------------------------------------------------------
// counting bound at r = k+1

/// A (k = r-1)-trapped coloring with stem σ, a tree T whose nodes keep σ
/// free, an internal node τ and a one-element completion ξ with στξ free.
struct CountingInstance {
  Coloring f;
  MeasuredTree tree;
  Tuple sigma;
  Tuple tau;
  Tuple xi;
};

namespace detail {

inline std::optional<CountingInstance> try_counting_instance(Rng &rng, unsigned r) {
  const unsigned k = r - 1;
  const Element stem_hi = 6, lvl1_hi = 12, lvl2_hi = 18, n = 24;
  std::vector<Color> values =
      random_coloring(KTrappedKind{k}, r, n, rng.next()).values();
  auto val = [&](std::span<const Element> t) -> Color & { return values[colex_rank(t)]; };

  const std::size_t stem_size = rng.between(std::max(1u, k), std::max(1u, k) + 2);
  Tuple sigma = rng.subset(0, stem_hi, stem_size);

  std::vector<Tuple> nodes;
  const Tuple lvl1 = rng.subset(stem_hi, lvl1_hi, rng.between(2, 6));
  for (Element c : lvl1) {
    nodes.push_back(Tuple{c});
    const Tuple lvl2 = rng.subset(lvl1_hi, lvl2_hi, rng.between(0, 4));
    for (Element d : lvl2)
      nodes.push_back(Tuple{c, d});
  }

  // Half of the instances aim ξ's colors at children to stress the bound.
  const Element xi_elem = static_cast<Element>(rng.between(lvl2_hi, n - 1));
  const Tuple xi{xi_elem};
  const bool adversarial = rng.coin();

  Coloring probe(r, n, values);
  std::vector<Tuple> kept;
  for (const auto &node : nodes) {
    const Tuple path = sigma.concat(node);
    if (is_free(probe, path) &&
        (node.size() == 1 || std::find(kept.begin(), kept.end(), Tuple{node[0]}) != kept.end()))
      kept.push_back(node);
  }
  MeasuredTree candidate = MeasuredTree::from_nodes(kept);
  std::vector<std::size_t> internal;
  for (std::size_t i = 0; i < candidate.size(); ++i)
    if (!candidate.is_leaf(i))
      internal.push_back(i);
  if (internal.empty())
    return std::nullopt;
  const Tuple tau = candidate.path(internal[rng.below(internal.size())]);
  const Tuple st = sigma.concat(tau);

  if (adversarial) {
    const auto kids = candidate.children(tau);
    for_each_combination(st.elements(), k, [&](std::span<const Element> rho) {
      std::vector<Element> full(rho.begin(), rho.end());
      full.push_back(xi_elem);
      val(full) = kids[rng.below(kids.size())];
    });
  }
  Coloring f(r, n, std::move(values));
  if (!is_free(f, st.concat(xi)))
    return std::nullopt;
  // The rewrite only touches tuples ending in ξ, so T still keeps σ free.
  return CountingInstance{std::move(f), std::move(candidate), std::move(sigma), tau, xi};
}

} // namespace detail

inline CountingInstance counting_instance(Rng &rng, unsigned r) {
  for (int attempt = 0; attempt < 10000; ++attempt)
    if (auto inst = detail::try_counting_instance(rng, r))
      return std::move(*inst);
  throw std::runtime_error("could not build a counting instance");
}

inline AuditReport audit_counting(std::uint64_t seed, std::size_t trials, unsigned r = 2) {
  if (r < 2)
    throw std::invalid_argument("counting audit needs r >= 2");
  AuditReport rep;
  rep.kind = "counting";
  rep.parameters = {{"r", r}, {"k", r - 1}, {"trials", trials}};
  rep.header = {"trial", "stem_tau", "children", "bad", "bound", "ok"};
  Rng rng(seed);
  std::size_t max_bad = 0, tight = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto inst = counting_instance(rng, r);
    const auto res = bad_children(inst.tree, inst.f, r - 1, inst.sigma, inst.tau, inst.xi);
    const bool ok = res.bound_applies && res.within_bound;
    rep.trials++;
    rep.passed += ok;
    max_bad = std::max(max_bad, res.bad.size());
    tight += BigInt(res.bad.size()) == res.bound;
    if (!ok || i < 10)
      rep.rows.push_back({std::to_string(i), inst.sigma.concat(inst.tau).str(),
                          std::to_string(inst.tree.children(inst.tau).size()), std::to_string(res.bad.size()),
                          res.bound.str(), ok ? "yes" : "NO"});
  }
  rep.summary = {{"max_bad", max_bad}, {"tight_instances", tight}};
  return rep;
}

// ---------------------------------------------------------------------------
// ladder A free measure

inline AuditReport audit_ladder_a(unsigned r, std::size_t depth, std::uint64_t seed, std::size_t trials,
                                  Color cap = 16) {
  const IntervalLadder ladder = interval_ladder_A(r, depth);
  const MeasuredTree tree = ladder_tree(ladder);
  const auto n = static_cast<unsigned>(ladder.intervals.back().hi + 1);
  AuditReport rep;
  rep.kind = "ladderA";
  rep.parameters = {{"r", r}, {"depth", depth}, {"trials", trials}, {"top_trap_cap", cap}};
  rep.header = {"trial", "free_measure", "approx", "ok"};
  Rng master(seed);
  const Rational half(1, 2);
  std::optional<Rational> lowest;
  for (std::size_t i = 0; i < trials; ++i) {
    const Coloring f = random_coloring(KTrappedKind{r, cap}, r, n, master.next());
    const Rational m = free_leaf_measure(tree, f, Tuple{});
    const bool ok = m > half;
    rep.trials++;
    rep.passed += ok;
    if (!lowest || m < *lowest)
      lowest = m;
    if (!ok || i < 10)
      rep.rows.push_back({std::to_string(i), rational_str(m), std::to_string(static_cast<double>(m)),
                          ok ? "yes" : "NO"});
  }
  json widths = json::array();
  for (const auto &j : ladder.intervals)
    widths.push_back({j.lo, j.hi});
  rep.summary = {{"intervals", widths}, {"leaves", tree.leaves().size()}};
  if (lowest)
    rep.summary["min_free_measure"] = to_json(*lowest);
  return rep;
}

// ---------------------------------------------------------------------------
// ladder B widths

inline AuditReport audit_ladder_b(std::size_t stem_len, unsigned k, unsigned c, std::size_t depth) {
  const IntervalLadder ladder = interval_ladder_B(stem_len, k, c, depth);
  AuditReport rep;
  rep.kind = "ladderB";
  rep.parameters = {{"stem_len", stem_len}, {"k", k}, {"c", c}, {"depth", depth}};
  rep.header = {"level", "interval", "exponent", "threshold", "degenerate", "ok"};
  BigInt leaves = 1;
  for (std::size_t l = 0; l < ladder.depth(); ++l) {
    const auto &j = ladder.intervals[l];
    const BigInt width = j.width();
    const BigInt &need = ladder.thresholds[l];
    const bool meets = ladder.degenerate[l] ? width == 1 : width >= need;
    const bool minimal = width == 1 || width / 2 < need;
    const bool consecutive = l == 0 ? j.lo == 0 : j.lo == ladder.intervals[l - 1].hi + 1;
    const bool ok = meets && minimal && consecutive;
    rep.trials++;
    rep.passed += ok;
    leaves *= width;
    rep.rows.push_back({std::to_string(l), "[" + std::to_string(j.lo) + "," + std::to_string(j.hi) + "]",
                        std::to_string(ladder.exponents[l]), need.str(), ladder.degenerate[l] ? "yes" : "no",
                        ok ? "yes" : "NO"});
  }
  rep.summary = {{"any_degenerate", ladder.any_degenerate()}, {"leaves", to_json(leaves)}};
  if (leaves <= 200000 && !ladder.any_degenerate()) {
    const bool fast = is_fast_growing(ladder_tree(ladder), stem_len, k, c);
    rep.summary["fast_growing_checked"] = fast;
    rep.trials++;
    rep.passed += fast;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// tree measure sanity

inline MeasuredTree random_tree(Rng &rng, std::size_t max_depth = 4, std::size_t max_branch = 4) {
  std::vector<Tuple> nodes;
  std::vector<Tuple> frontier{Tuple{}};
  Element next_label = 0;
  for (std::size_t d = 0; d < max_depth && !frontier.empty(); ++d) {
    std::vector<Tuple> grown;
    const Element base = next_label;
    for (const auto &node : frontier) {
      const std::size_t kids = d == 0 ? rng.between(1, max_branch) : rng.between(0, max_branch);
      const Tuple labels = rng.subset(base, base + static_cast<Element>(max_branch) + 2, kids);
      for (Element x : labels) {
        Tuple child = node.append(x);
        nodes.push_back(child);
        grown.push_back(std::move(child));
      }
    }
    next_label = base + static_cast<Element>(max_branch) + 2;
    frontier = std::move(grown);
  }
  return MeasuredTree::from_nodes(std::move(nodes));
}

inline AuditReport audit_tree_measure(std::uint64_t seed, std::size_t trials) {
  AuditReport rep;
  rep.kind = "tree-measure";
  rep.parameters = {{"trials", trials}};
  rep.header = {"trial", "nodes", "leaves", "leaf_sum", "split_sum", "ok"};
  Rng rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    const MeasuredTree t = random_tree(rng);
    const auto leaves = t.leaves();
    const Rational total = t.set_measure(leaves);
    std::vector<Tuple> left, right;
    for (const auto &l : leaves)
      (rng.coin() ? left : right).push_back(l);
    const Rational split = t.set_measure(left) + t.set_measure(right);
    const bool ok = total == 1 && split == 1;
    rep.trials++;
    rep.passed += ok;
    if (!ok || i < 10)
      rep.rows.push_back({std::to_string(i), std::to_string(t.size()), std::to_string(leaves.size()),
                          rational_str(total), rational_str(split), ok ? "yes" : "NO"});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// bound series

inline AuditReport audit_schroder(std::size_t max) {
  AuditReport rep;
  rep.kind = "schroder";
  rep.parameters = {{"max", max}};
  rep.header = {"r", "S_r", "2^(2r-2)", "d_(r+1)", "ok"};
  const BoundSeries s = schroder(max);
  const BoundSeries d = d_series(max + 1);
  for (std::size_t r = 0; r <= max; ++r) {
    const bool d_matches = d.at(r + 1) == s.at(r);
    const bool gap = r == 0 || s.at(r) > pow2(2 * r - 2);
    const bool ok = d_matches && gap;
    rep.trials++;
    rep.passed += ok;
    rep.rows.push_back({std::to_string(r), s.at(r).str(), r ? pow2(2 * r - 2).str() : "-", d.at(r + 1).str(),
                        ok ? "yes" : "NO"});
  }
  return rep;
}

inline AuditReport audit_gap(std::size_t max) {
  AuditReport rep;
  rep.kind = "gap";
  rep.parameters = {{"max", max}};
  rep.header = {"r", "S_r", "2^(2r-2)", "2^r-1", "ok"};
  for (const auto &row : compare_gap(max)) {
    rep.trials++;
    rep.passed += row.exceeds;
    rep.rows.push_back({std::to_string(row.r), row.schroder.str(), row.lower.str(), row.known_bound.str(),
                        row.exceeds ? "yes" : "NO"});
  }
  return rep;
}

} // namespace ramsey
