#pragma once

// Large Schröder numbers, the achromatic bound series, and the gap table
// against 2^r - 1.

#include <vector>

#include "ramsey/treemeasure.hpp"

namespace ramsey {

/// values[i] is the term with index offset + i.
struct BoundSeries {
  std::size_t offset = 0;
  std::vector<BigInt> values;

  const BigInt &at(std::size_t index) const {
    if (index < offset || index - offset >= values.size())
      throw std::out_of_range("series index " + std::to_string(index) + " out of range");
    return values[index - offset];
  }
  std::size_t last() const { return offset + values.size() - 1; }
};

/// S_0 = 1, S_n = S_{n-1} + Σ_{k<n} S_k S_{n-k-1}.
inline BoundSeries schroder(std::size_t n_max) {
  BoundSeries s{0, {BigInt(1)}};
  for (std::size_t n = 1; n <= n_max; ++n) {
    BigInt next = s.values[n - 1];
    for (std::size_t k = 0; k < n; ++k)
      next += s.values[k] * s.values[n - k - 1];
    s.values.push_back(std::move(next));
  }
  return s;
}

/// d_1 = 1, d_r = d_{r-1} + Σ_{0<k<r} d_k d_{r-k}.
inline BoundSeries d_series(std::size_t r_max) {
  if (r_max < 1)
    throw std::invalid_argument("d_series needs r_max >= 1");
  BoundSeries d{1, {BigInt(1)}};
  for (std::size_t r = 2; r <= r_max; ++r) {
    BigInt next = d.at(r - 1);
    for (std::size_t k = 1; k < r; ++k)
      next += d.at(k) * d.at(r - k);
    d.values.push_back(std::move(next));
  }
  return d;
}

/// Least c with 2^{c-1} > d.
inline unsigned min_c(const BigInt &d) {
  if (d < 1)
    throw std::invalid_argument("min_c needs d >= 1");
  unsigned c = 1;
  while (pow2(c - 1) <= d)
    ++c;
  return c;
}

struct GapRow {
  std::size_t r;
  BigInt schroder;     // S_r
  BigInt lower;        // 2^{2r-2}
  BigInt known_bound;  // 2^r - 1
  bool exceeds = false; // S_r > 2^{2r-2}
};

inline std::vector<GapRow> compare_gap(std::size_t r_max) {
  if (r_max < 1)
    throw std::invalid_argument("compare_gap needs r_max >= 1");
  const BoundSeries s = schroder(r_max);
  std::vector<GapRow> rows;
  for (std::size_t r = 1; r <= r_max; ++r) {
    GapRow row{r, s.at(r), pow2(2 * r - 2), pow2(r) - 1};
    row.exceeds = row.schroder > row.lower;
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace ramsey
