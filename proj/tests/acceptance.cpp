// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli_runner.hpp"
#include "oracle.hpp"
#include "ramsey/audit.hpp"
#include "ramsey/bounds.hpp"
#include "ramsey/io.hpp"
#include "ramsey/random.hpp"
#include "ramsey/reductions.hpp"
#include "ramsey/search.hpp"

using namespace ramsey;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

using Check = std::function<Outcome()>;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome anchor(unsigned r, Color c, const PropertySpec &spec, std::size_t m, unsigned expected) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = partition_number(r, c, spec, m, expected + 1);
  const double secs = seconds_since(t0);
  Outcome o;
  std::ostringstream d;
  d << "number=" << (res.number ? std::to_string(*res.number) : "none") << " checked=" << res.colorings_checked
    << " time=" << secs << "s";
  o.ok = res.number == expected && secs < 60 && res.counterexample && res.counterexample->domain() == expected - 1;
  if (res.counterexample) {
    const auto [best, w] = oracle::naive_max_witness(*res.counterexample, spec);
    d << " counterexample n=" << res.counterexample->domain() << " max witness " << best;
    o.ok = o.ok && best < m;
  }
  o.detail = d.str();
  return o;
}

Outcome rainbow_soundness() {
  std::size_t violations = 0, free_sets = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Coloring f = random_coloring(BBoundedKind{2, std::nullopt}, 2, 10, seed);
    const Coloring g = rainbow_to_free(f);
    for (Mask m = 0; m < (Mask{1} << 10); ++m) {
      const auto h = oracle::subset_of_mask(m);
      if (!oracle::naive_free(g, h))
        continue;
      ++free_sets;
      violations += !is_rainbow(f, h);
    }
  }
  return {violations == 0, "g-free sets=" + std::to_string(free_sets) + " violations=" + std::to_string(violations)};
}

Outcome trap_soundness() {
  std::size_t freeness = 0, selector = 0, common = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Coloring f = random_coloring(BelowMaxKind{3}, 2, 9, seed);
    const auto parts = trap_decompose(f);
    for_each_tuple_colex(9, 2, [&](std::span<const Element> s, std::uint64_t rank) {
      selector += f.at_rank(rank) != parts[trap_index(s, f.at_rank(rank))].at_rank(rank);
    });
    for (Mask m = 0; m < (Mask{1} << 9); ++m) {
      const auto h = oracle::subset_of_mask(m);
      if (!std::all_of(parts.begin(), parts.end(), [&](const Coloring &p) { return oracle::naive_free(p, h); }))
        continue;
      ++common;
      freeness += !oracle::naive_free(f, h);
    }
  }
  return {freeness == 0 && selector == 0, "common free sets=" + std::to_string(common) +
                                              " freeness violations=" + std::to_string(freeness) +
                                              " selector violations=" + std::to_string(selector)};
}

Outcome truncation_soundness() {
  // Universes U ⊇ {0..3}: those inside the 10 colors are checked one by one;
  // any U with a color outside them is missed by every palette, so thin.
  std::vector<Palette> universes;
  for (unsigned extra = 0; extra < 64; ++extra) {
    std::vector<Color> u{0, 1, 2, 3};
    for (unsigned b = 0; b < 6; ++b)
      if (extra >> b & 1)
        u.push_back(4 + b);
    universes.emplace_back(u);
  }
  std::size_t violations = 0, achromatic = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Coloring f = random_coloring(UniformKind{10}, 2, 10, seed);
    const Coloring g = truncate(f, 3);
    for (Mask m = 0; m < (Mask{1} << 10); ++m) {
      const auto h = oracle::subset_of_mask(m);
      if (!check_property(g, h, Achromatic(3)))
        continue;
      ++achromatic;
      const Palette p = palette(f, h);
      for (const auto &u : universes)
        violations += !check_property(f, h, Thin(u)) || p == u;
    }
  }
  return {violations == 0, "achromatic(3) sets=" + std::to_string(achromatic) +
                               " universes=64 violations=" + std::to_string(violations)};
}

Outcome counting_bound() {
  const auto rep = audit_counting(7, 500, 2);
  return {rep.ok() && rep.trials == 500,
          std::to_string(rep.passed) + "/" + std::to_string(rep.trials) +
              " within binom(|στ|,1), max bad=" + rep.summary["max_bad"].dump() +
              ", tight=" + rep.summary["tight_instances"].dump()};
}

Outcome measure_bound() {
  const auto rep = audit_ladder_a(2, 4, 11, 100);
  return {rep.ok() && rep.trials == 100, std::to_string(rep.passed) + "/100 above 1/2, min free measure " +
                                             rep.summary["min_free_measure"]["exact"].get<std::string>() + " ≈ " +
                                             rep.summary["min_free_measure"]["approx"].dump()};
}

Outcome bound_series() {
  const auto s = schroder(20);
  const std::vector<int> first{1, 2, 6, 22, 90, 394, 1806};
  bool ok = true;
  for (std::size_t i = 0; i < first.size(); ++i)
    ok = ok && s.at(i) == first[i];
  const auto d = d_series(12);
  bool d_ok = true;
  for (std::size_t r = 1; r <= 12; ++r)
    d_ok = d_ok && d.at(r) == s.at(r - 1);
  bool gap = true;
  for (std::size_t r = 1; r <= 20; ++r)
    gap = gap && s.at(r) > pow2(2 * r - 2);
  return {ok && d_ok && gap, std::string("S_0..S_6 ") + (ok ? "match" : "MISMATCH") + ", d_r = S_{r-1} (r<=12) " +
                                 (d_ok ? "holds" : "FAILS") + ", S_r > 2^{2r-2} (r<=20) " + (gap ? "holds" : "FAILS") +
                                 ", S_20=" + s.at(20).str()};
}

Outcome oracle_equivalence() {
  std::size_t mismatches = 0, comparisons = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const unsigned r = static_cast<unsigned>(rng.between(1, 3));
    const unsigned n = static_cast<unsigned>(rng.between(r, 12));
    const Color colors = rng.between(2, 5);
    const Coloring f = random_coloring(UniformKind{colors}, r, n, rng.next());
    const std::vector<PropertySpec> specs{Homogeneous{}, Achromatic(rng.between(1, 3)), Free{},
                                          Thin(Palette::iota(rng.between(1, colors))), Rainbow{}};
    for (const auto &spec : specs) {
      const auto [size, witness] = oracle::naive_max_witness(f, spec);
      const auto got = max_witness(f, spec);
      ++comparisons;
      mismatches += got.size != size || got.witness.elements() != witness;
    }
  }
  return {mismatches == 0, std::to_string(comparisons) + " comparisons, " + std::to_string(mismatches) + " mismatches"};
}

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome cli_determinism() {
  cli::ScratchDir dir;
  save_coloring(dir.file("u.json"), random_coloring(UniformKind{4}, 2, 22, 5));
  save_coloring(dir.file("b.json"), random_coloring(BBoundedKind{2, std::nullopt}, 2, 10, 5));
  const std::vector<std::string> runs{
      "witness " + dir.file("u.json") + " --spec achromatic --d 2",
      "witness " + dir.file("u.json") + " --spec free",
      "witness " + dir.file("u.json") + " --spec thin",
      "witness " + dir.file("u.json") + " --spec rainbow",
      "witness " + dir.file("u.json") + " --spec homogeneous --node-limit 40",
      "number -r 2 -c 2 --spec homogeneous -m 3 --out " + dir.file("cex.json"),
      "reduce " + dir.file("u.json") + " --kind trapdecompose --out " + dir.file("part"),
      "reduce " + dir.file("b.json") + " --kind rainbow2free --out " + dir.file("g.json"),
      "reduce " + dir.file("u.json") + " --kind truncate --d 2 --out " + dir.file("t.json"),
      "audit counting --trials 100 --seed 7",
      "audit ladderA -r 2 --depth 4 --trials 20 --seed 3",
      "audit ladderB --stem-len 2 --k 1 --c 2 --depth 3",
      "audit tree-measure --trials 50 --seed 1",
      "audit schroder --max 20",
      "audit gap --max 20",
      "generate --kind ktrapped --k 1 -r 2 -n 12 --seed 99 --out " + dir.file("k.json"),
  };
  const std::vector<std::string> outputs{dir.file("cex.json"), dir.file("part_f0.json"), dir.file("part_f2.json"),
                                         dir.file("g.json"), dir.file("t.json"), dir.file("k.json")};
  std::size_t differing = 0;
  std::string first_bad;
  std::vector<std::string> reference_files;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::vector<std::string> seen;
    for (const char *threads : {"1", "1", "8", "8"}) {
      const auto res = cli::run(std::string("--threads ") + threads + " " + runs[i]);
      seen.push_back(std::to_string(res.code) + "\n" + res.out);
    }
    if (seen[0].size() < 10 || std::any_of(seen.begin(), seen.end(), [&](const auto &s) { return s != seen[0]; })) {
      ++differing;
      if (first_bad.empty())
        first_bad = runs[i];
    }
  }
  for (const auto &f : outputs)
    reference_files.push_back(slurp(f));
  // Regenerate every output file with 8 threads and compare bytes.
  for (const auto &r : runs)
    cli::run("--threads 8 " + r);
  for (std::size_t i = 0; i < outputs.size(); ++i)
    if (slurp(outputs[i]) != reference_files[i] || reference_files[i].empty()) {
      ++differing;
      if (first_bad.empty())
        first_bad = outputs[i];
    }
  return {differing == 0, std::to_string(runs.size()) + " commands x (2 runs x threads 1,8), " +
                              std::to_string(outputs.size()) + " output files; differing=" + std::to_string(differing) +
                              (first_bad.empty() ? "" : " first: " + first_bad)};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> criteria{
      {"partition number R(3,3) = 6 with counterexample at n=5",
       [] { return anchor(2, 2, Homogeneous{}, 3, 6); }},
      {"achromatic number for c=3, d=2, m=3 is 5 with counterexample at n=4",
       [] { return anchor(2, 3, Achromatic(2), 3, 5); }},
      {"rainbow_to_free: every g-free set is an f-rainbow", rainbow_soundness},
      {"trap_decompose: common free sets are f-free, selector identity", trap_soundness},
      {"truncate: achromatic(3) for g implies thin for f", truncation_soundness},
      {"bad children within binom(|στ|,1) at r = k+1", counting_bound},
      {"ladder-A free-leaf measure above 1/2", measure_bound},
      {"Schröder and d series, gap over 2^{2r-2}", bound_series},
      {"max_witness agrees with naive enumeration", oracle_equivalence},
      {"CLI output byte-identical across runs and thread counts", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first << " -- "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures ? 1 : 0;
}
