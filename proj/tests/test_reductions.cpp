#include <functional>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "ramsey/random.hpp"
#include "ramsey/reductions.hpp"

using namespace ramsey;

TEST(Truncate, ClampsAtD) {
  const Coloring f(1, 3, {9, 1, 3}, 10);
  const Coloring g = truncate(f, 3);
  EXPECT_EQ(g.values(), (std::vector<Color>{3, 1, 3}));
  EXPECT_EQ(g.color_count(), Color{4});
  EXPECT_THROW(truncate(f, 0), std::invalid_argument);
}

TEST(Truncate, AchromaticForGIsThinForF) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Coloring f = random_coloring(UniformKind{10}, 2, 8, seed);
    const Coloring g = truncate(f, 3);
    for (Mask m = 0; m < (Mask{1} << 8); ++m) {
      const auto h = oracle::subset_of_mask(m);
      if (!check_property(g, h, Achromatic(3)))
        continue;
      ASSERT_TRUE(check_property(f, h, Thin(Palette{0, 1, 2, 3})));
      ASSERT_TRUE(check_property(f, h, Thin(Palette::iota(10))));
    }
  }
}

namespace {
// r=2 on [4]: {0,1}->0, {0,2}->1, {1,2}->0, {1,3}->1, the rest fresh.
Coloring rainbow_example() {
  // colex order: 01 02 12 03 13 23
  return Coloring(2, 4, {0, 1, 0, 10, 1, 11});
}
} // namespace

TEST(RainbowToFree, Example) {
  const Coloring f = rainbow_example();
  const Coloring g = rainbow_to_free(f);
  EXPECT_EQ(g.at(Tuple{1, 2}), 0u);
  EXPECT_EQ(g.at(Tuple{1, 3}), 0u); // τ = {0,2}, min({0,2} − {1,3}) = 0
  EXPECT_EQ(g.at(Tuple{0, 1}), 0u); // first of its color
  EXPECT_TRUE(is_free(g, Tuple{1, 2, 3}));
  EXPECT_TRUE(is_rainbow(f, Tuple{1, 2, 3}));
  EXPECT_FALSE(is_free(g, Tuple{0, 1, 2}));
  EXPECT_FALSE(is_rainbow(f, Tuple{0, 1, 2}));
}

TEST(RainbowToFree, RejectsThirdPreimage) {
  const Coloring f(2, 3, {4, 4, 4});
  try {
    rainbow_to_free(f);
    FAIL() << "expected rejection";
  } catch (const not_two_bounded &e) {
    EXPECT_EQ(e.color(), 4u);
    EXPECT_NE(std::string(e.what()).find("color 4"), std::string::npos);
  }
}

TEST(RainbowToFree, FreeImpliesRainbowHigherArity) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Coloring f = random_coloring(BBoundedKind{2, std::nullopt}, 3, 8, seed);
    const Coloring g = rainbow_to_free(f);
    for (Mask m = 0; m < (Mask{1} << 8); ++m) {
      const auto h = oracle::subset_of_mask(m);
      if (is_free(g, h)) {
        ASSERT_TRUE(is_rainbow(f, h)) << seed << " " << m;
      }
    }
  }
}

TEST(TrapDecompose, Example) {
  const Coloring f = Coloring::from_function(2, 6, [](std::span<const Element> s) -> Color {
    return s[0] == 3 && s[1] == 5 ? 4 : 0;
  });
  const auto parts = trap_decompose(f);
  ASSERT_EQ(parts.size(), 3u);
  const Tuple s{3, 5};
  EXPECT_EQ(parts[0].at(s), 3u);
  EXPECT_EQ(parts[1].at(s), 4u);
  EXPECT_EQ(parts[2].at(s), 6u);
  EXPECT_EQ(trap_index(f, s), 1u);
  EXPECT_EQ(f.at(s), parts[1].at(s));
}

TEST(TrapDecompose, EachPartTrappedAndSelectorHolds) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const unsigned r = 1 + static_cast<unsigned>(seed % 3);
    const Coloring f = random_coloring(BelowMaxKind{4}, r, 8, seed);
    const auto parts = trap_decompose(f);
    ASSERT_EQ(parts.size(), r + 1);
    for (std::size_t k = 0; k <= r; ++k)
      EXPECT_TRUE(is_k_trapped(parts[k], k));
    for_each_tuple_colex(8, r, [&](std::span<const Element> s, std::uint64_t rank) {
      ASSERT_EQ(f.at_rank(rank), parts[trap_index(s, f.at_rank(rank))].at_rank(rank));
    });
  }
}

namespace {
// g(σ⟨x⟩) is looked up per x; everything else is 0.
Coloring pair_coloring(unsigned n, std::function<Color(Element, Element)> fn) {
  return Coloring::from_function(2, n, [&](std::span<const Element> s) { return fn(s[0], s[1]); });
}
} // namespace

TEST(LimitColoring, LastThreeAgree) {
  // Z tail above 0 is {1,2,3,4,5} with values 7,3,3,3,3.
  const Coloring g = pair_coloring(6, [](Element a, Element b) -> Color { return a == 0 && b == 1 ? 7 : 3; });
  const auto lim = limit_coloring(g, Tuple{1, 2, 3, 4, 5}, 3);
  EXPECT_EQ(lim.value(Tuple{0}), Color{3});
}

TEST(LimitColoring, AlternatingIsUndefined) {
  const Coloring g = pair_coloring(6, [](Element, Element b) -> Color { return b % 2 ? 1 : 2; });
  const auto lim = limit_coloring(g, Tuple{1, 2, 3, 4, 5}, 3);
  EXPECT_FALSE(lim.value(Tuple{0}).has_value());
  EXPECT_FALSE(lim.total());
  const auto undefined = lim.undefined();
  EXPECT_NE(std::find(undefined.begin(), undefined.end(), Tuple{0}), undefined.end());
}

TEST(LimitColoring, ConstantIsTotalWhereWitnessed) {
  const Coloring g(2, 10, std::vector<Color>(45, 5));
  const auto lim = limit_coloring(g, range_tuple(0, 10), 3);
  for (Element x = 0; x < 7; ++x)
    EXPECT_EQ(lim.value(Tuple{x}), Color{5});
  // Elements without t witnesses above them stay undefined and are reported.
  EXPECT_EQ(lim.undefined().size(), 3u);
  bool complete = false;
  EXPECT_EQ(lim.palette_on(std::vector<Element>{0, 1, 2}, &complete), (Palette{5}));
  EXPECT_TRUE(complete);
  lim.palette_on(std::vector<Element>{0, 9}, &complete);
  EXPECT_FALSE(complete);
}

TEST(LimitColoring, RejectsBadArguments) {
  const Coloring g1(1, 4, {0, 0, 0, 0});
  EXPECT_THROW(limit_coloring(g1, Tuple{1, 2}), std::invalid_argument);
  const Coloring g2(2, 4, std::vector<Color>(6, 0));
  EXPECT_THROW(limit_coloring(g2, Tuple{1, 2}, 1), std::invalid_argument);
  EXPECT_THROW(limit_coloring(g2, Tuple{1, 9}), std::out_of_range);
}

TEST(GreedyAchromatic, ParityExample) {
  const Coloring g = pair_coloring(12, [](Element, Element y) -> Color { return y % 2; });
  const Tuple v = greedy_achromatic_extension(g, Palette{0}, range_tuple(0, 12));
  // The first element is always admissible; after it only even y keep g = 0.
  EXPECT_EQ(v, (Tuple{0, 2, 4, 6, 8, 10}));
  EXPECT_EQ(greedy_achromatic_extension(g, Palette{0, 1}, range_tuple(0, 12)), range_tuple(0, 12));
  EXPECT_LE(greedy_achromatic_extension(g, Palette{}, range_tuple(0, 12)).size(), 1u);
}

TEST(GreedyAchromatic, ResultHasPaletteInTheta) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Coloring g = random_coloring(UniformKind{3}, 3, 12, seed);
    const Palette theta{0, 2};
    const Tuple v = greedy_achromatic_extension(g, theta, range_tuple(0, 12));
    EXPECT_TRUE(palette(g, v).subset_of(theta));
  }
}

TEST(GreedyFree, PlusOneExample) {
  const Coloring g = Coloring::from_function(1, 6, [](std::span<const Element> s) -> Color { return s[0] + 1; });
  EXPECT_EQ(greedy_free_extension(g, Tuple{}, range_tuple(0, 6)), (Tuple{0, 2, 4}));
  const Coloring m = pair_coloring(8, [](Element a, Element) -> Color { return a; });
  EXPECT_EQ(greedy_free_extension(m, Tuple{}, range_tuple(0, 8)), range_tuple(0, 8));
  EXPECT_EQ(greedy_free_extension(g, Tuple{0, 2, 4}, range_tuple(0, 6)), (Tuple{0, 2, 4}));
  EXPECT_THROW(greedy_free_extension(g, Tuple{0, 1}, range_tuple(0, 6)), std::invalid_argument);
}

TEST(GreedyFree, FreeAndGreedilyMaximal) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Coloring g = random_coloring(UniformKind{12}, 2, 12, seed);
    const WindowCondition cond(Tuple{0}, range_tuple(3, 12));
    const Tuple out = greedy_free_extension(g, cond);
    ASSERT_TRUE(is_free(g, out));
    ASSERT_EQ(out[0], 0u);
    // Every skipped y was inadmissible against the prefix chosen before it.
    for (Element y = 3; y < 12; ++y) {
      if (out.contains(y))
        continue;
      std::vector<Element> prefix;
      for (Element x : out)
        if (x < y)
          prefix.push_back(x);
      prefix.push_back(y);
      ASSERT_FALSE(is_free(g, prefix)) << "seed " << seed << " y " << y;
    }
  }
}

TEST(WindowCondition, RequiresStemBelowWindow) {
  EXPECT_THROW(WindowCondition(Tuple{5}, Tuple{3, 6}), std::invalid_argument);
}

TEST(BlockPigeonhole, Examples) {
  const BlockPartition p({Tuple{0, 1}, Tuple{3}, Tuple{4, 6}}, {Palette{2}, Palette{5}, Palette{2}});
  const auto res = block_pigeonhole(p);
  EXPECT_EQ(res.palette, (Palette{2}));
  EXPECT_EQ(res.elements, (Tuple{0, 1, 4, 6}));

  const auto single = block_pigeonhole(BlockPartition({Tuple{2, 3}}, {Palette{1, 4}}));
  EXPECT_EQ(single.palette, (Palette{1, 4}));
  EXPECT_EQ(single.elements, (Tuple{2, 3}));

  const auto tie = block_pigeonhole(BlockPartition({Tuple{0}, Tuple{1}, Tuple{2}}, {Palette{3}, Palette{1}, Palette{2}}));
  EXPECT_EQ(tie.palette, (Palette{1}));
  EXPECT_EQ(tie.elements, (Tuple{1}));
}

TEST(BlockPigeonhole, RejectsOverlappingBlocks) {
  EXPECT_THROW(BlockPartition({Tuple{0, 3}, Tuple{2}}, {Palette{}, Palette{}}), std::invalid_argument);
  EXPECT_THROW(BlockPartition({Tuple{0}}, {}), std::invalid_argument);
}

TEST(BlockPigeonhole, FromColoring) {
  const Coloring f = pair_coloring(6, [](Element a, Element b) -> Color { return (a / 2 == b / 2) ? a / 2 : 9; });
  const auto p = BlockPartition::from_coloring(f, {Tuple{0, 1}, Tuple{2, 3}, Tuple{4, 5}});
  EXPECT_EQ(p.palettes()[1], (Palette{1}));
}
