#include <gtest/gtest.h>

#include <functional>

#include "oracles.hpp"
#include "wavrep/box_set.hpp"
#include "wavrep/errors.hpp"
#include "wavrep/wavelet_set.hpp"

using namespace wavrep;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }
Box box1(Rational lo, Rational hi) { return Box{{lo}, {hi}}; }
Box box2(Rational a0, Rational a1, Rational b0, Rational b1) { return Box{{a0, b0}, {a1, b1}}; }

bool raw_contains(const std::vector<Box>& boxes, const RatVec& p) {
  for (const auto& b : boxes) {
    bool in = true;
    for (std::size_t a = 0; a < p.size(); ++a) in = in && p[a] >= b.lo[a] && p[a] < b.hi[a];
    if (in) return true;
  }
  return false;
}

std::vector<Box> random_boxes(oracle::Rng& rng, std::size_t dim, int count) {
  std::vector<Box> out;
  for (int i = 0; i < count; ++i) {
    Box b;
    for (std::size_t a = 0; a < dim; ++a) {
      long lo = rng.uniform(-12, 10);
      long hi = lo + rng.uniform(1, 6);
      b.lo.push_back(q(lo, 4));
      b.hi.push_back(q(hi, 4));
    }
    out.push_back(b);
  }
  return out;
}

// Visits every cell midpoint of the 1/8 grid on [-4, 4)ⁿ.
void for_each_grid_point(std::size_t dim, const std::function<void(const RatVec&)>& f) {
  std::vector<long> idx(dim, -32);
  for (;;) {
    RatVec p;
    for (long i : idx) p.push_back(q(2 * i + 1, 16));
    f(p);
    std::size_t a = dim;
    while (a > 0 && idx[a - 1] == 31) idx[--a] = -32;
    if (a == 0) break;
    ++idx[a - 1];
  }
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST(Normalize, Examples) {
  const BoxSet merged = BoxSet::normalize(1, {box1(1, 2), box1(q(3, 2), 3)});
  ASSERT_EQ(merged.boxes().size(), 1u);
  EXPECT_EQ(merged.boxes()[0], box1(1, 3));
  EXPECT_EQ(merged.measure(), 2);

  const BoxSet empty = BoxSet::normalize(1, {});
  EXPECT_TRUE(empty.empty());
  EXPECT_EQ(empty.measure(), 0);

  const BoxSet two = BoxSet::normalize(1, {box1(1, 2), box1(-2, -1)});
  ASSERT_EQ(two.boxes().size(), 2u);
  EXPECT_EQ(two.boxes()[0], box1(-2, -1));
  EXPECT_EQ(two.boxes()[1], box1(1, 2));
}

TEST(Normalize, DimensionMismatch) {
  EXPECT_EQ(kind_of([] { BoxSet::normalize(1, {box2(0, 1, 0, 1)}); }), ErrorKind::DimensionMismatch);
}

TEST(Measure, Examples) {
  EXPECT_EQ(shannon_set().measure(), 2);
  EXPECT_EQ(BoxSet::cube(2, -1, 1).measure(), 4);
  EXPECT_EQ(BoxSet(3).measure(), 0);
}

TEST(SetAlgebra, Examples) {
  const BoxSet a = BoxSet::normalize(1, {box1(1, 2)}), b = BoxSet::normalize(1, {box1(q(3, 2), 3)});
  EXPECT_EQ(intersect(a, b), BoxSet::normalize(1, {box1(q(3, 2), 2)}));
  EXPECT_TRUE(subtract(BoxSet::cube(1, -1, 1), BoxSet::cube(1, -1, 1)).empty());
  const BoxSet halves = unite(BoxSet::normalize(1, {box1(-2, -1)}), BoxSet::normalize(1, {box1(1, 2)}));
  EXPECT_EQ(halves.measure(), 2);
  EXPECT_EQ(halves, shannon_set());
}

TEST(SetAlgebra, DimensionMismatch) {
  EXPECT_EQ(kind_of([] { intersect(BoxSet::cube(1, 0, 1), BoxSet::cube(2, 0, 1)); }), ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind_of([] { translate(BoxSet::cube(1, 0, 1), IntVec{1, 1}); }), ErrorKind::DimensionMismatch);
}

TEST(SetAlgebra, MatchesRasterOracle) {
  oracle::Rng rng(31);
  for (std::size_t dim : {1u, 2u}) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto ra = random_boxes(rng, dim, 1 + static_cast<int>(rng.uniform(0, 3)));
      const auto rb = random_boxes(rng, dim, 1 + static_cast<int>(rng.uniform(0, 3)));
      const BoxSet a = BoxSet::normalize(dim, ra), b = BoxSet::normalize(dim, rb);
      const BoxSet i = intersect(a, b), s = subtract(a, b), u = unite(a, b);
      for_each_grid_point(dim, [&](const RatVec& p) {
        const bool ia = raw_contains(ra, p), ib = raw_contains(rb, p);
        const RealPoint xi = RealPoint::pi_units(p);
        ASSERT_EQ(contains(a, xi), ia);
        ASSERT_EQ(contains(i, xi), ia && ib);
        ASSERT_EQ(contains(s, xi), ia && !ib);
        ASSERT_EQ(contains(u, xi), ia || ib);
      });
      EXPECT_EQ(u.measure() + i.measure(), a.measure() + b.measure());
      EXPECT_EQ(BoxSet::normalize(dim, a.boxes()), a);
      // Canonical form: boxes disjoint and sorted by lo.
      for (std::size_t k = 0; k + 1 < u.boxes().size(); ++k) {
        EXPECT_FALSE(intersect(u.boxes()[k], u.boxes()[k + 1]).has_value());
        EXPECT_TRUE(u.boxes()[k].lo < u.boxes()[k + 1].lo);
      }
    }
  }
}

TEST(SetAlgebra, EqualityIsIndicatorEquality) {
  const BoxSet a = BoxSet::normalize(2, {box2(0, 2, 0, 1), box2(0, 1, 1, 2), box2(1, 2, 1, 2)});
  const BoxSet b = BoxSet::normalize(2, {box2(0, 1, 0, 2), box2(1, 2, 0, 2)});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, BoxSet::cube(2, 0, 2));
}

TEST(Translate, Examples) {
  EXPECT_EQ(translate(BoxSet::normalize(1, {box1(1, 2)}), IntVec{-1}), BoxSet::normalize(1, {box1(-1, 0)}));
  EXPECT_EQ(translate(BoxSet::normalize(1, {box1(-2, -1)}), IntVec{1}), BoxSet::normalize(1, {box1(0, 1)}));
  EXPECT_EQ(translate(shannon_set(), IntVec{0}), shannon_set());
}

TEST(Dilate, Examples) {
  const auto A = validate_dilation({{2}});
  EXPECT_EQ(dilate(BoxSet::normalize(1, {box1(1, 2)}), A, 1), BoxSet::normalize(1, {box1(2, 4)}));
  EXPECT_EQ(dilate(BoxSet::normalize(1, {box1(1, 2)}), A, -1), BoxSet::normalize(1, {box1(q(1, 2), 1)}));
  EXPECT_EQ(dilate(shannon_set(), A, 0), shannon_set());
}

TEST(Dilate, NonDiagonalRefused) {
  const auto A = validate_dilation({{1, -1}, {1, 1}});
  EXPECT_EQ(kind_of([&] { dilate(BoxSet::cube(2, 0, 1), A, 1); }), ErrorKind::NonDiagonalDilation);
}

TEST(Dilate, CompositionAndMeasureScaling) {
  oracle::Rng rng(32);
  const auto A = validate_dilation({{2, 0}, {0, -3}});
  for (int trial = 0; trial < 30; ++trial) {
    const BoxSet s = BoxSet::normalize(2, random_boxes(rng, 2, 3));
    const long j1 = rng.uniform(-3, 3), j2 = rng.uniform(-3, 3);
    EXPECT_EQ(dilate(s, A, j1 + j2), dilate(dilate(s, A, j1), A, j2));
    Rational factor = 1;
    for (long k = 0; k < std::labs(j1); ++k) factor = j1 > 0 ? Rational(factor * 6) : Rational(factor / 6);
    EXPECT_EQ(dilate(s, A, j1).measure(), s.measure() * factor);
  }
}

TEST(Contains, Examples) {
  const BoxSet E = shannon_set();
  EXPECT_TRUE(contains(E, RealPoint::pi_units({1})));
  EXPECT_FALSE(contains(E, RealPoint::pi_units({2})));
  EXPECT_FALSE(contains(E, RealPoint::pi_units({0})));
  EXPECT_TRUE(contains(E, RealPoint::pi_units({-2})));
  EXPECT_TRUE(contains(E, std::vector<double>{1.5 * M_PI}));
  EXPECT_TRUE(contains(E, RealPoint::from_doubles({1.5 * M_PI})));
}

TEST(TranslationReduce, Shannon) {
  const auto r = translation_reduce(shannon_set());
  EXPECT_TRUE(r.congruent());
  ASSERT_EQ(r.fragments.size(), 2u);
  for (const auto& f : r.fragments) {
    if (f.piece == box1(1, 2)) {
      EXPECT_EQ(f.shift, IntVec{-1});
      EXPECT_EQ(f.translated(), box1(-1, 0));
    } else {
      EXPECT_EQ(f.piece, box1(-2, -1));
      EXPECT_EQ(f.shift, IntVec{1});
      EXPECT_EQ(f.translated(), box1(0, 1));
    }
  }
}

TEST(TranslationReduce, Cube) {
  const auto r = translation_reduce(BoxSet::cube(1, -1, 1));
  EXPECT_TRUE(r.congruent());
  ASSERT_EQ(r.fragments.size(), 1u);
  EXPECT_EQ(r.fragments[0].shift, IntVec{0});
}

TEST(TranslationReduce, OverlappingFragments) {
  const auto r = translation_reduce(BoxSet::normalize(1, {box1(1, 2), box1(3, 4)}));
  EXPECT_FALSE(r.congruent());
  EXPECT_EQ(r.overlap, BoxSet::normalize(1, {box1(-1, 0)}));
  EXPECT_EQ(r.deficit, BoxSet::normalize(1, {box1(0, 1)}));
}

TEST(TranslationReduce, CongruentSetsTileTheCube) {
  // Random congruent sets: cut [-1,1)² into cells and push each by a random lattice vector.
  oracle::Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Box> raw;
    for (long i = 0; i < 4; ++i)
      for (long j = 0; j < 4; ++j) {
        const long s0 = rng.uniform(-3, 3), s1 = rng.uniform(-3, 3);
        raw.push_back(box2(q(i - 2, 2) + 2 * s0, q(i - 1, 2) + 2 * s0, q(j - 2, 2) + 2 * s1, q(j - 1, 2) + 2 * s1));
      }
    const BoxSet s = BoxSet::normalize(2, raw);
    const auto r = translation_reduce(s);
    EXPECT_TRUE(r.congruent());
    Rational total = 0;
    for (const auto& f : r.fragments) total += f.piece.volume();
    EXPECT_EQ(total, 4);
  }
}

TEST(AccumulateCells, SumsOverlaps) {
  std::vector<std::pair<Box, Complex>> terms{{box1(0, 2), 1.0}, {box1(1, 3), 2.0}, {box1(1, 2), -3.0}};
  const auto cells = accumulate_cells(1, terms);
  // [0,1) → 1, [1,2) → 0 (dropped), [2,3) → 2.
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(cells[0].first, box1(0, 1));
  EXPECT_EQ(cells[0].second, Complex(1.0));
  EXPECT_EQ(cells[1].first, box1(2, 3));
  EXPECT_EQ(cells[1].second, Complex(2.0));
}
