#include <gtest/gtest.h>

#include <functional>

#include "oracles.hpp"
#include "wavrep/errors.hpp"
#include "wavrep/wavelet_set.hpp"

using namespace wavrep;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }
BoxSet interval(Rational lo, Rational hi) { return BoxSet::normalize(1, {Box{{lo}, {hi}}}); }
DilationMatrix two() { return validate_dilation({{2}}); }

BoxSet shifted_shannon() {
  return BoxSet::normalize(1, {Box{{q(-15, 8)}, {q(-7, 8)}}, Box{{q(9, 8)}, {q(17, 8)}}});
}

std::vector<oracle::Interval> intervals_of(const BoxSet& s) {
  std::vector<oracle::Interval> out;
  for (const auto& b : s.boxes()) out.push_back({b.lo[0], b.hi[0]});
  return out;
}

TilingParams params_with(long J, Rational r_in, Rational r_out) {
  TilingParams p;
  p.J = J;
  p.r_in = r_in;
  p.r_out = r_out;
  return p;
}

TilingParams sampled(std::size_t n, std::uint64_t seed = 0) {
  TilingParams p;
  p.force_sampled = true;
  p.samples = n;
  p.seed = seed;
  return p;
}

}  // namespace

TEST(ShannonSet, Examples) {
  const BoxSet E = shannon_set();
  ASSERT_EQ(E.boxes().size(), 2u);
  EXPECT_EQ(E.boxes()[0], (Box{{q(-2)}, {q(-1)}}));
  EXPECT_EQ(E.boxes()[1], (Box{{q(1)}, {q(2)}}));
  EXPECT_EQ(E.measure(), 2);
  EXPECT_TRUE(translation_reduce(E).congruent());
}

TEST(DilationDisjoint, ShannonPasses) {
  const auto r = check_dilation_disjoint(shannon_set(), two(), params_with(6, q(1, 64), 64));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.mode, CheckMode::Exact);
}

TEST(DilationDisjoint, OverlapWitness) {
  const auto r = check_dilation_disjoint(interval(q(1, 2), 2), two(), params_with(2, q(1, 64), 64));
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness_set.has_value());
  EXPECT_EQ(*r.witness_set, interval(1, 2));
  ASSERT_TRUE(r.witness_scales.has_value());
  EXPECT_EQ(*r.witness_scales, (std::pair<long, long>{0, 1}));
}

TEST(DilationDisjoint, EmptyPassesVacuously) {
  EXPECT_TRUE(check_dilation_disjoint(BoxSet(1), two(), {}).pass);
}

TEST(DilationDisjoint, WitnessIsReverifiable) {
  // Every point of the exact witness lies in E and in B^d(E) by the interval oracle.
  const BoxSet E = interval(0, 2);
  const auto r = check_dilation_disjoint(E, two(), {});
  ASSERT_FALSE(r.pass);
  const long d = r.witness_scales->second;
  for (const auto& b : r.witness_set->boxes()) {
    const Rational mid = (b.lo[0] + b.hi[0]) / 2;
    const auto hits = oracle::dilation_hits(intervals_of(E), 2, mid, 20);
    EXPECT_NE(std::find(hits.begin(), hits.end(), 0), hits.end());
    EXPECT_NE(std::find(hits.begin(), hits.end(), d), hits.end());
  }
}

TEST(DilationCover, ShannonPassesOnAnnulus) {
  const auto r = check_dilation_cover(shannon_set(), two(), params_with(6, q(1, 8), 8));
  EXPECT_TRUE(r.pass);
  EXPECT_NE(r.note.find("certified only on the annulus"), std::string::npos);
}

TEST(DilationCover, ShiftedShannonGapWitness) {
  const auto r = check_dilation_cover(shifted_shannon(), two(), params_with(6, q(1, 8), 8));
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness_set.has_value());
  // The gap [2π + c, 2π + 2c) with c = π/8.
  EXPECT_FALSE(intersect(*r.witness_set, interval(q(17, 8), q(18, 8))).empty());
  EXPECT_EQ(intersect(*r.witness_set, interval(q(17, 8), q(18, 8))), interval(q(17, 8), q(18, 8)));
  // Oracle: no dilate of E within a much wider range reaches any witness midpoint.
  for (const auto& b : r.witness_set->boxes()) {
    const Rational mid = (b.lo[0] + b.hi[0]) / 2;
    EXPECT_TRUE(oracle::dilation_hits(intervals_of(shifted_shannon()), 2, mid, 40).empty());
  }
}

TEST(DilationCover, CubeCoversAnnulus) {
  // ⋃_{|j|≤6} 2ʲ[-π,π) = [-64π, 64π) contains the annulus (π/8, 8π).
  const auto r = check_dilation_cover(interval(-1, 1), two(), params_with(6, q(1, 8), 8));
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(check_dilation_disjoint(interval(-1, 1), two(), params_with(6, q(1, 8), 8)).pass);
}

TEST(DilationCover, BadAnnulus) {
  try {
    check_dilation_cover(shannon_set(), two(), params_with(6, 0, 8));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadAnnulus);
  }
}

TEST(TranslationCongruent, Examples) {
  EXPECT_TRUE(check_translation_congruent(shannon_set()).pass);
  EXPECT_TRUE(check_translation_congruent(interval(0, 2)).pass);
  const auto r = check_translation_congruent(interval(0, 3));
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(*r.overlap, interval(0, 1));
  EXPECT_TRUE(r.deficit->empty());
}

TEST(VerifyWaveletSet, Shannon) {
  const auto r = verify_wavelet_set(shannon_set(), two());
  EXPECT_TRUE(r.condition_i.pass);
  EXPECT_TRUE(r.condition_ii.pass);
  EXPECT_TRUE(r.condition_iii.pass);
  EXPECT_TRUE(r.is_wavelet_set());
  EXPECT_EQ(r.measure, 2);
  EXPECT_EQ(r.verdict(), "wavelet set (at tested resolution)");
}

TEST(VerifyWaveletSet, ShiftedShannon) {
  const auto r = verify_wavelet_set(shifted_shannon(), two());
  EXPECT_FALSE(r.condition_ii.pass);
  EXPECT_TRUE(r.condition_iii.pass);
  EXPECT_FALSE(r.is_wavelet_set());
  // E ∩ B(E) ⊇ [-15π/8, -7π/4), so condition (i) fails as well.
  EXPECT_FALSE(r.condition_i.pass);
  EXPECT_EQ(*r.condition_i.witness_set, interval(q(-15, 8), q(-7, 4)));
}

TEST(VerifyWaveletSet, HalfLineInterval) {
  const auto r = verify_wavelet_set(interval(0, 2), two());
  EXPECT_TRUE(r.condition_iii.pass);
  EXPECT_FALSE(r.condition_i.pass);
  EXPECT_FALSE(r.is_wavelet_set());
}

TEST(VerifyWaveletSet, ExactVerdictStableInJ) {
  for (long J : {4L, 8L, 12L, 16L}) {
    TilingParams p;
    p.J = J;
    p.r_in = q(1, 8);
    p.r_out = 8;
    EXPECT_TRUE(verify_wavelet_set(shannon_set(), two(), p).is_wavelet_set()) << J;
    EXPECT_FALSE(verify_wavelet_set(shifted_shannon(), two(), p).condition_ii.pass) << J;
  }
}

TEST(VerifyWaveletSet, TwoDimensionalAnnulus) {
  const auto A = validate_dilation({{2, 0}, {0, 3}});
  const BoxSet E = dilation_annulus(A);
  EXPECT_EQ(E.measure(), 20);
  const auto r = verify_wavelet_set(E, A);
  EXPECT_TRUE(r.condition_i.pass);
  EXPECT_TRUE(r.condition_ii.pass);
  EXPECT_FALSE(r.condition_iii.pass);
  EXPECT_TRUE(r.tiles_under_dilation());
}

TEST(SampledMode, AgreesWithExactMode) {
  const auto A2 = two();
  const auto A23 = validate_dilation({{2, 0}, {0, 3}});
  struct Case {
    BoxSet E;
    DilationMatrix A;
  };
  const std::vector<Case> cases{{shannon_set(), A2},       {shifted_shannon(), A2},     {interval(0, 2), A2},
                                {interval(0, 3), A2},      {interval(q(1, 2), 2), A2}, {dilation_annulus(A23), A23},
                                {BoxSet::cube(2, 0, 1), A23}};
  for (const auto& c : cases) {
    const auto exact = verify_wavelet_set(c.E, c.A);
    const auto samp = verify_wavelet_set(c.E, c.A, sampled(20000, 7));
    EXPECT_EQ(samp.condition_i.mode, CheckMode::Sampled);
    EXPECT_EQ(exact.condition_i.pass, samp.condition_i.pass);
    EXPECT_EQ(exact.condition_ii.pass, samp.condition_ii.pass);
  }
}

TEST(SampledMode, ReproducibleWitness) {
  const auto a = check_dilation_cover(shifted_shannon(), two(), sampled(20000, 3));
  const auto b = check_dilation_cover(shifted_shannon(), two(), sampled(20000, 3));
  ASSERT_TRUE(a.witness_sample.has_value());
  ASSERT_TRUE(b.witness_sample.has_value());
  EXPECT_EQ(a.witness_sample->index, b.witness_sample->index);
  EXPECT_EQ(a.witness_sample->point, b.witness_sample->point);
  // The sampled point really is uncovered: exact oracle on its dyadic value.
  const Rational xi = exact_rational(a.witness_sample->point[0]) / exact_rational(M_PI);
  EXPECT_TRUE(oracle::dilation_hits(intervals_of(shifted_shannon()), 2, xi, 8).empty());
}

TEST(SampledMode, OverlapWitnessHasTwoScales) {
  const auto r = check_dilation_disjoint(interval(0, 2), two(), sampled(5000, 1));
  ASSERT_FALSE(r.pass);
  ASSERT_TRUE(r.witness_sample.has_value());
  EXPECT_GE(r.witness_sample->scales.size(), 2u);
}

TEST(SampledMode, NonDiagonalDowngrades) {
  const auto A = validate_dilation({{1, -1}, {1, 1}});
  TilingParams p;
  p.samples = 2000;
  const auto r = check_dilation_disjoint(BoxSet::cube(2, 0, 1), A, p);
  EXPECT_EQ(r.mode, CheckMode::Sampled);
  EXPECT_NE(r.note.find("downgraded"), std::string::npos);
}

TEST(AnnulusSet, Measure) {
  EXPECT_EQ(annulus_set(1, q(1, 8), 8).measure(), 16 - q(1, 4));
  EXPECT_EQ(annulus_set(2, 1, 2).measure(), 12);
}
