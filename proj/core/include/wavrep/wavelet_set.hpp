#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wavrep/box_set.hpp"
#include "wavrep/group.hpp"

namespace wavrep {

enum class CheckMode { Exact, Sampled };

std::string to_string(CheckMode mode);

/// Parameters shared by the tiling checks. Radii are in π units and bound the
/// ∞-norm annulus r_in ≤ ‖ξ‖∞ ≤ r_out.
struct TilingParams {
  long J = 8;
  Rational r_in = Rational(1, 64);
  Rational r_out = 64;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  /// Force sampled mode even when exact mode is available.
  bool force_sampled = false;
};

/// Sample point that violates a condition, reproducible from (seed, index).
struct SampleWitness {
  std::uint64_t index = 0;
  std::vector<double> point;
  std::vector<long> scales;  // j with B^{-j}ξ ∈ E
};

struct ConditionResult {
  bool pass = true;
  CheckMode mode = CheckMode::Exact;
  std::string note;
  // Exact witnesses.
  std::optional<BoxSet> witness_set;
  std::optional<std::pair<long, long>> witness_scales;
  // Sampled witness.
  std::optional<SampleWitness> witness_sample;
  // Condition (iii).
  std::optional<BoxSet> overlap;
  std::optional<BoxSet> deficit;
};

struct TilingReport {
  ConditionResult condition_i;
  ConditionResult condition_ii;
  ConditionResult condition_iii;
  TilingParams params;
  Rational measure;  // multiple of πⁿ

  bool tiles_under_dilation() const { return condition_i.pass && condition_ii.pass; }
  bool is_wavelet_set() const { return condition_i.pass && condition_ii.pass && condition_iii.pass; }
  std::string verdict() const;
};

/// [-2π, -π) ∪ [π, 2π).
BoxSet shannon_set();

/// B[-π,π)ⁿ \ [-π,π)ⁿ for diagonal B: tiles ℝⁿ under dilation by B but in
/// general is not translation congruent to the cube.
BoxSet dilation_annulus(const DilationMatrix& A);

ConditionResult check_dilation_disjoint(const BoxSet& E, const DilationMatrix& A, const TilingParams& params);
ConditionResult check_dilation_cover(const BoxSet& E, const DilationMatrix& A, const TilingParams& params);
ConditionResult check_translation_congruent(const BoxSet& E);
TilingReport verify_wavelet_set(const BoxSet& E, const DilationMatrix& A, const TilingParams& params = {});

/// The ∞-norm annulus [-r_out, r_out)ⁿ \ [-r_in, r_in)ⁿ in π units.
BoxSet annulus_set(std::size_t dim, const Rational& r_in, const Rational& r_out);

}  // namespace wavrep
