#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wavrep/box_set.hpp"
#include "wavrep/group.hpp"
#include "wavrep/spectral_map.hpp"

namespace wavrep {

/// Prescribed value χ(β); `phase` (in π units) makes the value exact.
struct CharacterValue {
  QAElement beta;
  Complex value;
  std::optional<Rational> phase;
};

/// A character of Q_A known on A^{-J}ℤⁿ through its values on the generators A^{-J}e_i,
/// plus optional values at other points that must agree with the forced products.
struct CharacterTarget {
  unsigned long level = 0;
  std::vector<Complex> generators;
  std::vector<std::optional<Rational>> generator_phases;
  std::vector<CharacterValue> checks;

  static CharacterTarget from_phases(unsigned long level, const RatVec& phases);
  static CharacterTarget from_values(unsigned long level, const std::vector<Complex>& values);

  /// The forced value ∏ gᵢ^{wᵢ} where β = A^{-J}w. Throws LevelExceeded.
  Complex value(const DilationMatrix& A, const QAElement& beta) const;
  /// Exact phase (π units, mod 2) when every generator phase is exact.
  std::optional<Rational> phase(const DilationMatrix& A, const QAElement& beta) const;
  /// Throws InconsistentTarget, LevelExceeded or InvalidInput.
  void validate(const DilationMatrix& A) const;
};

struct CharacterApproximation {
  RealPoint y;
  double error = 0.0;
  /// Lattice shift u in y = Bᴶ(y₀ + 2πu) used to land in ⋃BʲE.
  IntVec lattice_shift;
  std::optional<Projection> membership;
};

/// y with max_{β∈F} |χ_y(β) - target(β)| < eps. With E given, retries lattice-shifted
/// solutions until y resolves in ⋃BʲE.
CharacterApproximation approx_character(const DilationMatrix& A, const CharacterTarget& target,
                                        const std::vector<QAElement>& F, double eps = 1e-10,
                                        const std::optional<BoxSet>& E = std::nullopt);

/// |det B|^{-J}(2π)^{-n} ∫_{Bᴶ[-π,π)ⁿ} e^{-i⟨x,β⟩} dx = ∏ₖ sin(πθₖ)/(πθₖ), θ = Aᴶβ.
Complex mean_coefficient(const DilationMatrix& A, const QAElement& beta, unsigned long J);

}  // namespace wavrep
