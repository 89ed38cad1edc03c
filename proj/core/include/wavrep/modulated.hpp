#pragma once

#include <cstddef>
#include <vector>

#include "wavrep/arith.hpp"
#include "wavrep/box_set.hpp"
#include "wavrep/group.hpp"

namespace wavrep {

/// c · e^{-i⟨β, ξ⟩} · 1_R(ξ).
struct ModulatedTerm {
  Complex coef;
  QAElement beta;
  Box box;
};

/// Finite sum of modulated box indicators on ℝⁿ. The family is closed under
/// T̂_β always and under D̂ when B is diagonal, and its L² pairings reduce to
/// one-dimensional exponential integrals.
struct ModulatedBoxSum {
  std::size_t dim = 1;
  std::vector<ModulatedTerm> terms;

  static ModulatedBoxSum indicator(const DilationMatrix& A, const BoxSet& s, Complex coef = 1.0);

  bool unmodulated() const;
  bool is_zero() const { return terms.empty(); }
  Complex eval(const DilationMatrix& A, const RealPoint& xi) const;
  /// Evaluation at a floating point ξ (plain coordinates).
  Complex eval(const DilationMatrix& A, const std::vector<double>& xi) const;
  /// Union of the term boxes.
  BoxSet support() const;
};

ModulatedBoxSum scaled(const ModulatedBoxSum& f, Complex factor);
ModulatedBoxSum sum(const ModulatedBoxSum& f, const ModulatedBoxSum& g);
ModulatedBoxSum difference(const ModulatedBoxSum& f, const ModulatedBoxSum& g);
/// f · 1_S.
ModulatedBoxSum restrict_to(const ModulatedBoxSum& f, const BoxSet& s);

/// ∫_{[πlo, πhi)} e^{-iθt} dt with the θ → 0 limit taken analytically.
Complex axis_integral(const Rational& theta, const Rational& lo, const Rational& hi);

/// ⟨f, g⟩ = ∫ f·conj(g), closed form.
Complex inner_product(const DilationMatrix& A, const ModulatedBoxSum& f, const ModulatedBoxSum& g);

/// Merges terms sharing a modulation onto disjoint cells; exact cancellations drop out.
ModulatedBoxSum simplify(const DilationMatrix& A, const ModulatedBoxSum& f);
double norm(const DilationMatrix& A, const ModulatedBoxSum& f);
double distance(const DilationMatrix& A, const ModulatedBoxSum& f, const ModulatedBoxSum& g);

/// ‖f‖² / πⁿ in exact rational arithmetic; requires f.unmodulated().
Rational exact_norm_sq(const ModulatedBoxSum& f);

/// T̂_β f(ξ) = e^{-i⟨β, ξ⟩} f(ξ).
ModulatedBoxSum apply_That(const DilationMatrix& A, const QAElement& beta, const ModulatedBoxSum& f);
/// D̂^m f(ξ) = |det B|^{-m/2} f(B^{-m} ξ); diagonal B only.
ModulatedBoxSum apply_Dhat(long m, const ModulatedBoxSum& f, const DilationMatrix& A);
/// Ŵ(β, m) = T̂_β D̂^m, the wavelet representation on the frequency side.
ModulatedBoxSum apply_What(const DilationMatrix& A, const GroupElement& g, const ModulatedBoxSum& f);

}  // namespace wavrep
