#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wavrep/box_set.hpp"
#include "wavrep/group.hpp"
#include "wavrep/modulated.hpp"
#include "wavrep/spectral_map.hpp"

namespace wavrep {

/// Shape of random ModulatedBoxSum test vectors.
struct RandomShape {
  std::size_t max_terms = 4;
  unsigned long max_j = 3;  // modulation depth β = A^{-j}v
  long max_v = 3;
  /// Boxes have endpoints k/denominator (π units) with |endpoint| in [inner, outer].
  long denominator = 8;
  Rational inner = Rational(1, 4);
  Rational outer = 4;
  bool modulated = true;
};

/// Reproducible from (seed, index).
ModulatedBoxSum random_modulated(const DilationMatrix& A, std::uint64_t seed, std::uint64_t index,
                                 const RandomShape& shape = {});
GroupElement random_group_element(const DilationMatrix& A, std::uint64_t seed, std::uint64_t index, long max_m = 3,
                                  unsigned long max_j = 3, long max_v = 4);

struct Deviation {
  double value = 0.0;
  std::size_t witness = 0;  // trial index of the maximum
};

/// max ‖T̂_{e_i} D̂ f - D̂ T̂_{A e_i} f‖ over random f; `axis` is 1-based.
Deviation commutation_check(const DilationMatrix& A, std::size_t axis, std::size_t trials, std::uint64_t seed = 0);

/// [W̃(β, m)F](x, k) = e^{-i⟨x, Aᵏβ⟩} F(x, k - m). The level window moves by m; with an explicit
/// output window, clipped mass above tol·‖F‖² throws WindowTooSmall.
EZFunction wtilde_apply(const DilationMatrix& A, const GroupElement& g, const EZFunction& F,
                        std::optional<std::pair<long, long>> window = std::nullopt, double tol = 1e-10);

/// ‖Φ(Ŵ(g)f) - W̃(g)Φf‖ on the exact path.
double conjugation_check(const DilationMatrix& A, const BoxSet& E, const GroupElement& g, const ModulatedBoxSum& f);

/// Truncation of a monomial operator to span{δ_k : |k| ≤ K}: (Mg)(k) = phases[k + K] · g(k - shift).
struct FiberMatrix {
  RealPoint x;
  long K = 0;
  long shift = 0;
  std::vector<Complex> phases;

  std::size_t size() const { return static_cast<std::size_t>(2 * K + 1); }
  Eigen::MatrixXcd dense() const;
  /// Applies the truncation to a vector indexed by k + K.
  std::vector<Complex> apply(const std::vector<Complex>& g) const;
};

/// W̃ₓ(β, m): phases e^{-i⟨x, Aᵏβ⟩}, shift m.
FiberMatrix fiber_matrix(const DilationMatrix& A, const RealPoint& x, const GroupElement& g, long K = 32);
/// Ind(χₓ)(β, m): phases e^{-i⟨x, A^{-k}β⟩}, shift -m.
FiberMatrix induced_matrix(const DilationMatrix& A, const RealPoint& x, const GroupElement& g, long K = 32);

/// Max entry gap on the block |k|, |l| ≤ K - delta.
double interior_deviation(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y, long K, long delta);

/// (S_d f)(k) = f(k - d), truncated.
Eigen::MatrixXcd shift_matrix(long K, long d);
/// (Vf)(k) = f(-k).
Eigen::MatrixXcd flip_matrix(long K);

/// ‖V⁻¹ W̃ₓ(g) V - Ind(χₓ)(g)‖ on the interior.
double v_intertwiner_check(const DilationMatrix& A, const RealPoint& x, const GroupElement& g, long K = 32);

/// ‖S⁻¹ Ind(χ_{Bᵐx})(g) S - Ind(χₓ)(g)‖ on the interior with S = S_offset.
double orbit_deviation(const DilationMatrix& A, const RealPoint& x, long m, const GroupElement& g, long K, long offset);
/// orbit_deviation with the intertwiner offset m. Throws WindowTooSmall unless K > |m| + |g.m|.
double orbit_equivalence_check(const DilationMatrix& A, const RealPoint& x, long m, const GroupElement& g, long K = 32);

struct IrreducibilityResult {
  bool pass = true;
  std::optional<long> witness;  // m ≠ 0 with B^{-m}x = x
};

/// Exact test of B^{-m}x ≠ x for 0 < |m| ≤ M.
IrreducibilityResult irreducibility_scan(const DilationMatrix& A, const RealPoint& x, long M = 16);

/// Finite step function Σ c·1_R on ℝⁿ.
using StepFunction = std::vector<std::pair<Box, Complex>>;

/// M_g f.
ModulatedBoxSum multiply(const StepFunction& g, const ModulatedBoxSum& f);

/// g(ξ) = g₀(π(ξ)) on ⋃_{j_min ≤ j ≤ j_max} BʲE, for g₀ a step function on E.
StepFunction invariant_extension(const DilationMatrix& A, const BoxSet& E, const StepFunction& g0, long j_min,
                                 long j_max);

struct CommutantReport {
  /// max over trials of ‖[M_g, D̂]f‖ and ‖[M_g, T̂_v]f‖ for the invariant extension.
  double invariant_deviation = 0.0;
  std::size_t invariant_witness = 0;
  /// Largest ‖[M_h, D̂]f‖ for the non-invariant multiplier h over unit probe vectors.
  double noninvariant_commutator = 0.0;
  ModulatedBoxSum witness;
};

/// Checks that M_g commutes with D̂ and every T̂_v when g is B-invariant, and that the
/// non-invariant multiplier (g₀ on E, zero elsewhere, unless given) does not.
CommutantReport commutant_check(const DilationMatrix& A, const BoxSet& E, const StepFunction& g0, std::size_t trials,
                                std::uint64_t seed = 0, std::optional<StepFunction> noninvariant = std::nullopt);

}  // namespace wavrep
