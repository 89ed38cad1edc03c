#pragma once

#include <cstddef>
#include <vector>

#include "wavrep/arith.hpp"

namespace wavrep {

/// Outcome of the Schur–Cohn reduction applied to the reversed characteristic
/// polynomial. `chain[0]` is the reversed polynomial (coefficients by ascending
/// degree); each later entry is the next reduction. A failure records the
/// degree of the polynomial whose leading coefficient did not dominate.
struct ExpansivityCertificate {
  bool expansive = false;
  std::vector<IntVec> chain;
  int failing_degree = -1;
};

/// Runs the certificate on an integer polynomial given by ascending coefficients:
/// true iff every root lies strictly inside the unit circle.
ExpansivityCertificate schur_cohn(IntVec ascending);

/// Validated integer dilation matrix A (every eigenvalue of modulus > 1).
/// B = Aᵀ acts on the frequency side.
class DilationMatrix {
 public:
  std::size_t dim() const { return n_; }
  const Integer& a(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const Integer& b(std::size_t i, std::size_t j) const { return a_[j * n_ + i]; }
  const Integer& det() const { return det_; }
  const Integer& det_abs() const { return det_abs_; }
  /// det(λI − A), ascending coefficients.
  const IntVec& char_poly() const { return char_poly_; }
  const ExpansivityCertificate& certificate() const { return certificate_; }

  bool is_diagonal() const;
  /// Diagonal of B (equals the diagonal of A); meaningful when is_diagonal().
  IntVec b_diagonal() const;

  IntVec apply_a(const IntVec& v) const;
  /// adj(A)·v, so A⁻¹v = adj(A)v / det.
  IntVec apply_adj(const IntVec& v) const;
  /// Bʲx for any integer j, exact.
  RatVec apply_b_power(const RatVec& x, long j) const;
  /// Bʲ rounded to doubles, row-major.
  std::vector<double> b_power_double(long j) const;

  std::vector<std::vector<long long>> to_rows() const;

  friend bool operator==(const DilationMatrix& l, const DilationMatrix& r) { return l.a_ == r.a_; }

 private:
  friend DilationMatrix validate_dilation(const std::vector<std::vector<long long>>& raw);
  std::size_t n_ = 0;
  IntVec a_;
  IntVec adj_;
  Integer det_;
  Integer det_abs_;
  IntVec char_poly_;
  ExpansivityCertificate certificate_;
};

/// Throws Error{SingularMatrix} or Error{NotExpansive}.
DilationMatrix validate_dilation(const std::vector<std::vector<long long>>& raw);

/// β = A^{-j} v, kept canonical: j = 0 or A⁻¹v is not integral.
struct QAElement {
  IntVec v;
  unsigned long j = 0;

  friend bool operator==(const QAElement&, const QAElement&) = default;
};

struct GroupElement {
  QAElement beta;
  long m = 0;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

QAElement qa_canonicalize(const DilationMatrix& A, IntVec v, unsigned long j);
QAElement qa_zero(const DilationMatrix& A);
QAElement qa_integer(const DilationMatrix& A, IntVec v);
QAElement qa_add(const DilationMatrix& A, const QAElement& x, const QAElement& y);
QAElement qa_neg(const QAElement& x);
QAElement qa_sub(const DilationMatrix& A, const QAElement& x, const QAElement& y);
bool qa_is_zero(const QAElement& x);
/// The exact rational vector A^{-j}v.
RatVec qa_value(const DilationMatrix& A, const QAElement& x);

/// ϑ(m)β = A^{-m}β.
QAElement theta(const DilationMatrix& A, long m, const QAElement& beta);

GroupElement group_identity(const DilationMatrix& A);
GroupElement group_mul(const DilationMatrix& A, const GroupElement& g1, const GroupElement& g2);
GroupElement group_inv(const DilationMatrix& A, const GroupElement& g);

/// ω(k, (β, m)) = A^{-k}β, the cocycle of the cross-section k ↦ (0, k).
QAElement cocycle(const DilationMatrix& A, long k, const GroupElement& g);

/// A point of ℝⁿ held exactly: either rational multiples of π ("π units") or
/// plain rationals (every finite double converts exactly).
class RealPoint {
 public:
  RealPoint() = default;
  static RealPoint pi_units(RatVec coords) { return RealPoint(std::move(coords), true); }
  static RealPoint rationals(RatVec coords) { return RealPoint(std::move(coords), false); }
  static RealPoint from_doubles(const std::vector<double>& coords);

  std::size_t dim() const { return coords_.size(); }
  bool in_pi_units() const { return pi_units_; }
  /// Coordinates in the point's own units (multiply by π when in_pi_units()).
  const RatVec& exact() const { return coords_; }
  std::vector<double> to_double() const;
  bool is_zero() const;

  /// Bʲ·x, exact, preserving units.
  RealPoint dilated(const DilationMatrix& A, long j) const;

  friend bool operator==(const RealPoint&, const RealPoint&) = default;

 private:
  RealPoint(RatVec coords, bool pi_units) : coords_(std::move(coords)), pi_units_(pi_units) {}
  RatVec coords_;
  bool pi_units_ = false;
};

/// χₓ(β) = e^{-i⟨x, β⟩}. Exact phase reduction for π-unit points.
Complex character_eval(const DilationMatrix& A, const RealPoint& x, const QAElement& beta);
/// e^{-i⟨x, β⟩} for an explicit rational vector β.
Complex character_of_value(const RealPoint& x, const RatVec& beta);

}  // namespace wavrep
