#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wavrep/box_set.hpp"
#include "wavrep/group.hpp"
#include "wavrep/modulated.hpp"
#include "wavrep/spectral_map.hpp"

namespace wavrep {

/// ψ(t) for ψ̂ = 1_E/√μ(E), with t in plain coordinates.
Complex msf_eval(const BoxSet& E, const std::vector<double>& t);
Complex msf_eval(const BoxSet& E, const RealPoint& t);

/// ψ̂ = 1_E/√μ(E) as a ModulatedBoxSum.
ModulatedBoxSum msf_hat(const DilationMatrix& A, const BoxSet& E);

struct GramSpec {
  BoxSet E;
  DilationMatrix A;
  long M = 2;  // m ∈ [-M, M]
  long V = 8;  // v ∈ [-V, V]ⁿ
  double tolerance = 1e-12;
  /// Cells per π-unit length for the quadrature fallback.
  std::size_t quadrature_resolution = 64;
};

struct GramIndex {
  long m = 0;
  IntVec v;
};

/// Enumerates (m, v) with m outermost and v in lexicographic order.
std::vector<GramIndex> gram_indices(std::size_t dim, long M, long V);

struct GramResult {
  std::vector<GramIndex> index;
  Eigen::MatrixXcd matrix;
  double max_deviation = 0.0;
  std::pair<std::size_t, std::size_t> worst{0, 0};
  FunctionPath path = FunctionPath::Exact;
  bool within_tolerance = true;
  std::string warning;
  /// Largest |entry| with m ≠ m'; exactly zero when the scales have disjoint support.
  double max_cross_scale = 0.0;
  std::optional<std::pair<std::size_t, std::size_t>> cross_scale_witness;
};

/// Gram matrix of {D̂^m T̂_v ψ̂}. Closed form when boxes map to boxes, midpoint quadrature otherwise.
GramResult gram_matrix(const GramSpec& params);

struct CompletenessReport {
  double norm_sq = 0.0;
  double captured = 0.0;       // Σ |⟨f, D̂^m T̂_v ψ̂⟩|²
  double defect = 0.0;         // norm_sq - captured
  double out_of_window = 0.0;  // ‖f‖² outside ⋃_{|m|≤M} B^m E
};

/// Bessel defect of f against the truncated MSF family.
CompletenessReport completeness_defect(const BoxSet& E, const DilationMatrix& A, const ModulatedBoxSum& f, long M,
                                       long V);

}  // namespace wavrep
