#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wavrep/arith.hpp"
#include "wavrep/box_set.hpp"
#include "wavrep/group.hpp"
#include "wavrep/modulated.hpp"

namespace wavrep {

enum class FunctionPath { Exact, Sampled };

std::string to_string(FunctionPath path);

/// c · exp(-|ξ - μ|² / (2s²)).
struct GaussianPacket {
  Complex coef;
  std::vector<double> center;
  double width = 1.0;
};

/// Smooth test function on ℝⁿ with closed-form L² norm.
struct GaussianSum {
  std::size_t dim = 1;
  std::vector<GaussianPacket> packets;

  Complex eval(const std::vector<double>& xi) const;
  double norm_sq() const;
};

/// c · |det B|^{det_power/2} · e^{-i⟨x, β⟩} · 1_R(x) on the slice E × {k}.
struct EZTerm {
  long k = 0;
  Box box;
  Complex coef;
  QAElement beta;
  long det_power = 0;
};

/// Cells of E on which a sampled EZFunction is constant.
struct EZGrid {
  std::vector<Box> cells;
  std::vector<std::vector<double>> corners;  // lower corners, plain coordinates
  std::vector<double> weights;               // Lebesgue measure of each cell
};

/// Splits every box of E into ceil(length·resolution) equal cells per axis.
std::shared_ptr<const EZGrid> make_grid(const BoxSet& E, std::size_t resolution);

/// Element of L²(E × ℤ) supported on the levels [k_min, k_max].
struct EZFunction {
  std::size_t dim = 1;
  FunctionPath path = FunctionPath::Exact;
  long k_min = 0;
  long k_max = -1;
  // Exact path.
  std::vector<EZTerm> terms;
  // Sampled path: values[k - k_min][cell].
  std::shared_ptr<const EZGrid> grid;
  std::vector<std::vector<Complex>> values;
  /// ‖f‖² outside the window (exact path) or on the boundary levels (sampled path).
  double truncation_mass = 0.0;

  bool has_level(long k) const { return k >= k_min && k <= k_max; }
  Complex eval(const DilationMatrix& A, const RealPoint& x, long k) const;
  /// Level-k slice as a function on E (exact path only).
  ModulatedBoxSum slice(const DilationMatrix& A, long k) const;
  double norm_sq(const DilationMatrix& A) const;
  /// ‖F‖² / πⁿ in exact arithmetic; exact path, unmodulated terms only.
  Rational exact_norm_sq(const DilationMatrix& A) const;
};

/// Φ⁻¹F evaluated pointwise through project_point.
struct PullbackFunction {
  std::shared_ptr<const EZFunction> F;
  BoxSet E;
  DilationMatrix A;
  long max_iter = 64;

  Complex eval(const std::vector<double>& xi) const;
};

using SampledFunction = std::variant<ModulatedBoxSum, GaussianSum, PullbackFunction>;

std::size_t dim_of(const SampledFunction& f);
Complex eval(const DilationMatrix& A, const SampledFunction& f, const std::vector<double>& xi);

struct Projection {
  RealPoint point;  // π(ξ) ∈ E
  long p = 0;       // B^p ξ = π(ξ)
};

enum class ProjectionStatus { Resolved, NotCovered, Ambiguous };

struct ProjectionResult {
  ProjectionStatus status = ProjectionStatus::NotCovered;
  Projection projection;
  std::vector<long> levels;  // every j found with Bʲξ ∈ E
};

/// Scans j = 0, -1, 1, -2, 2, ... up to max_iter and records every hit.
ProjectionResult resolve_point(const RealPoint& xi, const BoxSet& E, const DilationMatrix& A, long max_iter = 64);

/// π(ξ) and p(ξ). Throws NotCovered or Ambiguous.
Projection project_point(const RealPoint& xi, const BoxSet& E, const DilationMatrix& A, long max_iter = 64);

struct PhiOptions {
  std::optional<std::pair<long, long>> window;
  bool force_sampled = false;
  /// Sampled path: cells per π-unit length on every axis.
  std::size_t resolution = 64;
  double truncation_tol = 1e-10;
  long max_level = 64;
};

/// Levels k with f·1_{BᵏE} ≠ 0 for a box-supported f (diagonal B). Empty f gives [0, -1].
std::pair<long, long> support_window(const ModulatedBoxSum& f, const BoxSet& E, const DilationMatrix& A,
                                     long max_level = 64);

/// Φf(x, k) = |det B|^{k/2} f(Bᵏx). Throws WindowTooSmall.
EZFunction phi_forward(const SampledFunction& f, const BoxSet& E, const DilationMatrix& A, const PhiOptions& opts = {});

/// Φ⁻¹F(ξ) = |det B|^{p(ξ)/2} F(π(ξ), -p(ξ)); closed form on the exact path, pullback otherwise.
SampledFunction phi_inverse(const EZFunction& F, const BoxSet& E, const DilationMatrix& A);

struct IsometryDefect {
  double value = 0.0;
  FunctionPath path = FunctionPath::Exact;
  /// Set on the exact rational path.
  std::optional<Rational> exact;
  long k_min = 0;
  long k_max = -1;
};

/// |‖Φf‖² - ‖f‖²| / ‖f‖². Throws ZeroFunction.
IsometryDefect isometry_defect(const SampledFunction& f, const BoxSet& E, const DilationMatrix& A,
                               const PhiOptions& opts = {});

/// k ↦ F(x, k) over the window.
std::vector<Complex> evaluate_fiber(const DilationMatrix& A, const EZFunction& F, const RealPoint& x);

/// ‖F - G‖ for two EZFunctions on the same path (and grid, when sampled).
double ez_distance(const DilationMatrix& A, const EZFunction& F, const EZFunction& G);

}  // namespace wavrep
