#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "wavrep/arith.hpp"
#include "wavrep/group.hpp"

namespace wavrep {

/// Half-open box ∏ₖ [loₖπ, hiₖπ); coordinates are exact rationals in π units.
struct Box {
  RatVec lo;
  RatVec hi;

  std::size_t dim() const { return lo.size(); }
  bool empty() const;
  /// Volume as a rational multiple of πⁿ.
  Rational volume() const;

  friend bool operator==(const Box&, const Box&) = default;
};

std::optional<Box> intersect(const Box& a, const Box& b);

/// Finite disjoint union of boxes in canonical form: the coarsest grid that
/// represents the set, boxes grown greedily along the last axis first, listed
/// by lexicographic `lo`. Two BoxSets are equal iff their indicators agree.
class BoxSet {
 public:
  explicit BoxSet(std::size_t dim = 1) : dim_(dim) {}

  static BoxSet normalize(std::size_t dim, const std::vector<Box>& raw);
  static BoxSet cube(std::size_t dim, const Rational& lo, const Rational& hi);

  std::size_t dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }
  /// Lebesgue measure as a rational multiple of πⁿ.
  Rational measure() const;
  /// Smallest box containing the set; requires !empty().
  Box bounding_box() const;

  friend bool operator==(const BoxSet&, const BoxSet&) = default;

 private:
  friend class CellGrid;
  std::size_t dim_;
  std::vector<Box> boxes_;
};

BoxSet intersect(const BoxSet& a, const BoxSet& b);
BoxSet subtract(const BoxSet& a, const BoxSet& b);
BoxSet unite(const BoxSet& a, const BoxSet& b);

/// S + 2πv.
BoxSet translate(const BoxSet& s, const IntVec& v);

/// BʲS for diagonal B (or n = 1). Negative diagonal entries reflect a box;
/// the image is stored half-open again, which differs only on a null set.
BoxSet dilate(const BoxSet& s, const DilationMatrix& A, long j);
Box dilate_box(const Box& b, const DilationMatrix& A, long j);

bool contains(const Box& b, const RealPoint& xi);
bool contains(const BoxSet& s, const RealPoint& xi);
/// Membership for a floating point ξ (plain coordinates, not π units).
bool contains(const BoxSet& s, const std::vector<double>& xi);

struct Fragment {
  Box piece;
  IntVec shift;  // piece + 2π·shift ⊂ [-π, π)ⁿ
  Box translated() const;
};

struct TranslationReduction {
  std::vector<Fragment> fragments;
  BoxSet overlap;
  BoxSet deficit;
  bool congruent() const { return overlap.empty() && deficit.empty(); }
};

/// Cuts S along the lattice cells of 2πℤⁿ and folds every piece into [-π, π)ⁿ.
TranslationReduction translation_reduce(const BoxSet& s);

/// Refines overlapping weighted boxes into disjoint cells carrying summed
/// weights; cells with zero total are dropped.
std::vector<std::pair<Box, ComplexRational>> accumulate_cells(std::size_t dim,
                                                              const std::vector<std::pair<Box, ComplexRational>>& terms);
std::vector<std::pair<Box, Complex>> accumulate_cells(std::size_t dim, const std::vector<std::pair<Box, Complex>>& terms);

}  // namespace wavrep
