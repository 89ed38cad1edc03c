#include "wavrep/box_set.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "wavrep/errors.hpp"

namespace wavrep {

namespace {

void require_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got)
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": expected dimension " + std::to_string(expected) + ", got " + std::to_string(got));
}

std::size_t axis_index(const RatVec& breaks, const Rational& value) {
  return static_cast<std::size_t>(std::lower_bound(breaks.begin(), breaks.end(), value) - breaks.begin());
}

// Visits every multi-index in ∏ [first[a], last[a]).
void for_each_index(const std::vector<std::size_t>& first, const std::vector<std::size_t>& last,
                    const std::function<void(const std::vector<std::size_t>&)>& visit) {
  const std::size_t n = first.size();
  for (std::size_t a = 0; a < n; ++a)
    if (first[a] >= last[a]) return;
  std::vector<std::size_t> idx = first;
  while (true) {
    visit(idx);
    std::size_t a = n;
    while (a > 0) {
      --a;
      if (++idx[a] < last[a]) break;
      idx[a] = first[a];
      if (a == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace

// Rectilinear grid over the union of several boxes' endpoints. Cells are
// addressed row-major with axis 0 slowest.
class CellGrid {
 public:
  CellGrid(std::size_t dim, const std::vector<const std::vector<Box>*>& sources) : axes_(dim) {
    for (const auto* list : sources)
      for (const auto& box : *list)
        for (std::size_t a = 0; a < dim; ++a) {
          axes_[a].push_back(box.lo[a]);
          axes_[a].push_back(box.hi[a]);
        }
    for (auto& axis : axes_) {
      std::sort(axis.begin(), axis.end());
      axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    }
    compute_strides();
  }

  std::size_t cells() const { return cell_count_; }
  std::size_t dim() const { return axes_.size(); }
  bool degenerate() const {
    return std::any_of(axes_.begin(), axes_.end(), [](const RatVec& a) { return a.size() < 2; });
  }

  std::size_t flat(const std::vector<std::size_t>& idx) const {
    std::size_t f = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) f += idx[a] * strides_[a];
    return f;
  }

  template <typename Fn>
  void for_cells_of(const Box& box, Fn&& fn) const {
    std::vector<std::size_t> first(dim()), last(dim());
    for (std::size_t a = 0; a < dim(); ++a) {
      first[a] = axis_index(axes_[a], box.lo[a]);
      last[a] = axis_index(axes_[a], box.hi[a]);
    }
    for_each_index(first, last, [&](const std::vector<std::size_t>& idx) { fn(flat(idx)); });
  }

  std::vector<char> mask_of(const std::vector<Box>& boxes) const {
    std::vector<char> mask(cell_count_, 0);
    for (const auto& box : boxes) for_cells_of(box, [&](std::size_t f) { mask[f] = 1; });
    return mask;
  }

  Box cell_box(const std::vector<std::size_t>& first, const std::vector<std::size_t>& last) const {
    Box b;
    for (std::size_t a = 0; a < dim(); ++a) {
      b.lo.push_back(axes_[a][first[a]]);
      b.hi.push_back(axes_[a][last[a]]);
    }
    return b;
  }

  std::vector<std::size_t> unflat(std::size_t f) const {
    std::vector<std::size_t> idx(dim());
    for (std::size_t a = 0; a < dim(); ++a) {
      idx[a] = f / strides_[a];
      f %= strides_[a];
    }
    return idx;
  }

  // Drops empty outer slabs and merges equal neighbouring slabs on every axis,
  // so the surviving breakpoints depend only on the represented set.
  void coarsen(std::vector<char>& mask) {
    for (std::size_t axis = 0; axis < dim(); ++axis) {
      const std::size_t slabs = axes_[axis].size() - 1;
      auto slab_cells = [&](std::size_t s) {
        std::vector<char> out;
        std::vector<std::size_t> first(dim(), 0), last(dim());
        for (std::size_t a = 0; a < dim(); ++a) last[a] = axes_[a].size() - 1;
        first[axis] = s;
        last[axis] = s + 1;
        for_each_index(first, last, [&](const std::vector<std::size_t>& idx) { out.push_back(mask[flat(idx)]); });
        return out;
      };
      std::vector<std::vector<char>> content(slabs);
      for (std::size_t s = 0; s < slabs; ++s) content[s] = slab_cells(s);
      auto is_empty = [](const std::vector<char>& c) { return std::none_of(c.begin(), c.end(), [](char x) { return x; }); };
      std::size_t begin = 0, end = slabs;
      while (begin < end && is_empty(content[begin])) ++begin;
      while (end > begin && is_empty(content[end - 1])) --end;
      if (begin == end) {
        for (auto& ax : axes_) ax.clear();
        mask.clear();
        compute_strides();
        return;
      }
      std::vector<std::size_t> keep;  // representative slab of each merged run
      RatVec breaks{axes_[axis][begin]};
      for (std::size_t s = begin; s < end; ++s) {
        if (!keep.empty() && content[s] == content[keep.back()]) {
          breaks.back() = axes_[axis][s + 1];
          continue;
        }
        keep.push_back(s);
        breaks.push_back(axes_[axis][s + 1]);
      }
      if (keep.size() == slabs) continue;
      std::vector<RatVec> new_axes = axes_;
      new_axes[axis] = breaks;
      CellGrid next(std::move(new_axes));
      std::vector<char> next_mask(next.cells(), 0);
      for (std::size_t f = 0; f < next.cells(); ++f) {
        std::vector<std::size_t> idx = next.unflat(f);
        idx[axis] = keep[idx[axis]];
        next_mask[f] = mask[flat(idx)];
      }
      *this = std::move(next);
      mask = std::move(next_mask);
    }
  }

  std::vector<Box> greedy_boxes(const std::vector<char>& mask) const {
    std::vector<Box> out;
    if (mask.empty()) return out;
    std::vector<char> used(cell_count_, 0);
    const std::size_t n = dim();
    for (std::size_t f = 0; f < cell_count_; ++f) {
      if (!mask[f] || used[f]) continue;
      std::vector<std::size_t> first = unflat(f);
      std::vector<std::size_t> last = first;
      for (auto& l : last) ++l;
      auto slab_free = [&](const std::vector<std::size_t>& lo, const std::vector<std::size_t>& hi) {
        bool ok = true;
        for_each_index(lo, hi, [&](const std::vector<std::size_t>& idx) {
          const std::size_t g = flat(idx);
          if (!mask[g] || used[g]) ok = false;
        });
        return ok;
      };
      for (std::size_t step = 0; step < n; ++step) {
        const std::size_t axis = n - 1 - step;
        while (last[axis] < axes_[axis].size() - 1) {
          std::vector<std::size_t> lo = first, hi = last;
          lo[axis] = last[axis];
          hi[axis] = last[axis] + 1;
          if (!slab_free(lo, hi)) break;
          ++last[axis];
        }
      }
      for_each_index(first, last, [&](const std::vector<std::size_t>& idx) { used[flat(idx)] = 1; });
      out.push_back(cell_box(first, last));
    }
    return out;
  }

  static BoxSet build(std::size_t dim, CellGrid grid, std::vector<char> mask) {
    BoxSet result(dim);
    if (grid.degenerate()) return result;
    grid.coarsen(mask);
    result.boxes_ = grid.greedy_boxes(mask);
    std::sort(result.boxes_.begin(), result.boxes_.end(),
              [](const Box& l, const Box& r) { return std::tie(l.lo, l.hi) < std::tie(r.lo, r.hi); });
    return result;
  }

 private:
  explicit CellGrid(std::vector<RatVec> axes) : axes_(std::move(axes)) { compute_strides(); }

  void compute_strides() {
    strides_.assign(axes_.size(), 1);
    cell_count_ = axes_.empty() ? 0 : 1;
    for (std::size_t a = axes_.size(); a > 0; --a) {
      strides_[a - 1] = cell_count_;
      const std::size_t extent = axes_[a - 1].size() < 2 ? 0 : axes_[a - 1].size() - 1;
      cell_count_ *= extent;
    }
  }

  std::vector<RatVec> axes_;
  std::vector<std::size_t> strides_;
  std::size_t cell_count_ = 0;
};

bool Box::empty() const {
  for (std::size_t a = 0; a < lo.size(); ++a)
    if (!(lo[a] < hi[a])) return true;
  return false;
}

Rational Box::volume() const {
  Rational v = 1;
  for (std::size_t a = 0; a < lo.size(); ++a) v *= hi[a] - lo[a];
  return v;
}

std::optional<Box> intersect(const Box& a, const Box& b) {
  require_dim(a.dim(), b.dim(), "intersect");
  Box out;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    out.lo.push_back(std::max(a.lo[k], b.lo[k]));
    out.hi.push_back(std::min(a.hi[k], b.hi[k]));
  }
  if (out.empty()) return std::nullopt;
  return out;
}

BoxSet BoxSet::normalize(std::size_t dim, const std::vector<Box>& raw) {
  std::vector<Box> boxes;
  for (const auto& b : raw) {
    require_dim(dim, b.lo.size(), "normalize");
    require_dim(dim, b.hi.size(), "normalize");
    if (!b.empty()) boxes.push_back(b);
  }
  CellGrid grid(dim, {&boxes});
  auto mask = grid.mask_of(boxes);
  return CellGrid::build(dim, std::move(grid), std::move(mask));
}

BoxSet BoxSet::cube(std::size_t dim, const Rational& lo, const Rational& hi) {
  return normalize(dim, {Box{RatVec(dim, lo), RatVec(dim, hi)}});
}

Rational BoxSet::measure() const {
  Rational total = 0;
  for (const auto& b : boxes_) total += b.volume();
  return total;
}

Box BoxSet::bounding_box() const {
  if (boxes_.empty()) throw Error(ErrorKind::InvalidInput, "bounding box of an empty set");
  Box bb = boxes_.front();
  for (const auto& b : boxes_)
    for (std::size_t a = 0; a < dim_; ++a) {
      bb.lo[a] = std::min(bb.lo[a], b.lo[a]);
      bb.hi[a] = std::max(bb.hi[a], b.hi[a]);
    }
  return bb;
}

namespace {

template <typename Op>
BoxSet combine(const BoxSet& a, const BoxSet& b, Op op) {
  require_dim(a.dim(), b.dim(), "set operation");
  CellGrid grid(a.dim(), {&a.boxes(), &b.boxes()});
  const auto ma = grid.mask_of(a.boxes());
  const auto mb = grid.mask_of(b.boxes());
  std::vector<char> mask(grid.cells());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = op(ma[i] != 0, mb[i] != 0) ? 1 : 0;
  return CellGrid::build(a.dim(), std::move(grid), std::move(mask));
}

}  // namespace

BoxSet intersect(const BoxSet& a, const BoxSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

BoxSet subtract(const BoxSet& a, const BoxSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}

BoxSet unite(const BoxSet& a, const BoxSet& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

BoxSet translate(const BoxSet& s, const IntVec& v) {
  require_dim(s.dim(), v.size(), "translate");
  std::vector<Box> moved = s.boxes();
  for (auto& b : moved)
    for (std::size_t a = 0; a < s.dim(); ++a) {
      b.lo[a] += 2 * Rational(v[a]);
      b.hi[a] += 2 * Rational(v[a]);
    }
  return BoxSet::normalize(s.dim(), moved);
}

Box dilate_box(const Box& b, const DilationMatrix& A, long j) {
  require_dim(A.dim(), b.dim(), "dilate");
  if (!A.is_diagonal())
    throw Error(ErrorKind::NonDiagonalDilation, "B is not diagonal; boxes do not map to boxes");
  const IntVec diag = A.b_diagonal();
  Box m = b;
  for (std::size_t a = 0; a < b.dim(); ++a) {
    const Rational base(diag[a]);
    Rational scale = 1;
    for (long t = 0; t < std::labs(j); ++t) scale *= base;
    if (j < 0) scale = 1 / scale;
    m.lo[a] = b.lo[a] * scale;
    m.hi[a] = b.hi[a] * scale;
    if (scale < 0) std::swap(m.lo[a], m.hi[a]);
  }
  return m;
}

BoxSet dilate(const BoxSet& s, const DilationMatrix& A, long j) {
  require_dim(A.dim(), s.dim(), "dilate");
  std::vector<Box> mapped;
  mapped.reserve(s.boxes().size());
  for (const auto& b : s.boxes()) mapped.push_back(dilate_box(b, A, j));
  if (mapped.empty() && !A.is_diagonal())
    throw Error(ErrorKind::NonDiagonalDilation, "B is not diagonal; boxes do not map to boxes");
  return BoxSet::normalize(s.dim(), mapped);
}

bool contains(const Box& b, const RealPoint& xi) {
  require_dim(b.dim(), xi.dim(), "contains");
  const RatVec& x = xi.exact();
  if (xi.in_pi_units()) {
    for (std::size_t a = 0; a < b.dim(); ++a)
      if (!(b.lo[a] <= x[a] && x[a] < b.hi[a])) return false;
    return true;
  }
  using HighFloat = boost::multiprecision::cpp_bin_float_50;
  const HighFloat pi = boost::math::constants::pi<HighFloat>();
  auto high = [](const Rational& q) {
    return HighFloat(boost::multiprecision::numerator(q)) / HighFloat(boost::multiprecision::denominator(q));
  };
  for (std::size_t a = 0; a < b.dim(); ++a) {
    const HighFloat u = high(x[a]) / pi;
    if (!(high(b.lo[a]) <= u && u < high(b.hi[a]))) return false;
  }
  return true;
}

bool contains(const BoxSet& s, const RealPoint& xi) {
  require_dim(s.dim(), xi.dim(), "contains");
  for (const auto& b : s.boxes())
    if (contains(b, xi)) return true;
  return false;
}

bool contains(const BoxSet& s, const std::vector<double>& xi) {
  require_dim(s.dim(), xi.size(), "contains");
  for (const auto& b : s.boxes()) {
    bool inside = true;
    for (std::size_t a = 0; a < s.dim() && inside; ++a) {
      const double u = xi[a] / M_PI;
      inside = to_double(b.lo[a]) <= u && u < to_double(b.hi[a]);
    }
    if (inside) return true;
  }
  return false;
}

Box Fragment::translated() const {
  Box t = piece;
  for (std::size_t a = 0; a < t.dim(); ++a) {
    t.lo[a] += 2 * Rational(shift[a]);
    t.hi[a] += 2 * Rational(shift[a]);
  }
  return t;
}

TranslationReduction translation_reduce(const BoxSet& s) {
  const std::size_t n = s.dim();
  TranslationReduction out{{}, BoxSet(n), BoxSet(n)};
  for (const auto& box : s.boxes()) {
    // Per axis: the lattice cells [2v-1, 2v+1) met by [lo, hi).
    std::vector<std::vector<std::pair<Integer, std::pair<Rational, Rational>>>> pieces(n);
    for (std::size_t a = 0; a < n; ++a) {
      Integer v = floor_div((box.lo[a] + 1) / 2);
      for (;; ++v) {
        const Rational cell_lo = 2 * Rational(v) - 1;
        if (!(cell_lo < box.hi[a])) break;
        const Rational lo = std::max(box.lo[a], cell_lo);
        const Rational hi = std::min(box.hi[a], Rational(cell_lo + 2));
        if (lo < hi) pieces[a].push_back({v, {lo, hi}});
      }
    }
    std::vector<std::size_t> first(n, 0), last(n);
    for (std::size_t a = 0; a < n; ++a) last[a] = pieces[a].size();
    for_each_index(first, last, [&](const std::vector<std::size_t>& idx) {
      Fragment f;
      for (std::size_t a = 0; a < n; ++a) {
        const auto& [v, range] = pieces[a][idx[a]];
        f.piece.lo.push_back(range.first);
        f.piece.hi.push_back(range.second);
        f.shift.push_back(-v);
      }
      out.fragments.push_back(std::move(f));
    });
  }
  std::vector<Box> images, overlaps;
  for (const auto& f : out.fragments) images.push_back(f.translated());
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t k = i + 1; k < images.size(); ++k)
      if (auto both = intersect(images[i], images[k])) overlaps.push_back(*both);
  out.overlap = BoxSet::normalize(n, overlaps);
  out.deficit = subtract(BoxSet::cube(n, -1, 1), BoxSet::normalize(n, images));
  return out;
}

namespace {

template <typename Weight>
std::vector<std::pair<Box, Weight>> accumulate_impl(std::size_t dim, const std::vector<std::pair<Box, Weight>>& terms,
                                                    const std::function<bool(const Weight&)>& is_zero) {
  std::vector<Box> boxes;
  for (const auto& [b, w] : terms) {
    require_dim(dim, b.dim(), "accumulate_cells");
    boxes.push_back(b);
  }
  std::vector<std::pair<Box, Weight>> out;
  CellGrid grid(dim, {&boxes});
  if (grid.degenerate()) return out;
  std::vector<Weight> acc(grid.cells(), Weight{});
  std::vector<char> touched(grid.cells(), 0);
  for (const auto& [b, w] : terms) {
    if (b.empty()) continue;
    grid.for_cells_of(b, [&](std::size_t f) {
      acc[f] += w;
      touched[f] = 1;
    });
  }
  for (std::size_t f = 0; f < grid.cells(); ++f) {
    if (!touched[f] || is_zero(acc[f])) continue;
    std::vector<std::size_t> first = grid.unflat(f), last = first;
    for (auto& l : last) ++l;
    out.emplace_back(grid.cell_box(first, last), acc[f]);
  }
  return out;
}

}  // namespace

std::vector<std::pair<Box, ComplexRational>> accumulate_cells(std::size_t dim,
                                                              const std::vector<std::pair<Box, ComplexRational>>& terms) {
  return accumulate_impl<ComplexRational>(dim, terms, [](const ComplexRational& w) { return w.re == 0 && w.im == 0; });
}

std::vector<std::pair<Box, Complex>> accumulate_cells(std::size_t dim, const std::vector<std::pair<Box, Complex>>& terms) {
  return accumulate_impl<Complex>(dim, terms, [](const Complex& w) { return w == Complex(0.0, 0.0); });
}

}  // namespace wavrep
