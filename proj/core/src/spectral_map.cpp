#include "wavrep/spectral_map.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "wavrep/errors.hpp"

namespace wavrep {

namespace {

double det_pow_half(const DilationMatrix& A, long power) {
  return std::pow(A.det_abs().convert_to<double>(), 0.5 * static_cast<double>(power));
}

Rational det_pow(const DilationMatrix& A, long power) {
  Integer d = boost::multiprecision::pow(A.det_abs(), static_cast<unsigned>(std::labs(power)));
  return power >= 0 ? Rational(d) : Rational(Integer(1), d);
}

void require_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got)
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": expected dimension " + std::to_string(expected) + ", got " + std::to_string(got));
}

std::vector<double> matvec(const std::vector<double>& m, const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) y[i] += m[i * n + j] * x[j];
  return y;
}

bool cell_contains(const Box& b, const std::vector<double>& u) {
  for (std::size_t a = 0; a < b.dim(); ++a)
    if (!(to_double(b.lo[a]) <= u[a] && u[a] < to_double(b.hi[a]))) return false;
  return true;
}

double norm_sq_of(const DilationMatrix& A, const SampledFunction& f) {
  if (const auto* m = std::get_if<ModulatedBoxSum>(&f)) {
    const double n = norm(A, *m);
    return n * n;
  }
  if (const auto* g = std::get_if<GaussianSum>(&f)) return g->norm_sq();
  throw Error(ErrorKind::InvalidInput, "no closed-form norm for a pullback function");
}

// Early-exit bounds for the p(ξ) scan when B is diagonal.
struct ScanBounds {
  std::vector<double> outer;  // |ξ_a| beyond this (π units) is outside E on axis a
  double inner = 0.0;         // ‖ξ‖∞ below this (π units) is outside E
};

ScanBounds scan_bounds(const BoxSet& E) {
  ScanBounds s;
  const Box bb = E.bounding_box();
  for (std::size_t a = 0; a < E.dim(); ++a)
    s.outer.push_back(std::max(std::fabs(to_double(bb.lo[a])), std::fabs(to_double(bb.hi[a]))));
  double inner = INFINITY;
  for (const auto& b : E.boxes()) {
    double d = 0.0;
    for (std::size_t a = 0; a < E.dim(); ++a) {
      const double lo = to_double(b.lo[a]), hi = to_double(b.hi[a]);
      const double axis = (lo <= 0 && 0 <= hi) ? 0.0 : std::min(std::fabs(lo), std::fabs(hi));
      d = std::max(d, axis);
    }
    inner = std::min(inner, d);
  }
  s.inner = inner;
  return s;
}

std::vector<double> pi_unit_coords(const RealPoint& x) {
  if (x.in_pi_units()) return to_double(x.exact());
  std::vector<double> u = x.to_double();
  for (auto& c : u) c /= M_PI;
  return u;
}

}  // namespace

std::string to_string(FunctionPath path) { return path == FunctionPath::Exact ? "exact" : "sampled"; }

Complex GaussianSum::eval(const std::vector<double>& xi) const {
  require_dim(dim, xi.size(), "GaussianSum::eval");
  Complex total = 0;
  for (const auto& p : packets) {
    double r2 = 0;
    for (std::size_t a = 0; a < dim; ++a) r2 += (xi[a] - p.center[a]) * (xi[a] - p.center[a]);
    total += p.coef * std::exp(-r2 / (2 * p.width * p.width));
  }
  return total;
}

double GaussianSum::norm_sq() const {
  Complex total = 0;
  const double half_n = 0.5 * static_cast<double>(dim);
  for (const auto& p : packets)
    for (const auto& q : packets) {
      const double s2 = p.width * p.width + q.width * q.width;
      double d2 = 0;
      for (std::size_t a = 0; a < dim; ++a) d2 += (p.center[a] - q.center[a]) * (p.center[a] - q.center[a]);
      const double gauss = std::pow(2 * M_PI * p.width * p.width * q.width * q.width / s2, half_n) * std::exp(-d2 / (2 * s2));
      total += p.coef * std::conj(q.coef) * gauss;
    }
  return std::max(0.0, total.real());
}

Complex EZFunction::eval(const DilationMatrix& A, const RealPoint& x, long k) const {
  require_dim(dim, x.dim(), "EZFunction::eval");
  if (!has_level(k)) return 0.0;
  if (path == FunctionPath::Exact) {
    Complex total = 0;
    for (const auto& t : terms)
      if (t.k == k && contains(t.box, x))
        total += t.coef * det_pow_half(A, t.det_power) * character_eval(A, x, t.beta);
    return total;
  }
  const std::vector<double> u = pi_unit_coords(x);
  for (std::size_t c = 0; c < grid->cells.size(); ++c)
    if (cell_contains(grid->cells[c], u)) return values[static_cast<std::size_t>(k - k_min)][c];
  return 0.0;
}

ModulatedBoxSum EZFunction::slice(const DilationMatrix& A, long k) const {
  if (path != FunctionPath::Exact) throw Error(ErrorKind::InvalidInput, "slice needs the exact path");
  ModulatedBoxSum s{dim, {}};
  for (const auto& t : terms)
    if (t.k == k) s.terms.push_back({t.coef * det_pow_half(A, t.det_power), t.beta, t.box});
  return s;
}

double EZFunction::norm_sq(const DilationMatrix& A) const {
  double total = 0;
  if (path == FunctionPath::Exact) {
    for (long k = k_min; k <= k_max; ++k) {
      const double n = norm(A, slice(A, k));
      total += n * n;
    }
    return total;
  }
  for (const auto& level : values)
    for (std::size_t c = 0; c < level.size(); ++c) total += std::norm(level[c]) * grid->weights[c];
  return total;
}

Rational EZFunction::exact_norm_sq(const DilationMatrix& A) const {
  if (path != FunctionPath::Exact) throw Error(ErrorKind::InvalidInput, "exact norm needs the exact path");
  std::map<long, std::pair<long, std::vector<std::pair<Box, ComplexRational>>>> levels;
  for (const auto& t : terms) {
    if (!qa_is_zero(t.beta)) throw Error(ErrorKind::InvalidInput, "exact norm needs unmodulated terms");
    auto [it, fresh] = levels.try_emplace(t.k, t.det_power, std::vector<std::pair<Box, ComplexRational>>{});
    if (!fresh && it->second.first != t.det_power)
      throw Error(ErrorKind::InvalidInput, "mixed determinant powers on one level");
    it->second.second.emplace_back(t.box, ComplexRational::from(t.coef));
  }
  Rational total = 0;
  for (const auto& [k, level] : levels) {
    Rational sum = 0;
    for (const auto& [box, w] : accumulate_cells(dim, level.second)) sum += w.norm() * box.volume();
    total += sum * det_pow(A, level.first);
  }
  return total;
}

Complex PullbackFunction::eval(const std::vector<double>& xi) const {
  const ProjectionResult r = resolve_point(RealPoint::from_doubles(xi), E, A, max_iter);
  if (r.status != ProjectionStatus::Resolved) return 0.0;
  const long p = r.projection.p;
  return det_pow_half(A, p) * F->eval(A, r.projection.point, -p);
}

std::size_t dim_of(const SampledFunction& f) {
  return std::visit(
      [](const auto& g) -> std::size_t {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PullbackFunction>)
          return g.E.dim();
        else
          return g.dim;
      },
      f);
}

Complex eval(const DilationMatrix& A, const SampledFunction& f, const std::vector<double>& xi) {
  if (const auto* m = std::get_if<ModulatedBoxSum>(&f)) return m->eval(A, xi);
  if (const auto* g = std::get_if<GaussianSum>(&f)) return g->eval(xi);
  return std::get<PullbackFunction>(f).eval(xi);
}

ProjectionResult resolve_point(const RealPoint& xi, const BoxSet& E, const DilationMatrix& A, long max_iter) {
  require_dim(A.dim(), xi.dim(), "resolve_point");
  require_dim(A.dim(), E.dim(), "resolve_point");
  ProjectionResult result;
  if (xi.is_zero() || E.empty()) return result;

  const bool diagonal = A.is_diagonal();
  const ScanBounds bounds = scan_bounds(E);
  auto escaped_up = [&](const RealPoint& y) {
    const std::vector<double> u = pi_unit_coords(y);
    for (std::size_t a = 0; a < u.size(); ++a)
      if (std::fabs(u[a]) > 2 * bounds.outer[a] + 1) return true;
    return false;
  };
  auto escaped_down = [&](const RealPoint& y) {
    const std::vector<double> u = pi_unit_coords(y);
    double m = 0;
    for (double c : u) m = std::max(m, std::fabs(c));
    return m < 0.5 * bounds.inner;
  };
  auto record = [&](const RealPoint& y, long j) {
    if (!contains(E, y)) return;
    if (result.levels.empty()) result.projection = {y, j};
    result.levels.push_back(j);
  };

  record(xi, 0);
  RealPoint up = xi, down = xi;
  bool up_open = true, down_open = true;
  for (long step = 1; step <= max_iter && (up_open || down_open); ++step) {
    if (down_open) {
      down = down.dilated(A, -1);
      record(down, -step);
      if (diagonal && escaped_down(down)) down_open = false;
    }
    if (up_open) {
      up = up.dilated(A, 1);
      record(up, step);
      if (diagonal && escaped_up(up)) up_open = false;
    }
  }
  if (result.levels.size() == 1)
    result.status = ProjectionStatus::Resolved;
  else if (result.levels.size() > 1)
    result.status = ProjectionStatus::Ambiguous;
  return result;
}

Projection project_point(const RealPoint& xi, const BoxSet& E, const DilationMatrix& A, long max_iter) {
  const ProjectionResult r = resolve_point(xi, E, A, max_iter);
  if (r.status == ProjectionStatus::NotCovered)
    throw Error(ErrorKind::NotCovered, "no j with |j| <= " + std::to_string(max_iter) + " puts B^j xi in E");
  if (r.status == ProjectionStatus::Ambiguous)
    throw Error(ErrorKind::Ambiguous, "B^j xi in E for j = " + std::to_string(r.levels[0]) + " and j = " +
                                          std::to_string(r.levels[1]));
  return r.projection;
}

std::pair<long, long> support_window(const ModulatedBoxSum& f, const BoxSet& E, const DilationMatrix& A,
                                     long max_level) {
  const BoxSet support = f.support();
  long lo = 1, hi = 0;
  if (support.empty()) return {0, -1};
  for (long k = -max_level; k <= max_level; ++k) {
    if (intersect(dilate(E, A, k), support).empty()) continue;
    if (lo > hi) lo = k;
    hi = k;
  }
  if (lo > hi) return {0, -1};
  return {lo, hi};
}

namespace {

EZFunction phi_forward_exact(const ModulatedBoxSum& f, const BoxSet& E, const DilationMatrix& A,
                             const PhiOptions& opts) {
  const auto [k_min, k_max] = opts.window ? *opts.window : support_window(f, E, A, opts.max_level);
  EZFunction F;
  F.dim = f.dim;
  F.path = FunctionPath::Exact;
  F.k_min = k_min;
  F.k_max = k_max;
  BoxSet covered(f.dim);
  for (long k = k_min; k <= k_max; ++k) {
    covered = unite(covered, dilate(E, A, k));
    for (const auto& t : f.terms) {
      const Box pulled = dilate_box(t.box, A, -k);
      const QAElement beta = theta(A, -k, t.beta);
      for (const auto& e : E.boxes())
        if (auto piece = intersect(pulled, e)) F.terms.push_back({k, *piece, t.coef, beta, k});
    }
  }
  const ModulatedBoxSum outside = restrict_to(f, subtract(f.support(), covered));
  double total = 0;
  if (f.unmodulated()) {
    F.truncation_mass = to_double(exact_norm_sq(outside)) * std::pow(M_PI, static_cast<double>(f.dim));
    total = to_double(exact_norm_sq(f)) * std::pow(M_PI, static_cast<double>(f.dim));
  } else {
    const double out = norm(A, outside), all = norm(A, f);
    F.truncation_mass = out * out;
    total = all * all;
  }
  if (F.truncation_mass > opts.truncation_tol * total)
    throw Error(ErrorKind::WindowTooSmall, "mass " + std::to_string(F.truncation_mass) + " lies outside levels [" +
                                               std::to_string(k_min) + ", " + std::to_string(k_max) + "]");
  return F;
}

}  // namespace

std::shared_ptr<const EZGrid> make_grid(const BoxSet& E, std::size_t resolution) {
  auto grid = std::make_shared<EZGrid>();
  const std::size_t n = E.dim();
  const double pi_n = std::pow(M_PI, static_cast<double>(n));
  for (const auto& b : E.boxes()) {
    std::vector<std::size_t> counts(n);
    for (std::size_t a = 0; a < n; ++a) {
      const Rational len = (b.hi[a] - b.lo[a]) * static_cast<long>(resolution);
      Integer c = floor_div(len);
      if (Rational(c) < len) ++c;
      counts[a] = std::max<std::size_t>(1, c.convert_to<std::size_t>());
    }
    std::vector<std::size_t> idx(n, 0);
    bool done = false;
    while (!done) {
      Box cell{RatVec(n), RatVec(n)};
      std::vector<double> corner(n);
      for (std::size_t a = 0; a < n; ++a) {
        const Rational step = (b.hi[a] - b.lo[a]) / static_cast<long>(counts[a]);
        cell.lo[a] = b.lo[a] + step * static_cast<long>(idx[a]);
        cell.hi[a] = cell.lo[a] + step;
        corner[a] = to_double(cell.lo[a]) * M_PI;
      }
      grid->weights.push_back(to_double(cell.volume()) * pi_n);
      grid->corners.push_back(std::move(corner));
      grid->cells.push_back(std::move(cell));
      for (std::size_t a = n;;) {
        if (a == 0) {
          done = true;
          break;
        }
        --a;
        if (++idx[a] < counts[a]) break;
        idx[a] = 0;
      }
    }
  }
  return grid;
}

namespace {

std::vector<Complex> sample_level(const SampledFunction& f, const DilationMatrix& A, const EZGrid& grid, long k) {
  const std::vector<double> Bk = A.b_power_double(k);
  const double scale = det_pow_half(A, k);
  std::vector<Complex> out(grid.cells.size());
  for (std::size_t c = 0; c < grid.cells.size(); ++c) out[c] = scale * eval(A, f, matvec(Bk, grid.corners[c]));
  return out;
}

double level_mass(const std::vector<Complex>& v, const EZGrid& grid) {
  double m = 0;
  for (std::size_t c = 0; c < v.size(); ++c) m += std::norm(v[c]) * grid.weights[c];
  return m;
}

EZFunction phi_forward_sampled(const SampledFunction& f, const BoxSet& E, const DilationMatrix& A,
                               const PhiOptions& opts) {
  EZFunction F;
  F.dim = E.dim();
  F.path = FunctionPath::Sampled;
  auto grid = make_grid(E, opts.resolution);
  F.grid = grid;
  const long L = opts.max_level;
  if (opts.window) {
    F.k_min = opts.window->first;
    F.k_max = opts.window->second;
    for (long k = F.k_min; k <= F.k_max; ++k) F.values.push_back(sample_level(f, A, *grid, k));
    F.truncation_mass = level_mass(sample_level(f, A, *grid, F.k_min - 1), *grid) +
                        level_mass(sample_level(f, A, *grid, F.k_max + 1), *grid);
    return F;
  }
  std::vector<std::vector<Complex>> all;
  std::vector<double> mass;
  double total = 0;
  for (long k = -L; k <= L; ++k) {
    all.push_back(sample_level(f, A, *grid, k));
    mass.push_back(level_mass(all.back(), *grid));
    total += mass.back();
  }
  const double threshold = opts.truncation_tol * total / static_cast<double>(2 * L + 1);
  long lo = 1, hi = 0;
  for (long k = -L; k <= L; ++k)
    if (mass[static_cast<std::size_t>(k + L)] >= threshold && mass[static_cast<std::size_t>(k + L)] > 0) {
      if (lo > hi) lo = k;
      hi = k;
    }
  if (lo > hi) {
    F.k_min = 0;
    F.k_max = -1;
    return F;
  }
  F.k_min = lo;
  F.k_max = hi;
  for (long k = -L; k <= L; ++k) {
    const auto i = static_cast<std::size_t>(k + L);
    if (k < lo || k > hi)
      F.truncation_mass += mass[i];
    else
      F.values.push_back(std::move(all[i]));
  }
  return F;
}

}  // namespace

EZFunction phi_forward(const SampledFunction& f, const BoxSet& E, const DilationMatrix& A, const PhiOptions& opts) {
  require_dim(A.dim(), E.dim(), "phi_forward");
  require_dim(A.dim(), dim_of(f), "phi_forward");
  const auto* m = std::get_if<ModulatedBoxSum>(&f);
  if (m && A.is_diagonal() && !opts.force_sampled) return phi_forward_exact(*m, E, A, opts);
  return phi_forward_sampled(f, E, A, opts);
}

SampledFunction phi_inverse(const EZFunction& F, const BoxSet& E, const DilationMatrix& A) {
  require_dim(A.dim(), F.dim, "phi_inverse");
  if (F.path == FunctionPath::Sampled) return PullbackFunction{std::make_shared<const EZFunction>(F), E, A};
  ModulatedBoxSum f{F.dim, {}};
  for (const auto& t : F.terms) {
    const Complex coef = t.det_power == t.k ? t.coef : t.coef * det_pow_half(A, t.det_power - t.k);
    f.terms.push_back({coef, theta(A, t.k, t.beta), dilate_box(t.box, A, t.k)});
  }
  return f;
}

IsometryDefect isometry_defect(const SampledFunction& f, const BoxSet& E, const DilationMatrix& A,
                               const PhiOptions& opts) {
  const EZFunction F = phi_forward(f, E, A, opts);
  IsometryDefect d;
  d.path = F.path;
  d.k_min = F.k_min;
  d.k_max = F.k_max;
  const auto* m = std::get_if<ModulatedBoxSum>(&f);
  if (F.path == FunctionPath::Exact && m->unmodulated()) {
    const Rational before = exact_norm_sq(*m);
    if (before == 0) throw Error(ErrorKind::ZeroFunction, "isometry defect of the zero function");
    Rational gap = F.exact_norm_sq(A) - before;
    if (gap < 0) gap = -gap;
    d.exact = gap / before;
    d.value = to_double(*d.exact);
    return d;
  }
  const double before = norm_sq_of(A, f);
  if (before == 0) throw Error(ErrorKind::ZeroFunction, "isometry defect of the zero function");
  d.value = std::fabs(F.norm_sq(A) - before) / before;
  return d;
}

std::vector<Complex> evaluate_fiber(const DilationMatrix& A, const EZFunction& F, const RealPoint& x) {
  std::vector<Complex> out;
  for (long k = F.k_min; k <= F.k_max; ++k) out.push_back(F.eval(A, x, k));
  return out;
}

double ez_distance(const DilationMatrix& A, const EZFunction& F, const EZFunction& G) {
  require_dim(F.dim, G.dim, "ez_distance");
  if (F.path != G.path) throw Error(ErrorKind::InvalidInput, "ez_distance across function paths");
  const long lo = std::min(F.k_min, G.k_min), hi = std::max(F.k_max, G.k_max);
  double total = 0;
  if (F.path == FunctionPath::Exact) {
    for (long k = lo; k <= hi; ++k) {
      const double d = distance(A, F.slice(A, k), G.slice(A, k));
      total += d * d;
    }
    return std::sqrt(total);
  }
  if (F.grid->cells.size() != G.grid->cells.size())
    throw Error(ErrorKind::InvalidInput, "ez_distance needs a common grid");
  const std::size_t cells = F.grid->cells.size();
  for (long k = lo; k <= hi; ++k)
    for (std::size_t c = 0; c < cells; ++c) {
      const Complex a = F.has_level(k) ? F.values[static_cast<std::size_t>(k - F.k_min)][c] : 0.0;
      const Complex b = G.has_level(k) ? G.values[static_cast<std::size_t>(k - G.k_min)][c] : 0.0;
      total += std::norm(a - b) * F.grid->weights[c];
    }
  return std::sqrt(total);
}

}  // namespace wavrep
