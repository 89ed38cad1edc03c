#include "wavrep/rep_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavrep/errors.hpp"
#include "wavrep/sampling.hpp"

namespace wavrep {

namespace {

// Draws from one (seed, index) counter stream in a fixed order.
class Draws {
 public:
  Draws(std::uint64_t seed, std::uint64_t index) : seed_(seed), index_(index) {}
  double uniform() { return counter_uniform(seed_, index_, stream_++); }
  long integer(long lo, long hi) {
    const long span = hi - lo + 1;
    return std::min(hi, lo + static_cast<long>(uniform() * static_cast<double>(span)));
  }

 private:
  std::uint64_t seed_, index_, stream_ = 0;
};

QAElement random_qa(const DilationMatrix& A, Draws& d, unsigned long max_j, long max_v) {
  IntVec v(A.dim());
  for (auto& c : v) c = d.integer(-max_v, max_v);
  const auto j = static_cast<unsigned long>(d.integer(0, static_cast<long>(max_j)));
  return qa_canonicalize(A, v, j);
}

Complex det_scale(const DilationMatrix& A, long power) {
  return std::pow(A.det_abs().convert_to<double>(), 0.5 * static_cast<double>(power));
}

std::pair<long, long> merge_windows(std::pair<long, long> a, std::pair<long, long> b) {
  if (a.first > a.second) return b;
  if (b.first > b.second) return a;
  return {std::min(a.first, b.first), std::max(a.second, b.second)};
}

}  // namespace

ModulatedBoxSum random_modulated(const DilationMatrix& A, std::uint64_t seed, std::uint64_t index,
                                 const RandomShape& shape) {
  Draws d(seed, index);
  const std::size_t n = A.dim();
  ModulatedBoxSum f{n, {}};
  const long terms = d.integer(1, static_cast<long>(shape.max_terms));
  const long inner = static_cast<long>(floor_div(shape.inner * shape.denominator));
  const long outer = static_cast<long>(floor_div(shape.outer * shape.denominator));
  for (long t = 0; t < terms; ++t) {
    Box box{RatVec(n), RatVec(n)};
    for (std::size_t a = 0; a < n; ++a) {
      const long lo = d.integer(inner, outer - 1);
      const long hi = d.integer(lo + 1, outer);
      if (d.uniform() < 0.5) {
        box.lo[a] = Rational(lo, shape.denominator);
        box.hi[a] = Rational(hi, shape.denominator);
      } else {
        box.lo[a] = Rational(-hi, shape.denominator);
        box.hi[a] = Rational(-lo, shape.denominator);
      }
    }
    const Complex coef(2 * d.uniform() - 1, 2 * d.uniform() - 1);
    const QAElement beta = shape.modulated ? random_qa(A, d, shape.max_j, shape.max_v) : qa_zero(A);
    f.terms.push_back({coef, beta, box});
  }
  return f;
}

GroupElement random_group_element(const DilationMatrix& A, std::uint64_t seed, std::uint64_t index, long max_m,
                                  unsigned long max_j, long max_v) {
  Draws d(seed, index);
  GroupElement g;
  g.beta = random_qa(A, d, max_j, max_v);
  g.m = d.integer(-max_m, max_m);
  return g;
}

Deviation commutation_check(const DilationMatrix& A, std::size_t axis, std::size_t trials, std::uint64_t seed) {
  if (axis == 0 || axis > A.dim())
    throw Error(ErrorKind::InvalidInput, "axis " + std::to_string(axis) + " outside 1.." + std::to_string(A.dim()));
  IntVec e(A.dim(), 0);
  e[axis - 1] = 1;
  const QAElement te = qa_integer(A, e);
  const QAElement tae = qa_integer(A, A.apply_a(e));
  Deviation worst;
  for (std::size_t t = 0; t < trials; ++t) {
    const ModulatedBoxSum f = random_modulated(A, seed, t);
    const ModulatedBoxSum lhs = apply_That(A, te, apply_Dhat(1, f, A));
    const ModulatedBoxSum rhs = apply_Dhat(1, apply_That(A, tae, f), A);
    const double d = distance(A, lhs, rhs);
    if (d > worst.value || t == 0) worst = {d, t};
  }
  return worst;
}

EZFunction wtilde_apply(const DilationMatrix& A, const GroupElement& g, const EZFunction& F,
                        std::optional<std::pair<long, long>> window, double tol) {
  if (g.beta.v.size() != F.dim) throw Error(ErrorKind::DimensionMismatch, "wtilde_apply: group element dimension");
  EZFunction out = F;
  out.k_min = F.k_min + g.m;
  out.k_max = F.k_max + g.m;
  const bool modulated = !qa_is_zero(g.beta);
  if (F.path == FunctionPath::Exact) {
    for (auto& t : out.terms) {
      t.k += g.m;
      if (modulated) t.beta = qa_add(A, t.beta, theta(A, -t.k, g.beta));
    }
  } else if (modulated) {
    std::vector<RealPoint> corners;
    for (const auto& c : F.grid->corners) corners.push_back(RealPoint::from_doubles(c));
    for (long k = out.k_min; k <= out.k_max; ++k) {
      const RatVec gamma = qa_value(A, theta(A, -k, g.beta));
      auto& level = out.values[static_cast<std::size_t>(k - out.k_min)];
      for (std::size_t c = 0; c < level.size(); ++c) level[c] *= character_of_value(corners[c], gamma);
    }
  }
  if (!window) return out;

  const auto [lo, hi] = *window;
  const double total = out.norm_sq(A);
  EZFunction clipped = out;
  clipped.k_min = lo;
  clipped.k_max = hi;
  if (out.path == FunctionPath::Exact) {
    clipped.terms.clear();
    for (const auto& t : out.terms)
      if (t.k >= lo && t.k <= hi) clipped.terms.push_back(t);
  } else {
    clipped.values.clear();
    for (long k = lo; k <= hi; ++k)
      clipped.values.push_back(out.has_level(k) ? out.values[static_cast<std::size_t>(k - out.k_min)]
                                                : std::vector<Complex>(out.grid->cells.size(), 0.0));
  }
  const double lost = std::max(0.0, total - clipped.norm_sq(A));
  if (lost > tol * total)
    throw Error(ErrorKind::WindowTooSmall,
                "shifted function loses mass " + std::to_string(lost) + " outside [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  clipped.truncation_mass += lost;
  return clipped;
}

double conjugation_check(const DilationMatrix& A, const BoxSet& E, const GroupElement& g, const ModulatedBoxSum& f) {
  const EZFunction lhs = phi_forward(apply_What(A, g, f), E, A);
  const EZFunction rhs = wtilde_apply(A, g, phi_forward(f, E, A));
  return ez_distance(A, lhs, rhs);
}

Eigen::MatrixXcd FiberMatrix::dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (long k = -K; k <= K; ++k) {
    const long col = k - shift;
    if (col < -K || col > K) continue;
    M(k + K, col + K) = phases[static_cast<std::size_t>(k + K)];
  }
  return M;
}

std::vector<Complex> FiberMatrix::apply(const std::vector<Complex>& g) const {
  if (g.size() != size()) throw Error(ErrorKind::DimensionMismatch, "FiberMatrix::apply: vector length");
  std::vector<Complex> out(size(), 0.0);
  for (long k = -K; k <= K; ++k) {
    const long col = k - shift;
    if (col < -K || col > K) continue;
    out[static_cast<std::size_t>(k + K)] = phases[static_cast<std::size_t>(k + K)] * g[static_cast<std::size_t>(col + K)];
  }
  return out;
}

FiberMatrix fiber_matrix(const DilationMatrix& A, const RealPoint& x, const GroupElement& g, long K) {
  FiberMatrix M{x, K, g.m, {}};
  for (long k = -K; k <= K; ++k) M.phases.push_back(character_eval(A, x, theta(A, -k, g.beta)));
  return M;
}

FiberMatrix induced_matrix(const DilationMatrix& A, const RealPoint& x, const GroupElement& g, long K) {
  FiberMatrix M{x, K, -g.m, {}};
  for (long k = -K; k <= K; ++k) M.phases.push_back(character_eval(A, x, theta(A, k, g.beta)));
  return M;
}

double interior_deviation(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y, long K, long delta) {
  const long r = K - delta;
  if (r < 0) throw Error(ErrorKind::WindowTooSmall, "empty interior block");
  const auto lo = static_cast<Eigen::Index>(K - r), len = static_cast<Eigen::Index>(2 * r + 1);
  return (X.block(lo, lo, len, len) - Y.block(lo, lo, len, len)).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd shift_matrix(long K, long d) {
  const auto n = static_cast<Eigen::Index>(2 * K + 1);
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
  for (long k = -K; k <= K; ++k)
    if (k - d >= -K && k - d <= K) S(k + K, k - d + K) = 1.0;
  return S;
}

Eigen::MatrixXcd flip_matrix(long K) {
  const auto n = static_cast<Eigen::Index>(2 * K + 1);
  Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(n, n);
  for (long k = -K; k <= K; ++k) V(k + K, -k + K) = 1.0;
  return V;
}

double v_intertwiner_check(const DilationMatrix& A, const RealPoint& x, const GroupElement& g, long K) {
  const Eigen::MatrixXcd V = flip_matrix(K);
  const Eigen::MatrixXcd lhs = V * fiber_matrix(A, x, g, K).dense() * V;
  return interior_deviation(lhs, induced_matrix(A, x, g, K).dense(), K, std::labs(g.m));
}

double orbit_deviation(const DilationMatrix& A, const RealPoint& x, long m, const GroupElement& g, long K, long offset) {
  const RealPoint y = x.dilated(A, m);
  const Eigen::MatrixXcd lhs =
      shift_matrix(K, -offset) * induced_matrix(A, y, g, K).dense() * shift_matrix(K, offset);
  return interior_deviation(lhs, induced_matrix(A, x, g, K).dense(), K, std::labs(offset) + std::labs(g.m));
}

double orbit_equivalence_check(const DilationMatrix& A, const RealPoint& x, long m, const GroupElement& g, long K) {
  if (K <= std::labs(m) + std::labs(g.m))
    throw Error(ErrorKind::WindowTooSmall, "K must exceed |m| + |g.m|");
  return orbit_deviation(A, x, m, g, K, m);
}

IrreducibilityResult irreducibility_scan(const DilationMatrix& A, const RealPoint& x, long M) {
  RealPoint down = x, up = x;
  for (long m = 1; m <= M; ++m) {
    down = down.dilated(A, -1);
    if (down == x) return {false, m};
    up = up.dilated(A, 1);
    if (up == x) return {false, -m};
  }
  return {true, std::nullopt};
}

ModulatedBoxSum multiply(const StepFunction& g, const ModulatedBoxSum& f) {
  ModulatedBoxSum out{f.dim, {}};
  for (const auto& t : f.terms)
    for (const auto& [box, value] : g)
      if (auto piece = intersect(t.box, box)) out.terms.push_back({t.coef * value, t.beta, *piece});
  return out;
}

StepFunction invariant_extension(const DilationMatrix& A, const BoxSet& E, const StepFunction& g0, long j_min,
                                 long j_max) {
  StepFunction on_E;
  for (const auto& [box, value] : g0)
    for (const auto& e : E.boxes())
      if (auto piece = intersect(box, e)) on_E.emplace_back(*piece, value);
  StepFunction g;
  for (long j = j_min; j <= j_max; ++j)
    for (const auto& [box, value] : on_E) g.emplace_back(dilate_box(box, A, j), value);
  return g;
}

CommutantReport commutant_check(const DilationMatrix& A, const BoxSet& E, const StepFunction& g0, std::size_t trials,
                                std::uint64_t seed, std::optional<StepFunction> noninvariant) {
  CommutantReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    const ModulatedBoxSum f = random_modulated(A, seed, t);
    const ModulatedBoxSum df = apply_Dhat(1, f, A);
    auto [lo, hi] = merge_windows(support_window(f, E, A), support_window(df, E, A));
    const StepFunction g = invariant_extension(A, E, g0, lo, hi);
    double dev = distance(A, multiply(g, df), apply_Dhat(1, multiply(g, f), A));
    Draws d(seed ^ 0x5eedULL, t);
    IntVec v(A.dim());
    for (auto& c : v) c = d.integer(-4, 4);
    const QAElement tv = qa_integer(A, v);
    dev = std::max(dev, distance(A, multiply(g, apply_That(A, tv, f)), apply_That(A, tv, multiply(g, f))));
    if (dev > report.invariant_deviation || t == 0) {
      report.invariant_deviation = dev;
      report.invariant_witness = t;
    }
  }

  StepFunction h;
  if (noninvariant) {
    h = *noninvariant;
  } else {
    for (const auto& [box, value] : g0)
      for (const auto& e : E.boxes())
        if (auto piece = intersect(box, e)) h.emplace_back(*piece, value);
  }
  for (const auto& e : E.boxes())
    for (long s = -1; s <= 1; ++s) {
      ModulatedBoxSum probe{A.dim(), {{det_scale(A, 0), qa_zero(A), dilate_box(e, A, s)}}};
      probe = scaled(probe, 1.0 / norm(A, probe));
      const double c = distance(A, multiply(h, apply_Dhat(1, probe, A)), apply_Dhat(1, multiply(h, probe), A));
      if (c > report.noninvariant_commutator) {
        report.noninvariant_commutator = c;
        report.witness = probe;
      }
    }
  return report;
}

}  // namespace wavrep
