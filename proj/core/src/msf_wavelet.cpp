#include "wavrep/msf_wavelet.hpp"

#include <cfloat>
#include <cmath>
#include <map>

#include "wavrep/errors.hpp"

namespace wavrep {

namespace {

// Exact key for a rational vector.
std::vector<std::string> key_of(const RatVec& v) {
  std::vector<std::string> k;
  for (const auto& q : v) k.push_back(format_rational(q));
  return k;
}

Complex box_integral(const RatVec& w, const Box& b) {
  Complex value = 1.0;
  for (std::size_t a = 0; a < b.dim(); ++a) value *= axis_integral(w[a], b.lo[a], b.hi[a]);
  return value;
}

}  // namespace

Complex msf_eval(const BoxSet& E, const std::vector<double>& t) {
  if (t.size() != E.dim()) throw Error(ErrorKind::DimensionMismatch, "msf_eval: point dimension");
  const double n = static_cast<double>(E.dim());
  const double mu = to_double(E.measure()) * std::pow(M_PI, n);
  if (mu == 0) throw Error(ErrorKind::ZeroFunction, "msf_eval on a null set");
  Complex total = 0;
  for (const auto& b : E.boxes()) {
    Complex term = 1.0;
    for (std::size_t a = 0; a < E.dim(); ++a) {
      const double lo = to_double(b.lo[a]) * M_PI, hi = to_double(b.hi[a]) * M_PI;
      term *= std::polar((hi - lo) * sinc((hi - lo) * t[a] / 2), (hi + lo) * t[a] / 2);
    }
    total += term;
  }
  return total / (std::pow(2 * M_PI, n / 2) * std::sqrt(mu));
}

Complex msf_eval(const BoxSet& E, const RealPoint& t) {
  return msf_eval(E, t.to_double());
}

ModulatedBoxSum msf_hat(const DilationMatrix& A, const BoxSet& E) {
  const double mu = to_double(E.measure()) * std::pow(M_PI, static_cast<double>(E.dim()));
  if (mu == 0) throw Error(ErrorKind::ZeroFunction, "wavelet set of measure zero");
  return ModulatedBoxSum::indicator(A, E, 1.0 / std::sqrt(mu));
}

std::vector<GramIndex> gram_indices(std::size_t dim, long M, long V) {
  std::vector<GramIndex> out;
  for (long m = -M; m <= M; ++m) {
    std::vector<long> v(dim, -V);
    for (;;) {
      GramIndex g{m, IntVec(v.begin(), v.end())};
      out.push_back(std::move(g));
      std::size_t a = dim;
      while (a > 0 && v[a - 1] == V) v[--a] = -V;
      if (a == 0) break;
      ++v[a - 1];
    }
  }
  return out;
}

GramResult gram_matrix(const GramSpec& params) {
  const DilationMatrix& A = params.A;
  const BoxSet& E = params.E;
  if (A.dim() != E.dim()) throw Error(ErrorKind::DimensionMismatch, "gram_matrix: set and matrix dimensions");
  GramResult r;
  r.index = gram_indices(E.dim(), params.M, params.V);
  const std::size_t N = r.index.size();
  r.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  const ModulatedBoxSum psi = msf_hat(A, E);
  const double mu = to_double(E.measure()) * std::pow(M_PI, static_cast<double>(E.dim()));

  if (A.is_diagonal()) {
    r.path = FunctionPath::Exact;
    std::vector<ModulatedBoxSum> family;
    for (const auto& g : r.index) family.push_back(apply_Dhat(g.m, apply_That(A, qa_integer(A, g.v), psi), A));
    std::map<std::pair<long, long>, bool> disjoint;
    for (long m = -params.M; m <= params.M; ++m)
      for (long m2 = -params.M; m2 <= params.M; ++m2)
        disjoint[{m, m2}] = m != m2 && intersect(dilate(E, A, m), dilate(E, A, m2)).empty();
    std::map<std::pair<long, std::vector<long>>, Complex> same_scale;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i; j < N; ++j) {
        const GramIndex &gi = r.index[i], &gj = r.index[j];
        Complex value = 0.0;
        if (gi.m == gj.m) {
          std::vector<long> w;
          for (std::size_t a = 0; a < E.dim(); ++a) w.push_back(static_cast<long>(gi.v[a] - gj.v[a]));
          auto key = std::make_pair(gi.m, w);
          auto it = same_scale.find(key);
          if (it == same_scale.end()) it = same_scale.emplace(key, inner_product(A, family[i], family[j])).first;
          value = it->second;
        } else if (!disjoint[{gi.m, gj.m}]) {
          value = inner_product(A, family[i], family[j]);
        }
        r.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
        r.matrix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = std::conj(value);
      }
  } else {
    // ⟨D̂^m T̂_v ψ̂, D̂^{m'} T̂_{v'} ψ̂⟩ = |det|^{d/2} μ⁻¹ ∫_{E ∩ B^{-d}E} e^{-i⟨v - A^d v', η⟩} dη, d = m - m'.
    // The overlap E ∩ B^{-d}E is resolved on a midpoint grid; each cell integrates in closed form.
    r.path = FunctionPath::Sampled;
    r.warning = "quadrature: overlap masks sampled on a grid of " + std::to_string(params.quadrature_resolution) +
                " cells per pi";
    const auto grid = make_grid(E, params.quadrature_resolution);
    std::map<long, std::vector<Box>> masks;
    for (long d = -2 * params.M; d <= 2 * params.M; ++d) {
      if (d == 0) {
        masks[d] = E.boxes();
        continue;
      }
      const std::vector<double> Bd = A.b_power_double(d);
      std::vector<Box> mask;
      for (const auto& cell : grid->cells) {
        std::vector<double> mid(E.dim()), img(E.dim(), 0.0);
        for (std::size_t a = 0; a < E.dim(); ++a) mid[a] = 0.5 * (to_double(cell.lo[a]) + to_double(cell.hi[a])) * M_PI;
        for (std::size_t a = 0; a < E.dim(); ++a)
          for (std::size_t b = 0; b < E.dim(); ++b) img[a] += Bd[a * E.dim() + b] * mid[b];
        if (contains(E, img)) mask.push_back(cell);
      }
      masks[d] = std::move(mask);
    }
    std::map<std::pair<long, std::vector<std::string>>, Complex> cache;
    const double det = A.det_abs().convert_to<double>();
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i; j < N; ++j) {
        const GramIndex &gi = r.index[i], &gj = r.index[j];
        const long d = gi.m - gj.m;
        const std::vector<Box>& mask = masks[d];
        Complex value = 0.0;
        if (!mask.empty()) {
          const RatVec shifted = qa_value(A, theta(A, -d, qa_integer(A, gj.v)));
          RatVec w;
          for (std::size_t a = 0; a < E.dim(); ++a) w.push_back(Rational(gi.v[a]) - shifted[a]);
          auto key = std::make_pair(d, key_of(w));
          auto it = cache.find(key);
          if (it == cache.end()) {
            Complex s = 0.0;
            for (const auto& b : mask) s += box_integral(w, b);
            it = cache.emplace(key, s).first;
          }
          value = it->second * std::pow(det, 0.5 * static_cast<double>(d)) / mu;
        }
        r.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
        r.matrix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = std::conj(value);
      }
  }

  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const Complex entry = r.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      const double dev = std::abs(entry - (i == j ? Complex(1.0) : Complex(0.0)));
      if (dev > r.max_deviation) {
        r.max_deviation = dev;
        r.worst = {i, j};
      }
      if (r.index[i].m != r.index[j].m && std::abs(entry) > r.max_cross_scale) {
        r.max_cross_scale = std::abs(entry);
        r.cross_scale_witness = std::make_pair(i, j);
      }
    }
  r.within_tolerance = r.max_deviation <= params.tolerance;
  if (!r.within_tolerance) {
    if (!r.warning.empty()) r.warning += "; ";
    r.warning += "NotAWaveletSet: deviation " + std::to_string(r.max_deviation) + " exceeds tolerance";
  }
  return r;
}

CompletenessReport completeness_defect(const BoxSet& E, const DilationMatrix& A, const ModulatedBoxSum& f, long M,
                                       long V) {
  if (!A.is_diagonal()) throw Error(ErrorKind::NonDiagonalDilation, "completeness_defect needs the exact path");
  CompletenessReport r;
  const double nf = norm(A, f);
  r.norm_sq = nf * nf;
  const ModulatedBoxSum psi = msf_hat(A, E);
  BoxSet covered(E.dim());
  for (long m = -M; m <= M; ++m) covered = unite(covered, dilate(E, A, m));
  const double out = norm(A, restrict_to(f, subtract(f.support(), covered)));
  r.out_of_window = out * out;
  for (const auto& g : gram_indices(E.dim(), M, V)) {
    const ModulatedBoxSum phi = apply_Dhat(g.m, apply_That(A, qa_integer(A, g.v), psi), A);
    r.captured += std::norm(inner_product(A, f, phi));
  }
  r.defect = r.norm_sq - r.captured;
  if (std::fabs(r.defect) <= 16 * DBL_EPSILON * r.norm_sq) r.defect = 0.0;
  return r;
}

}  // namespace wavrep
