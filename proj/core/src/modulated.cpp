#include "wavrep/modulated.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavrep/errors.hpp"

namespace wavrep {

namespace {

void require_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got)
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": expected dimension " + std::to_string(expected) + ", got " + std::to_string(got));
}

double det_scale(const DilationMatrix& A, long m) {
  return std::pow(A.det_abs().convert_to<double>(), -0.5 * static_cast<double>(m));
}

}  // namespace

ModulatedBoxSum ModulatedBoxSum::indicator(const DilationMatrix& A, const BoxSet& s, Complex coef) {
  require_dim(A.dim(), s.dim(), "indicator");
  ModulatedBoxSum f{s.dim(), {}};
  for (const auto& b : s.boxes()) f.terms.push_back({coef, qa_zero(A), b});
  return f;
}

bool ModulatedBoxSum::unmodulated() const {
  return std::all_of(terms.begin(), terms.end(), [](const ModulatedTerm& t) { return qa_is_zero(t.beta); });
}

Complex ModulatedBoxSum::eval(const DilationMatrix& A, const RealPoint& xi) const {
  require_dim(dim, xi.dim(), "eval");
  Complex total = 0;
  for (const auto& t : terms) {
    const BoxSet single = BoxSet::normalize(dim, {t.box});
    if (contains(single, xi)) total += t.coef * character_eval(A, xi, t.beta);
  }
  return total;
}

Complex ModulatedBoxSum::eval(const DilationMatrix& A, const std::vector<double>& xi) const {
  require_dim(dim, xi.size(), "eval");
  Complex total = 0;
  for (const auto& t : terms) {
    bool inside = true;
    for (std::size_t a = 0; a < dim && inside; ++a) {
      const double u = xi[a] / M_PI;
      inside = to_double(t.box.lo[a]) <= u && u < to_double(t.box.hi[a]);
    }
    if (!inside) continue;
    double phase = 0;
    if (!qa_is_zero(t.beta)) {
      const RatVec beta = qa_value(A, t.beta);
      for (std::size_t a = 0; a < dim; ++a) phase += to_double(beta[a]) * xi[a];
    }
    total += t.coef * std::polar(1.0, -phase);
  }
  return total;
}

BoxSet ModulatedBoxSum::support() const {
  std::vector<Box> boxes;
  for (const auto& t : terms) boxes.push_back(t.box);
  return BoxSet::normalize(dim, boxes);
}

ModulatedBoxSum scaled(const ModulatedBoxSum& f, Complex factor) {
  ModulatedBoxSum out = f;
  for (auto& t : out.terms) t.coef *= factor;
  return out;
}

ModulatedBoxSum sum(const ModulatedBoxSum& f, const ModulatedBoxSum& g) {
  require_dim(f.dim, g.dim, "sum");
  ModulatedBoxSum out = f;
  out.terms.insert(out.terms.end(), g.terms.begin(), g.terms.end());
  return out;
}

ModulatedBoxSum difference(const ModulatedBoxSum& f, const ModulatedBoxSum& g) { return sum(f, scaled(g, -1.0)); }

ModulatedBoxSum restrict_to(const ModulatedBoxSum& f, const BoxSet& s) {
  require_dim(f.dim, s.dim(), "restrict_to");
  ModulatedBoxSum out{f.dim, {}};
  for (const auto& t : f.terms)
    for (const auto& b : s.boxes())
      if (auto piece = intersect(t.box, b)) out.terms.push_back({t.coef, t.beta, *piece});
  return out;
}

Complex axis_integral(const Rational& theta, const Rational& lo, const Rational& hi) {
  if (theta == 0) return M_PI * to_double(hi - lo);
  // e^{-iπθ(lo+hi)/2} · π(hi−lo) · sinc(πθ(hi−lo)/2)
  const Rational half_turns = theta * (hi - lo) / 2;
  if (boost::multiprecision::denominator(half_turns) == 1) return 0.0;
  return cis_pi(-theta * (lo + hi) / 2) * (M_PI * to_double(hi - lo) * sinc(M_PI * to_double(half_turns)));
}

Complex inner_product(const DilationMatrix& A, const ModulatedBoxSum& f, const ModulatedBoxSum& g) {
  require_dim(f.dim, g.dim, "inner_product");
  std::vector<RatVec> fb, gb;
  for (const auto& t : f.terms) fb.push_back(qa_value(A, t.beta));
  for (const auto& t : g.terms) gb.push_back(qa_value(A, t.beta));
  Complex total = 0;
  for (std::size_t a = 0; a < f.terms.size(); ++a)
    for (std::size_t b = 0; b < g.terms.size(); ++b) {
      const auto overlap = intersect(f.terms[a].box, g.terms[b].box);
      if (!overlap) continue;
      Complex value = f.terms[a].coef * std::conj(g.terms[b].coef);
      for (std::size_t k = 0; k < f.dim; ++k)
        value *= axis_integral(fb[a][k] - gb[b][k], overlap->lo[k], overlap->hi[k]);
      total += value;
    }
  return total;
}

ModulatedBoxSum simplify(const DilationMatrix& A, const ModulatedBoxSum& f) {
  std::vector<QAElement> keys;
  std::vector<std::vector<std::pair<Box, Complex>>> groups;
  for (const auto& t : f.terms) {
    auto it = std::find(keys.begin(), keys.end(), t.beta);
    if (it == keys.end()) {
      keys.push_back(t.beta);
      groups.emplace_back();
      it = keys.end() - 1;
    }
    groups[static_cast<std::size_t>(it - keys.begin())].emplace_back(t.box, t.coef);
  }
  ModulatedBoxSum out{f.dim, {}};
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (auto& [box, coef] : accumulate_cells(f.dim, groups[i])) out.terms.push_back({coef, keys[i], std::move(box)});
  (void)A;
  return out;
}

double norm(const DilationMatrix& A, const ModulatedBoxSum& f) {
  const ModulatedBoxSum s = simplify(A, f);
  return std::sqrt(std::max(0.0, inner_product(A, s, s).real()));
}

double distance(const DilationMatrix& A, const ModulatedBoxSum& f, const ModulatedBoxSum& g) {
  return norm(A, difference(f, g));
}

Rational exact_norm_sq(const ModulatedBoxSum& f) {
  if (!f.unmodulated()) throw Error(ErrorKind::InvalidInput, "exact norm requires an unmodulated function");
  std::vector<std::pair<Box, ComplexRational>> weighted;
  for (const auto& t : f.terms) weighted.emplace_back(t.box, ComplexRational::from(t.coef));
  Rational total = 0;
  for (const auto& [box, w] : accumulate_cells(f.dim, weighted)) total += w.norm() * box.volume();
  return total;
}

ModulatedBoxSum apply_That(const DilationMatrix& A, const QAElement& beta, const ModulatedBoxSum& f) {
  require_dim(f.dim, beta.v.size(), "apply_That");
  ModulatedBoxSum out = f;
  for (auto& t : out.terms) t.beta = qa_add(A, t.beta, beta);
  return out;
}

ModulatedBoxSum apply_Dhat(long m, const ModulatedBoxSum& f, const DilationMatrix& A) {
  require_dim(A.dim(), f.dim, "apply_Dhat");
  if (!A.is_diagonal()) throw Error(ErrorKind::NonDiagonalDilation, "D̂ on boxes needs diagonal B");
  if (m == 0) return f;
  const double factor = det_scale(A, m);
  ModulatedBoxSum out{f.dim, {}};
  for (const auto& t : f.terms) out.terms.push_back({t.coef * factor, theta(A, m, t.beta), dilate_box(t.box, A, m)});
  return out;
}

ModulatedBoxSum apply_What(const DilationMatrix& A, const GroupElement& g, const ModulatedBoxSum& f) {
  return apply_That(A, g.beta, apply_Dhat(g.m, f, A));
}

}  // namespace wavrep
