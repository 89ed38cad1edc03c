#include "wavrep/group.hpp"

#include <algorithm>
#include <string>

#include "wavrep/errors.hpp"

namespace wavrep {

namespace {

using boost::multiprecision::abs;

void require_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got)
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": expected dimension " + std::to_string(expected) + ", got " + std::to_string(got));
}

// Fraction-free Bareiss elimination.
Integer bareiss_det(IntVec m, std::size_t n) {
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap * n + k] == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m[k * n + c], m[swap * n + c]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
    prev = m[k * n + k];
  }
  return sign * m[(n - 1) * n + (n - 1)];
}

IntVec adjugate(const IntVec& a, std::size_t n, const Integer& det) {
  // Gauss–Jordan over the rationals, then adj = det · A⁻¹.
  std::vector<Rational> aug(n * 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i * 2 * n + j] = Rational(a[i * n + j]);
    aug[i * 2 * n + n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (aug[pivot * 2 * n + col] == 0) ++pivot;
    if (pivot != col)
      for (std::size_t c = 0; c < 2 * n; ++c) std::swap(aug[pivot * 2 * n + c], aug[col * 2 * n + c]);
    const Rational inv = 1 / aug[col * 2 * n + col];
    for (std::size_t c = 0; c < 2 * n; ++c) aug[col * 2 * n + c] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || aug[r * 2 * n + col] == 0) continue;
      const Rational f = aug[r * 2 * n + col];
      for (std::size_t c = 0; c < 2 * n; ++c) aug[r * 2 * n + c] -= f * aug[col * 2 * n + c];
    }
  }
  IntVec adj(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational entry = aug[i * 2 * n + n + j] * det;
      adj[i * n + j] = boost::multiprecision::numerator(entry);
    }
  return adj;
}

// Faddeev–LeVerrier; every division is exact over ℤ.
IntVec characteristic_polynomial(const IntVec& a, std::size_t n) {
  IntVec coeffs(n + 1);
  coeffs[n] = 1;
  IntVec m(n * n, Integer(0));
  for (std::size_t k = 1; k <= n; ++k) {
    IntVec next(n * n, Integer(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Integer s = 0;
        for (std::size_t l = 0; l < n; ++l) s += a[i * n + l] * m[l * n + j];
        next[i * n + j] = s;
      }
    for (std::size_t i = 0; i < n; ++i) next[i * n + i] += coeffs[n - k + 1];
    m = std::move(next);
    Integer trace = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) trace += a[i * n + l] * m[l * n + i];
    coeffs[n - k] = -trace / Integer(k);
  }
  return coeffs;
}

IntVec power_apply(const DilationMatrix& A, IntVec v, unsigned long times) {
  for (unsigned long t = 0; t < times; ++t) v = A.apply_a(v);
  return v;
}

}  // namespace

ExpansivityCertificate schur_cohn(IntVec poly) {
  ExpansivityCertificate cert;
  while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
  cert.chain.push_back(poly);
  while (poly.size() > 1) {
    const std::size_t n = poly.size() - 1;
    const Integer lead = poly[n];
    const Integer constant = poly[0];
    if (abs(lead) <= abs(constant)) {
      cert.failing_degree = static_cast<int>(n);
      cert.expansive = false;
      return cert;
    }
    IntVec reduced(n);
    Integer g = 0;
    for (std::size_t k = 0; k < n; ++k) {
      reduced[k] = lead * poly[k + 1] - constant * poly[n - k - 1];
      g = gcd(g, abs(reduced[k]));
    }
    if (g > 1)
      for (auto& c : reduced) c /= g;
    poly = std::move(reduced);
    cert.chain.push_back(poly);
  }
  cert.expansive = true;
  return cert;
}

DilationMatrix validate_dilation(const std::vector<std::vector<long long>>& raw) {
  const std::size_t n = raw.size();
  if (n == 0) throw Error(ErrorKind::InvalidInput, "empty matrix");
  DilationMatrix A;
  A.n_ = n;
  A.a_.reserve(n * n);
  for (const auto& row : raw) {
    if (row.size() != n) throw Error(ErrorKind::InvalidInput, "matrix is not square");
    for (long long e : row) A.a_.emplace_back(e);
  }
  A.det_ = bareiss_det(A.a_, n);
  if (A.det_ == 0) throw Error(ErrorKind::SingularMatrix, "det A = 0");
  A.det_abs_ = abs(A.det_);
  A.adj_ = adjugate(A.a_, n, A.det_);
  A.char_poly_ = characteristic_polynomial(A.a_, n);
  // Roots of λⁿp(1/λ) are the reciprocals of the eigenvalues.
  IntVec reversed(A.char_poly_.rbegin(), A.char_poly_.rend());
  A.certificate_ = schur_cohn(std::move(reversed));
  if (!A.certificate_.expansive)
    throw Error(ErrorKind::NotExpansive, "Schur–Cohn reduction failed at degree " +
                                             std::to_string(A.certificate_.failing_degree) +
                                             " (some eigenvalue has modulus <= 1)");
  return A;
}

bool DilationMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i != j && a_[i * n_ + j] != 0) return false;
  return true;
}

IntVec DilationMatrix::b_diagonal() const {
  IntVec d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = a_[i * n_ + i];
  return d;
}

IntVec DilationMatrix::apply_a(const IntVec& v) const {
  require_dim(n_, v.size(), "apply_a");
  IntVec out(n_, Integer(0));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i] += a_[i * n_ + j] * v[j];
  return out;
}

IntVec DilationMatrix::apply_adj(const IntVec& v) const {
  require_dim(n_, v.size(), "apply_adj");
  IntVec out(n_, Integer(0));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i] += adj_[i * n_ + j] * v[j];
  return out;
}

RatVec DilationMatrix::apply_b_power(const RatVec& x, long j) const {
  require_dim(n_, x.size(), "apply_b_power");
  RatVec cur = x;
  const bool inverse = j < 0;
  for (long step = 0; step < std::labs(j); ++step) {
    RatVec next(n_, Rational(0));
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) {
        // B = Aᵀ and B⁻¹ = adj(A)ᵀ / det.
        const Integer& entry = inverse ? adj_[c * n_ + r] : a_[c * n_ + r];
        if (entry != 0) next[r] += Rational(entry) * cur[c];
      }
    if (inverse)
      for (auto& q : next) q /= det_;
    cur = std::move(next);
  }
  return cur;
}

std::vector<double> DilationMatrix::b_power_double(long j) const {
  std::vector<double> out(n_ * n_);
  for (std::size_t c = 0; c < n_; ++c) {
    RatVec e(n_, Rational(0));
    e[c] = 1;
    const RatVec col = apply_b_power(e, j);
    for (std::size_t r = 0; r < n_; ++r) out[r * n_ + c] = to_double(col[r]);
  }
  return out;
}

std::vector<std::vector<long long>> DilationMatrix::to_rows() const {
  std::vector<std::vector<long long>> rows(n_, std::vector<long long>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) rows[i][j] = a_[i * n_ + j].convert_to<long long>();
  return rows;
}

QAElement qa_canonicalize(const DilationMatrix& A, IntVec v, unsigned long j) {
  require_dim(A.dim(), v.size(), "qa_canonicalize");
  if (std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; })) return {std::move(v), 0};
  while (j > 0) {
    IntVec w = A.apply_adj(v);
    bool divisible = true;
    for (auto& x : w) {
      if (x % A.det() != 0) {
        divisible = false;
        break;
      }
    }
    if (!divisible) break;
    for (auto& x : w) x /= A.det();
    v = std::move(w);
    --j;
  }
  return {std::move(v), j};
}

QAElement qa_zero(const DilationMatrix& A) { return {IntVec(A.dim(), Integer(0)), 0}; }

QAElement qa_integer(const DilationMatrix& A, IntVec v) {
  require_dim(A.dim(), v.size(), "qa_integer");
  return {std::move(v), 0};
}

QAElement qa_add(const DilationMatrix& A, const QAElement& x, const QAElement& y) {
  require_dim(A.dim(), x.v.size(), "qa_add");
  require_dim(A.dim(), y.v.size(), "qa_add");
  const unsigned long level = std::max(x.j, y.j);
  IntVec vx = power_apply(A, x.v, level - x.j);
  const IntVec vy = power_apply(A, y.v, level - y.j);
  for (std::size_t i = 0; i < vx.size(); ++i) vx[i] += vy[i];
  return qa_canonicalize(A, std::move(vx), level);
}

QAElement qa_neg(const QAElement& x) {
  QAElement out = x;
  for (auto& c : out.v) c = -c;
  return out;
}

QAElement qa_sub(const DilationMatrix& A, const QAElement& x, const QAElement& y) { return qa_add(A, x, qa_neg(y)); }

bool qa_is_zero(const QAElement& x) {
  return std::all_of(x.v.begin(), x.v.end(), [](const Integer& c) { return c == 0; });
}

RatVec qa_value(const DilationMatrix& A, const QAElement& x) {
  require_dim(A.dim(), x.v.size(), "qa_value");
  IntVec w = x.v;
  for (unsigned long t = 0; t < x.j; ++t) w = A.apply_adj(w);
  Integer den = boost::multiprecision::pow(A.det(), static_cast<unsigned>(x.j));
  if (den < 0) {
    den = -den;
    for (auto& c : w) c = -c;
  }
  RatVec out;
  out.reserve(w.size());
  for (auto& c : w) out.emplace_back(c, den);
  return out;
}

QAElement theta(const DilationMatrix& A, long m, const QAElement& beta) {
  require_dim(A.dim(), beta.v.size(), "theta");
  const long level = static_cast<long>(beta.j) + m;
  if (level >= 0) return qa_canonicalize(A, beta.v, static_cast<unsigned long>(level));
  return {power_apply(A, beta.v, static_cast<unsigned long>(-level)), 0};
}

GroupElement group_identity(const DilationMatrix& A) { return {qa_zero(A), 0}; }

GroupElement group_mul(const DilationMatrix& A, const GroupElement& g1, const GroupElement& g2) {
  return {qa_add(A, g1.beta, theta(A, g1.m, g2.beta)), g1.m + g2.m};
}

GroupElement group_inv(const DilationMatrix& A, const GroupElement& g) {
  return {qa_neg(theta(A, -g.m, g.beta)), -g.m};
}

QAElement cocycle(const DilationMatrix& A, long k, const GroupElement& g) { return theta(A, k, g.beta); }

RealPoint RealPoint::from_doubles(const std::vector<double>& coords) {
  RatVec exact;
  exact.reserve(coords.size());
  for (double c : coords) exact.push_back(exact_rational(c));
  return RealPoint(std::move(exact), false);
}

std::vector<double> RealPoint::to_double() const {
  std::vector<double> out = wavrep::to_double(coords_);
  if (pi_units_)
    for (auto& c : out) c *= M_PI;
  return out;
}

bool RealPoint::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
}

RealPoint RealPoint::dilated(const DilationMatrix& A, long j) const {
  return RealPoint(A.apply_b_power(coords_, j), pi_units_);
}

Complex character_of_value(const RealPoint& x, const RatVec& beta) {
  require_dim(x.dim(), beta.size(), "character_eval");
  Rational phase = 0;
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (beta[i] != 0) phase += x.exact()[i] * beta[i];
  return x.in_pi_units() ? cis_pi(-phase) : cis(-phase);
}

Complex character_eval(const DilationMatrix& A, const RealPoint& x, const QAElement& beta) {
  require_dim(A.dim(), x.dim(), "character_eval");
  return character_of_value(x, qa_value(A, beta));
}

}  // namespace wavrep
