#include "wavrep/dual_density.hpp"

#include <cmath>
#include <string>

#include "wavrep/errors.hpp"

namespace wavrep {

namespace {

// w with β = A^{-J} w.
IntVec lift_to_level(const DilationMatrix& A, const QAElement& beta, unsigned long J) {
  if (beta.j > J)
    throw Error(ErrorKind::LevelExceeded,
                "element has denominator exponent " + std::to_string(beta.j) + " above level " + std::to_string(J));
  IntVec w = beta.v;
  for (unsigned long s = beta.j; s < J; ++s) w = A.apply_a(w);
  return w;
}

// Representative of q modulo 2 in (-1, 1].
Rational centered_mod2(const Rational& q) {
  Rational r = q - 2 * Rational(floor_div(q / 2));
  if (r > 1) r -= 2;
  return r;
}

// Lattice vectors ordered by ∞-norm, then lexicographically.
std::vector<IntVec> lattice_shells(std::size_t n, long radius) {
  std::vector<IntVec> out;
  for (long r = 0; r <= radius; ++r) {
    std::vector<long> u(n, -r);
    for (;;) {
      long m = 0;
      for (long c : u) m = std::max(m, std::labs(c));
      if (m == r) out.emplace_back(u.begin(), u.end());
      std::size_t a = n;
      while (a > 0 && u[a - 1] == r) u[--a] = -r;
      if (a == 0) break;
      ++u[a - 1];
    }
  }
  return out;
}

}  // namespace

CharacterTarget CharacterTarget::from_phases(unsigned long level, const RatVec& phases) {
  CharacterTarget t;
  t.level = level;
  for (const auto& p : phases) {
    t.generators.push_back(cis_pi(p));
    t.generator_phases.emplace_back(p);
  }
  return t;
}

CharacterTarget CharacterTarget::from_values(unsigned long level, const std::vector<Complex>& values) {
  CharacterTarget t;
  t.level = level;
  t.generators = values;
  t.generator_phases.assign(values.size(), std::nullopt);
  return t;
}

std::optional<Rational> CharacterTarget::phase(const DilationMatrix& A, const QAElement& beta) const {
  const IntVec w = lift_to_level(A, beta, level);
  Rational total = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!generator_phases[i]) return std::nullopt;
    total += Rational(w[i]) * *generator_phases[i];
  }
  return centered_mod2(total);
}

Complex CharacterTarget::value(const DilationMatrix& A, const QAElement& beta) const {
  if (beta.v.size() != generators.size())
    throw Error(ErrorKind::DimensionMismatch, "character target dimension");
  if (auto p = phase(A, beta)) return cis_pi(*p);
  const IntVec w = lift_to_level(A, beta, level);
  double angle = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    angle = std::remainder(angle + std::remainder(w[i].convert_to<double>() * std::arg(generators[i]), 2 * M_PI), 2 * M_PI);
  return std::polar(1.0, angle);
}

void CharacterTarget::validate(const DilationMatrix& A) const {
  if (generators.size() != A.dim() || generator_phases.size() != A.dim())
    throw Error(ErrorKind::DimensionMismatch, "character target needs one generator value per axis");
  for (const auto& g : generators)
    if (std::fabs(std::abs(g) - 1.0) > 1e-12) throw Error(ErrorKind::InvalidInput, "generator value is not unit modulus");
  for (const auto& c : checks) {
    if (std::fabs(std::abs(c.value) - 1.0) > 1e-12) throw Error(ErrorKind::InvalidInput, "check value is not unit modulus");
    const auto forced = phase(A, c.beta);
    bool consistent;
    if (forced && c.phase)
      consistent = centered_mod2(*c.phase) == *forced;
    else
      consistent = std::abs(value(A, c.beta) - c.value) <= 1e-12;
    if (!consistent)
      throw Error(ErrorKind::InconsistentTarget, "prescribed value at A^-" + std::to_string(c.beta.j) +
                                                     " v disagrees with the value forced by the generators");
  }
}

CharacterApproximation approx_character(const DilationMatrix& A, const CharacterTarget& target,
                                        const std::vector<QAElement>& F, double eps, const std::optional<BoxSet>& E) {
  target.validate(A);
  for (const auto& beta : F) lift_to_level(A, beta, target.level);
  const std::size_t n = A.dim();
  const long J = static_cast<long>(target.level);

  bool exact = true;
  for (const auto& p : target.generator_phases) exact = exact && p.has_value();
  RatVec y0(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (exact) {
      y0[i] = centered_mod2(-*target.generator_phases[i]);
    } else {
      double a = -std::arg(target.generators[i]);
      if (a <= -M_PI) a += 2 * M_PI;
      y0[i] = exact_rational(a);
    }
  }
  const Rational two_pi = exact_rational(2 * M_PI);

  auto build = [&](const IntVec& u) {
    RatVec c = y0;
    for (std::size_t i = 0; i < n; ++i) c[i] += Rational(u[i]) * (exact ? Rational(2) : two_pi);
    const RealPoint base = exact ? RealPoint::pi_units(c) : RealPoint::rationals(c);
    return base.dilated(A, J);
  };
  auto error_of = [&](const RealPoint& y) {
    double err = 0;
    for (const auto& beta : F) err = std::max(err, std::abs(character_eval(A, y, beta) - target.value(A, beta)));
    return err;
  };

  CharacterApproximation best;
  const auto shells = lattice_shells(n, E ? 3 : 0);
  for (const auto& u : shells) {
    CharacterApproximation c;
    c.y = build(u);
    c.error = error_of(c.y);
    c.lattice_shift = u;
    if (E) {
      const ProjectionResult r = resolve_point(c.y, *E, A);
      if (r.status == ProjectionStatus::Resolved) c.membership = r.projection;
    }
    if (&u == &shells.front()) best = c;
    if (c.error < eps && (!E || c.membership)) return c;
  }
  return best;
}

Complex mean_coefficient(const DilationMatrix& A, const QAElement& beta, unsigned long J) {
  if (beta.v.size() != A.dim()) throw Error(ErrorKind::DimensionMismatch, "mean_coefficient: dimension");
  const RatVec theta_value = qa_value(A, theta(A, -static_cast<long>(J), beta));
  double value = 1.0;
  for (const auto& t : theta_value) {
    if (t == 0) continue;
    if (denominator(t) == 1) return 0.0;
    value *= cis_pi(t).imag() / (M_PI * to_double(t));
  }
  return value;
}

}  // namespace wavrep
