#include "wavrep/wavelet_set.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "wavrep/errors.hpp"
#include "wavrep/sampling.hpp"

namespace wavrep {

namespace {

struct SampledScales {
  const BoxSet& E;
  std::size_t n;
  long J;
  std::vector<std::vector<double>> inverse_powers;  // B^{-j}, j = -J..J

  SampledScales(const BoxSet& set, const DilationMatrix& A, long range) : E(set), n(A.dim()), J(range) {
    for (long j = -J; j <= J; ++j) inverse_powers.push_back(A.b_power_double(-j));
  }

  std::vector<long> scales_containing(const std::vector<double>& xi) const {
    std::vector<long> hits;
    std::vector<double> y(n);
    for (long j = -J; j <= J; ++j) {
      const auto& m = inverse_powers[static_cast<std::size_t>(j + J)];
      for (std::size_t r = 0; r < n; ++r) {
        double s = 0;
        for (std::size_t c = 0; c < n; ++c) s += m[r * n + c] * xi[c];
        y[r] = s;
      }
      if (contains(E, y)) hits.push_back(j);
    }
    return hits;
  }
};

std::vector<double> annulus_sample(std::size_t n, const TilingParams& p, std::uint64_t index) {
  const double outer = to_double(p.r_out) * M_PI;
  const double inner = to_double(p.r_in) * M_PI;
  std::vector<double> xi(n);
  for (std::uint64_t attempt = 0;; ++attempt) {
    double norm = 0;
    for (std::size_t k = 0; k < n; ++k) {
      xi[k] = (2 * counter_uniform(p.seed, index, attempt * n + k) - 1) * outer;
      norm = std::max(norm, std::abs(xi[k]));
    }
    if (norm >= inner) return xi;
  }
}

// Lowest-index failing sample over [0, N), scanned in contiguous shards.
std::optional<SampleWitness> scan_samples(std::size_t count,
                                          const std::function<std::optional<SampleWitness>(std::uint64_t)>& probe) {
  const std::size_t threads = std::min<std::size_t>(configured_threads(), std::max<std::size_t>(count, 1));
  std::vector<std::optional<SampleWitness>> found(threads);
  auto work = [&](std::size_t shard) {
    const std::size_t begin = count * shard / threads;
    const std::size_t end = count * (shard + 1) / threads;
    for (std::size_t i = begin; i < end; ++i)
      if (auto w = probe(i)) {
        found[shard] = std::move(w);
        return;
      }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t s = 0; s < threads; ++s) pool.emplace_back(work, s);
    for (auto& t : pool) t.join();
  }
  for (auto& w : found)
    if (w) return w;
  return std::nullopt;
}

bool use_exact(const DilationMatrix& A, const TilingParams& p) { return A.is_diagonal() && !p.force_sampled; }

std::string sampled_notice(const DilationMatrix& A, const TilingParams& p) {
  if (!A.is_diagonal()) return "B is not diagonal; exact mode unavailable, downgraded to sampling. ";
  if (p.force_sampled) return "sampled mode requested. ";
  return "";
}

}  // namespace

std::string to_string(CheckMode mode) { return mode == CheckMode::Exact ? "exact" : "sampled"; }

std::string TilingReport::verdict() const {
  if (is_wavelet_set()) return "wavelet set (at tested resolution)";
  if (tiles_under_dilation()) return "tiles under dilation but is not translation congruent: not a wavelet set";
  return "not a wavelet set";
}

BoxSet shannon_set() {
  return BoxSet::normalize(1, {Box{{Rational(-2)}, {Rational(-1)}}, Box{{Rational(1)}, {Rational(2)}}});
}

BoxSet dilation_annulus(const DilationMatrix& A) {
  const BoxSet cube = BoxSet::cube(A.dim(), -1, 1);
  return subtract(dilate(cube, A, 1), cube);
}

BoxSet annulus_set(std::size_t dim, const Rational& r_in, const Rational& r_out) {
  return subtract(BoxSet::cube(dim, -r_out, r_out), BoxSet::cube(dim, -r_in, r_in));
}

ConditionResult check_dilation_disjoint(const BoxSet& E, const DilationMatrix& A, const TilingParams& params) {
  if (E.dim() != A.dim()) throw Error(ErrorKind::DimensionMismatch, "set and matrix dimensions differ");
  ConditionResult result;
  if (E.empty()) {
    result.note = "empty set: vacuously disjoint";
    return result;
  }
  if (use_exact(A, params)) {
    // Bʲ(E) ∩ Bᵏ(E) = Bʲ(E ∩ B^{k-j}(E)), so every pair in [-J, J] reduces to (0, d).
    for (long d = 1; d <= 2 * params.J; ++d) {
      BoxSet overlap = intersect(E, dilate(E, A, d));
      if (!overlap.empty()) {
        result.pass = false;
        result.witness_scales = {0, d};
        result.witness_set = std::move(overlap);
        result.note = "E ∩ B^" + std::to_string(d) + "(E) has positive measure";
        return result;
      }
    }
    result.note = "pairwise disjoint for all -J <= j < k <= J";
    return result;
  }
  result.mode = CheckMode::Sampled;
  const SampledScales scales(E, A, params.J);
  auto witness = scan_samples(params.samples, [&](std::uint64_t i) -> std::optional<SampleWitness> {
    auto xi = annulus_sample(A.dim(), params, i);
    auto hits = scales.scales_containing(xi);
    if (hits.size() < 2) return std::nullopt;
    return SampleWitness{i, std::move(xi), std::move(hits)};
  });
  result.note = sampled_notice(A, params);
  if (witness) {
    result.pass = false;
    result.witness_scales = {witness->scales[0], witness->scales[1]};
    result.witness_sample = std::move(witness);
    result.note += "sample lies in two dilates of E";
  } else {
    result.note += "no sample in two dilates of E";
  }
  return result;
}

ConditionResult check_dilation_cover(const BoxSet& E, const DilationMatrix& A, const TilingParams& params) {
  if (E.dim() != A.dim()) throw Error(ErrorKind::DimensionMismatch, "set and matrix dimensions differ");
  if (params.r_in <= 0) throw Error(ErrorKind::BadAnnulus, "inner radius must be positive");
  if (params.r_out <= params.r_in) throw Error(ErrorKind::BadAnnulus, "outer radius must exceed inner radius");
  ConditionResult result;
  const std::string scope = "coverage certified only on the annulus " + format_rational(params.r_in) + "π <= |ξ|∞ <= " +
                            format_rational(params.r_out) + "π with |j| <= " + std::to_string(params.J);
  if (use_exact(A, params)) {
    BoxSet covered(E.dim());
    for (long j = -params.J; j <= params.J; ++j) covered = unite(covered, dilate(E, A, j));
    BoxSet uncovered = subtract(annulus_set(E.dim(), params.r_in, params.r_out), covered);
    result.pass = uncovered.empty();
    if (!result.pass) result.witness_set = std::move(uncovered);
    result.note = scope;
    return result;
  }
  result.mode = CheckMode::Sampled;
  const SampledScales scales(E, A, params.J);
  auto witness = scan_samples(params.samples, [&](std::uint64_t i) -> std::optional<SampleWitness> {
    auto xi = annulus_sample(A.dim(), params, i);
    if (!scales.scales_containing(xi).empty()) return std::nullopt;
    return SampleWitness{i, std::move(xi), {}};
  });
  result.note = sampled_notice(A, params) + scope;
  if (witness) {
    result.pass = false;
    result.witness_sample = std::move(witness);
  }
  return result;
}

ConditionResult check_translation_congruent(const BoxSet& E) {
  ConditionResult result;
  TranslationReduction reduction = translation_reduce(E);
  result.pass = reduction.congruent();
  result.note = result.pass ? "fragments tile [-π,π)^n exactly" : "fragments overlap or leave a deficit in [-π,π)^n";
  result.overlap = std::move(reduction.overlap);
  result.deficit = std::move(reduction.deficit);
  return result;
}

TilingReport verify_wavelet_set(const BoxSet& E, const DilationMatrix& A, const TilingParams& params) {
  TilingReport report;
  report.params = params;
  report.measure = E.measure();
  report.condition_i = check_dilation_disjoint(E, A, params);
  report.condition_ii = check_dilation_cover(E, A, params);
  report.condition_iii = check_translation_congruent(E);
  return report;
}

}  // namespace wavrep
