#include "wavrep_cli/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "wavrep/dual_density.hpp"
#include "wavrep/errors.hpp"
#include "wavrep/msf_wavelet.hpp"
#include "wavrep/rep_engine.hpp"
#include "wavrep/spectral_map.hpp"
#include "wavrep/wavelet_set.hpp"
#include "wavrep_cli/json_io.hpp"

namespace wavrep::cli {

namespace {

struct Options {
  std::string set, dilation, output, annulus, function, window, point, group, targets, beta, t, grid, csv;
  long J = 8;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  bool sampled = false;
  long M = 2;
  long V = 8;
  double tolerance = 1e-12;
  std::size_t resolution = 64;
  bool summary_only = false;
  long K = 32;
  long orbit_m = 1;
  long irreducibility_M = 16;
  double eps = 1e-10;
  long J_max = 8;
};

std::pair<std::string, std::string> split_pair(const std::string& s, const char* flag) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw InputError(std::string(flag) + ": expected 'a,b'");
  return {s.substr(0, comma), s.substr(comma + 1)};
}

Rational rational_arg(const std::string& s, const char* flag) {
  try {
    return parse_rational(s);
  } catch (const Error& e) {
    throw InputError(std::string(flag) + ": " + e.what());
  }
}

const char* kind_name(ErrorKind k) { return to_string(k).data(); }

Json error_json(const Error& e) { return Json{{"kind", kind_name(e.kind())}, {"message", e.what()}}; }

struct Outcome {
  Json report;
  bool pass = true;
};

Outcome verify_set(const Options& o) {
  const BoxSet E = set_from_json(load_json_arg(o.set));
  const DilationMatrix A = matrix_from_arg(o.dilation);
  if (A.dim() != E.dim()) throw InputError("set and dilation dimensions differ");
  TilingParams p;
  p.J = o.J;
  p.samples = o.samples;
  p.seed = o.seed;
  p.force_sampled = o.sampled;
  if (!o.annulus.empty()) {
    const auto [lo, hi] = split_pair(o.annulus, "--annulus");
    p.r_in = rational_arg(lo, "--annulus");
    p.r_out = rational_arg(hi, "--annulus");
    if (p.r_in <= 0 || p.r_out <= p.r_in) throw InputError("--annulus: need 0 < r_in < r_out");
  }
  const TilingReport r = verify_wavelet_set(E, A, p);
  return {Json{{"command", "verify-set"}, {"set", to_json(E)}, {"report", to_json(r)}}, r.is_wavelet_set()};
}

Outcome gram(const Options& o) {
  GramSpec params{set_from_json(load_json_arg(o.set)), matrix_from_arg(o.dilation), o.M, o.V, o.tolerance, o.resolution};
  if (params.A.dim() != params.E.dim()) throw InputError("set and dilation dimensions differ");
  const GramResult r = gram_matrix(params);
  auto index_json = [&](std::size_t i) { return Json{{"m", r.index[i].m}, {"v", to_json(r.index[i].v)}}; };
  Json j{{"command", "gram"},
         {"path", to_string(r.path)},
         {"size", r.index.size()},
         {"max_deviation", r.max_deviation},
         {"tolerance", params.tolerance},
         {"within_tolerance", r.within_tolerance},
         {"worst_entry", Json::array({index_json(r.worst.first), index_json(r.worst.second)})},
         {"max_cross_scale", r.max_cross_scale}};
  if (r.cross_scale_witness)
    j["cross_scale_witness"] =
        Json::array({index_json(r.cross_scale_witness->first), index_json(r.cross_scale_witness->second)});
  if (!r.warning.empty()) j["warning"] = r.warning;
  if (!o.summary_only) {
    Json index = Json::array(), rows = Json::array();
    for (std::size_t i = 0; i < r.index.size(); ++i) {
      index.push_back(index_json(i));
      Json row = Json::array();
      for (std::size_t k = 0; k < r.index.size(); ++k)
        row.push_back(to_json(Complex(r.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)))));
      rows.push_back(row);
    }
    j["index"] = index;
    j["matrix"] = rows;
  }
  return {j, r.within_tolerance};
}

Outcome decompose(const Options& o) {
  const BoxSet E = set_from_json(load_json_arg(o.set));
  const DilationMatrix A = matrix_from_arg(o.dilation);
  if (A.dim() != E.dim()) throw InputError("set and dilation dimensions differ");
  const ModulatedBoxSum f = function_from_json(A, load_json_arg(o.function));
  PhiOptions opts;
  opts.force_sampled = o.sampled;
  opts.resolution = o.resolution;
  if (!o.window.empty()) {
    const auto [lo, hi] = split_pair(o.window, "--window");
    try {
      opts.window = std::make_pair(std::stol(lo), std::stol(hi));
    } catch (const std::exception&) {
      throw InputError("--window: expected two integers");
    }
  }
  const EZFunction F = phi_forward(f, E, A, opts);
  Json j{{"command", "decompose"}, {"phi", to_json(F)}};
  bool pass = true;
  if (!f.is_zero()) {
    const IsometryDefect d = isometry_defect(f, E, A, opts);
    j["isometry_defect"] = d.value;
    if (d.exact) j["isometry_defect_exact"] = to_json(*d.exact);
    pass = d.value <= o.tolerance;
  } else {
    j["isometry_defect"] = nullptr;
  }
  if (F.path == FunctionPath::Exact) {
    const ModulatedBoxSum back = std::get<ModulatedBoxSum>(phi_inverse(F, E, A));
    const double gap = distance(A, back, f);
    j["roundtrip_distance"] = gap;
    pass = pass && gap <= o.tolerance * std::max(1.0, norm(A, f));
  }
  j["tolerance"] = o.tolerance;
  j["pass"] = pass;
  return {j, pass};
}

Outcome rep(const Options& o) {
  const DilationMatrix A = matrix_from_arg(o.dilation);
  const RealPoint x = point_from_json(load_json_arg(o.point.front() == '[' ? o.point : "[\"" + o.point + "\"]"), "point");
  if (x.dim() != A.dim()) throw InputError("point and dilation dimensions differ");
  const GroupElement g = group_from_json(A, load_json_arg(o.group), "g");
  if (o.K <= std::labs(o.orbit_m) + std::labs(g.m)) throw InputError("--K must exceed |orbit-m| + |g.m|");
  const double v_dev = v_intertwiner_check(A, x, g, o.K);
  const double orbit_dev = orbit_equivalence_check(A, x, o.orbit_m, g, o.K);
  const IrreducibilityResult irr = irreducibility_scan(A, x, o.irreducibility_M);
  Json irr_json{{"pass", irr.pass}, {"M", o.irreducibility_M}};
  if (irr.witness) irr_json["witness_m"] = *irr.witness;
  const bool pass = v_dev < 1e-12 && orbit_dev < 1e-12 && irr.pass;
  Json j{{"command", "rep"},
         {"g", to_json(g)},
         {"fiber_matrix", to_json(fiber_matrix(A, x, g, o.K))},
         {"induced_matrix", to_json(induced_matrix(A, x, g, o.K))},
         {"v_intertwiner_deviation", v_dev},
         {"orbit_equivalence", Json{{"m", o.orbit_m}, {"deviation", orbit_dev}}},
         {"irreducibility", irr_json},
         {"pass", pass}};
  return {j, pass};
}

Outcome wavelet_eval(const Options& o) {
  const BoxSet E = set_from_json(load_json_arg(o.set));
  Json values = Json::array();
  std::vector<std::pair<double, Complex>> curve;
  if (!o.t.empty()) {
    const RealPoint t = point_from_json(load_json_arg(o.t.front() == '[' ? o.t : "[\"" + o.t + "\"]"), "t");
    if (t.dim() != E.dim()) throw InputError("--t dimension differs from the set");
    values.push_back(Json{{"t", to_json(t)}, {"psi", to_json(msf_eval(E, t))}});
  }
  if (!o.grid.empty()) {
    if (E.dim() != 1) throw InputError("--grid is only available in dimension 1");
    std::istringstream in(o.grid);
    double a = 0, b = 0;
    long count = 0;
    char c1 = 0, c2 = 0;
    if (!(in >> a >> c1 >> b >> c2 >> count) || c1 != ',' || c2 != ',' || count < 2)
      throw InputError("--grid: expected 'a,b,count' with count >= 2");
    for (long i = 0; i < count; ++i) {
      const double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
      const Complex psi = msf_eval(E, std::vector<double>{t});
      curve.emplace_back(t, psi);
      values.push_back(Json{{"t", t}, {"psi", to_json(psi)}});
    }
  }
  if (values.empty()) throw InputError("wavelet-eval needs --t or --grid");
  if (!o.csv.empty()) {
    std::ofstream csv(o.csv);
    if (!csv) throw InputError("cannot write '" + o.csv + "'");
    csv << "t,re,im\n" << std::setprecision(17);
    for (const auto& [t, psi] : curve) csv << t << ',' << psi.real() << ',' << psi.imag() << '\n';
  }
  return {Json{{"command", "wavelet-eval"}, {"values", values}}, true};
}

CharacterTarget target_from_json(const DilationMatrix& A, const Json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("level")) throw InputError(field + ": expected {\"level\": J, ...}");
  const auto level = j["level"].get<long long>();
  if (level < 0) throw InputError(field + ".level: expected a non-negative integer");
  CharacterTarget t;
  if (j.contains("phases")) {
    RatVec phases;
    for (std::size_t i = 0; i < j["phases"].size(); ++i)
      phases.push_back(rational_from_json(j["phases"][i], field + ".phases[" + std::to_string(i) + "]"));
    t = CharacterTarget::from_phases(static_cast<unsigned long>(level), phases);
  } else if (j.contains("values")) {
    std::vector<Complex> values;
    for (const auto& v : j["values"]) values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    t = CharacterTarget::from_values(static_cast<unsigned long>(level), values);
  } else {
    throw InputError(field + ": needs \"phases\" (pi units) or \"values\" ([re, im])");
  }
  if (j.contains("checks"))
    for (std::size_t i = 0; i < j["checks"].size(); ++i) {
      const Json& c = j["checks"][i];
      const std::string f = field + ".checks[" + std::to_string(i) + "]";
      CharacterValue cv;
      cv.beta = qa_from_json(A, c.at("beta"), f + ".beta");
      if (c.contains("phase")) {
        cv.phase = rational_from_json(c["phase"], f + ".phase");
        cv.value = cis_pi(*cv.phase);
      } else {
        cv.value = {c.at("value").at(0).get<double>(), c.at("value").at(1).get<double>()};
      }
      t.checks.push_back(std::move(cv));
    }
  return t;
}

Outcome density(const Options& o) {
  const DilationMatrix A = matrix_from_arg(o.dilation);
  const Json input = load_json_arg(o.targets);
  std::optional<BoxSet> E;
  if (!o.set.empty()) E = set_from_json(load_json_arg(o.set));
  std::vector<QAElement> F;
  if (input.contains("F"))
    for (std::size_t i = 0; i < input["F"].size(); ++i)
      F.push_back(qa_from_json(A, input["F"][i], "F[" + std::to_string(i) + "]"));
  const double eps = input.contains("eps") ? input["eps"].get<double>() : o.eps;
  if (!input.contains("targets") || !input["targets"].is_array()) throw InputError("targets: expected an array");
  Json results = Json::array();
  bool pass = true;
  for (std::size_t i = 0; i < input["targets"].size(); ++i) {
    const std::string field = "targets[" + std::to_string(i) + "]";
    const CharacterTarget t = target_from_json(A, input["targets"][i], field);
    try {
      const CharacterApproximation r = approx_character(A, t, F, eps, E);
      Json entry{{"y", to_json(r.y)}, {"error", r.error}, {"lattice_shift", to_json(r.lattice_shift)}};
      if (E) {
        entry["in_dilates_of_E"] = r.membership.has_value();
        if (r.membership) entry["p"] = r.membership->p;
      }
      const bool ok = r.error < eps && (!E || r.membership);
      entry["pass"] = ok;
      pass = pass && ok;
      results.push_back(entry);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InconsistentTarget && e.kind() != ErrorKind::LevelExceeded) throw;
      results.push_back(Json{{"error_kind", kind_name(e.kind())}, {"message", e.what()}, {"pass", false}});
      pass = false;
    }
  }
  return {Json{{"command", "density"}, {"eps", eps}, {"results", results}, {"pass", pass}}, pass};
}

Outcome mean_coef(const Options& o) {
  const DilationMatrix A = matrix_from_arg(o.dilation);
  const QAElement beta = qa_from_json(A, load_json_arg(o.beta), "beta");
  if (o.J_max < 0) throw InputError("--J-max: expected a non-negative integer");
  Json table = Json::array();
  for (long J = 0; J <= o.J_max; ++J) {
    const Complex c = mean_coefficient(A, beta, static_cast<unsigned long>(J));
    table.push_back(Json{{"J", J}, {"value", to_json(c)}, {"abs", std::abs(c)}});
  }
  return {Json{{"command", "mean-coef"}, {"beta", to_json(beta)}, {"table", table}}, true};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification toolkit for wavelet sets and the wavelet representation"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  auto* verify = app.add_subcommand("verify-set", "Check the three wavelet-set conditions");
  verify->add_option("--set", o.set, "Set JSON file or inline JSON")->required();
  verify->add_option("--dilation", o.dilation, "Integer matrix, inline JSON or file")->required();
  verify->add_option("--J", o.J, "Dilation range |j| <= J");
  verify->add_option("--annulus", o.annulus, "r_in,r_out in pi units");
  verify->add_option("--samples", o.samples, "Sample count in sampled mode");
  verify->add_option("--seed", o.seed, "Sampling seed");
  verify->add_flag("--sampled", o.sampled, "Force sampled mode");

  auto* gram_cmd = app.add_subcommand("gram", "Gram matrix of the MSF wavelet family");
  gram_cmd->add_option("--set", o.set)->required();
  gram_cmd->add_option("--dilation", o.dilation)->required();
  gram_cmd->add_option("--m", o.M, "Scales m in [-M, M]");
  gram_cmd->add_option("--v", o.V, "Translations v in [-V, V]^n");
  gram_cmd->add_option("--tolerance", o.tolerance);
  gram_cmd->add_option("--resolution", o.resolution, "Quadrature cells per pi (non-diagonal B)");
  gram_cmd->add_flag("--summary-only", o.summary_only, "Omit the matrix entries");

  auto* decompose_cmd = app.add_subcommand("decompose", "Apply the map to L^2(E x Z) and check the isometry");
  decompose_cmd->add_option("--set", o.set)->required();
  decompose_cmd->add_option("--dilation", o.dilation)->required();
  decompose_cmd->add_option("--function", o.function, "Modulated box sum JSON")->required();
  decompose_cmd->add_option("--window", o.window, "k_min,k_max");
  decompose_cmd->add_flag("--sampled", o.sampled);
  decompose_cmd->add_option("--resolution", o.resolution);
  decompose_cmd->add_option("--tolerance", o.tolerance);

  auto* rep_cmd = app.add_subcommand("rep", "Fiber and induced matrices with intertwiner checks");
  rep_cmd->add_option("--dilation", o.dilation)->required();
  rep_cmd->add_option("--point", o.point, "x, e.g. '1/2 pi' or JSON array")->required();
  rep_cmd->add_option("--g", o.group, "Group element {\"v\":[...],\"j\":J,\"m\":M}")->required();
  rep_cmd->add_option("--K", o.K, "Truncation window [-K, K]");
  rep_cmd->add_option("--orbit-m", o.orbit_m, "Orbit offset m");
  rep_cmd->add_option("--M", o.irreducibility_M, "Irreducibility scan range");

  auto* eval_cmd = app.add_subcommand("wavelet-eval", "Evaluate the MSF wavelet");
  eval_cmd->add_option("--set", o.set)->required();
  eval_cmd->add_option("--t", o.t, "Point, e.g. '0.5' or JSON array");
  eval_cmd->add_option("--grid", o.grid, "a,b,count (dimension 1)");
  eval_cmd->add_option("--csv", o.csv, "Write grid samples as CSV");

  auto* density_cmd = app.add_subcommand("density", "Approximate characters by points of R^n");
  density_cmd->add_option("--dilation", o.dilation)->required();
  density_cmd->add_option("--targets", o.targets, "Targets JSON")->required();
  density_cmd->add_option("--set", o.set, "Require y in the dilates of this set");
  density_cmd->add_option("--eps", o.eps);

  auto* mean_cmd = app.add_subcommand("mean-coef", "Averaged matrix coefficient over J");
  mean_cmd->add_option("--dilation", o.dilation)->required();
  mean_cmd->add_option("--beta", o.beta, "{\"v\":[...],\"j\":J}")->required();
  mean_cmd->add_option("--J-max", o.J_max);

  app.add_option("--output", o.output, "Write the report to this file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  Outcome outcome;
  int code = kPass;
  try {
    if (verify->parsed()) outcome = verify_set(o);
    else if (gram_cmd->parsed()) outcome = gram(o);
    else if (decompose_cmd->parsed()) outcome = decompose(o);
    else if (rep_cmd->parsed()) outcome = rep(o);
    else if (eval_cmd->parsed()) outcome = wavelet_eval(o);
    else if (density_cmd->parsed()) outcome = density(o);
    else outcome = mean_coef(o);
    code = outcome.pass ? kPass : kCheckFailed;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidInput || e.kind() == ErrorKind::DimensionMismatch) {
      err << "input error: " << e.what() << "\n";
      return kUsage;
    }
    outcome.report = Json{{"error", error_json(e)}, {"pass", false}};
    code = kCheckFailed;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  }
  outcome.report["exit_code"] = code;

  const std::string text = outcome.report.dump(2) + "\n";
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream file(o.output);
    if (!file) {
      err << "cannot write '" << o.output << "'\n";
      return kUsage;
    }
    file << text;
  }
  return code;
}

}  // namespace wavrep::cli
