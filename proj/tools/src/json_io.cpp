#include "wavrep_cli/json_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "wavrep/errors.hpp"

namespace wavrep::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

const Json& member(const Json& j, const char* key, const std::string& field) {
  if (!j.is_object()) throw InputError(field + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(field + ": missing field '" + key + "'");
  return *it;
}

long long integer_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_string()) {
    try {
      const Rational q = parse_rational(j.get<std::string>());
      if (denominator(q) == 1) return static_cast<long long>(numerator(q));
    } catch (const Error&) {
    }
  }
  throw InputError(field + ": expected an integer");
}

IntVec intvec_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array of integers");
  IntVec v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    if (j[i].is_string()) {
      try {
        const Rational q = parse_rational(j[i].get<std::string>());
        if (denominator(q) != 1) throw InputError(f + ": expected an integer");
        v.push_back(numerator(q));
        continue;
      } catch (const Error& e) {
        throw InputError(f + ": " + e.what());
      }
    }
    v.push_back(Integer(integer_from_json(j[i], f)));
  }
  return v;
}

RatVec ratvec_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array of rationals");
  RatVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

Complex complex_from_json(const Json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError(field + ": expected a number or [re, im]");
}

}  // namespace

Json load_json_arg(const std::string& arg) {
  const std::size_t first = arg.find_first_not_of(" \t\r\n");
  const bool inline_json = first != std::string::npos && (arg[first] == '{' || arg[first] == '[');
  const std::string source = inline_json ? "<inline>" : arg;
  const std::string text = inline_json ? arg : read_file(arg);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(source + ":" + line_column(text, e.byte) + ": " + e.what());
  }
}

Rational rational_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return exact_rational(j.get<double>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw InputError(field + ": " + e.what());
    }
  }
  throw InputError(field + ": expected a rational string \"p/q\"");
}

Json to_json(const Rational& q) { return format_rational(q); }

Json to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const IntVec& v) {
  Json a = Json::array();
  for (const auto& c : v) {
    if (c >= std::numeric_limits<long long>::min() && c <= std::numeric_limits<long long>::max())
      a.push_back(static_cast<long long>(c));
    else
      a.push_back(c.str());
  }
  return a;
}

Json to_json(const RatVec& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_json(q));
  return a;
}

BoxSet set_from_json(const Json& j, const std::string& field) {
  const auto dim = integer_from_json(member(j, "dim", field), field + ".dim");
  if (dim <= 0) throw InputError(field + ".dim: expected a positive integer");
  const Json& boxes = member(j, "boxes", field);
  if (!boxes.is_array()) throw InputError(field + ".boxes: expected an array");
  std::vector<Box> raw;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const std::string f = field + ".boxes[" + std::to_string(i) + "]";
    Box b{ratvec_from_json(member(boxes[i], "lo", f), f + ".lo"), ratvec_from_json(member(boxes[i], "hi", f), f + ".hi")};
    if (b.lo.size() != static_cast<std::size_t>(dim) || b.hi.size() != static_cast<std::size_t>(dim))
      throw InputError(f + ": expected " + std::to_string(dim) + " coordinates");
    raw.push_back(std::move(b));
  }
  return BoxSet::normalize(static_cast<std::size_t>(dim), raw);
}

Json to_json(const Box& b) { return Json{{"lo", to_json(b.lo)}, {"hi", to_json(b.hi)}}; }

Json to_json(const BoxSet& s) {
  Json boxes = Json::array();
  for (const auto& b : s.boxes()) boxes.push_back(to_json(b));
  return Json{{"dim", s.dim()}, {"boxes", boxes}, {"measure_pi_units", to_json(s.measure())}};
}

DilationMatrix matrix_from_arg(const std::string& arg) {
  const Json j = load_json_arg(arg);
  if (!j.is_array() || j.empty()) throw InputError("dilation: expected a square integer matrix");
  std::vector<std::vector<long long>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = "dilation[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != j.size()) throw InputError(f + ": expected a row of length " + std::to_string(j.size()));
    std::vector<long long> row;
    for (std::size_t k = 0; k < j[i].size(); ++k) row.push_back(integer_from_json(j[i][k], f + "[" + std::to_string(k) + "]"));
    rows.push_back(std::move(row));
  }
  try {
    return validate_dilation(rows);
  } catch (const Error& e) {
    throw InputError(std::string("dilation: ") + e.what());
  }
}

QAElement qa_from_json(const DilationMatrix& A, const Json& j, const std::string& field) {
  IntVec v = intvec_from_json(member(j, "v", field), field + ".v");
  if (v.size() != A.dim()) throw InputError(field + ".v: expected " + std::to_string(A.dim()) + " entries");
  long long e = 0;
  if (j.contains("j")) e = integer_from_json(j["j"], field + ".j");
  if (e < 0) throw InputError(field + ".j: expected a non-negative integer");
  return qa_canonicalize(A, std::move(v), static_cast<unsigned long>(e));
}

GroupElement group_from_json(const DilationMatrix& A, const Json& j, const std::string& field) {
  GroupElement g;
  g.beta = qa_from_json(A, j, field);
  if (j.contains("m")) g.m = static_cast<long>(integer_from_json(j["m"], field + ".m"));
  return g;
}

Json to_json(const QAElement& q) { return Json{{"v", to_json(q.v)}, {"j", q.j}}; }

Json to_json(const GroupElement& g) { return Json{{"v", to_json(g.beta.v)}, {"j", g.beta.j}, {"m", g.m}}; }

RealPoint point_from_json(const Json& j, const std::string& field) {
  const Json coords = j.is_array() ? j : Json::array({j});
  RatVec values;
  int pi_count = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    if (!coords[i].is_string()) {
      values.push_back(rational_from_json(coords[i], f));
      continue;
    }
    std::string s = coords[i].get<std::string>();
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    const bool has_pi = s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0;
    if (has_pi) {
      ++pi_count;
      s.erase(s.size() - 2);
      while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.back())) || s.back() == '*')) s.pop_back();
      if (s.empty() || s == "+") s = "1";
      if (s == "-") s = "-1";
    }
    values.push_back(rational_from_json(Json(s), f));
  }
  if (pi_count != 0 && pi_count != static_cast<int>(coords.size()))
    throw InputError(field + ": mix of pi-unit and plain coordinates");
  return pi_count ? RealPoint::pi_units(values) : RealPoint::rationals(values);
}

Json to_json(const RealPoint& x) {
  Json a = Json::array();
  for (const auto& q : x.exact()) a.push_back(x.in_pi_units() ? format_rational(q) + " pi" : format_rational(q));
  return a;
}

ModulatedBoxSum function_from_json(const DilationMatrix& A, const Json& j, const std::string& field) {
  const auto dim = integer_from_json(member(j, "dim", field), field + ".dim");
  if (dim != static_cast<long long>(A.dim())) throw InputError(field + ".dim: does not match the dilation matrix");
  const Json& terms = member(j, "terms", field);
  if (!terms.is_array()) throw InputError(field + ".terms: expected an array");
  ModulatedBoxSum f{A.dim(), {}};
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string t = field + ".terms[" + std::to_string(i) + "]";
    ModulatedTerm term;
    term.coef = terms[i].contains("coef") ? complex_from_json(terms[i]["coef"], t + ".coef") : Complex(1.0);
    term.beta = terms[i].contains("beta") ? qa_from_json(A, terms[i]["beta"], t + ".beta") : qa_zero(A);
    term.box = Box{ratvec_from_json(member(terms[i], "lo", t), t + ".lo"), ratvec_from_json(member(terms[i], "hi", t), t + ".hi")};
    if (term.box.lo.size() != A.dim() || term.box.hi.size() != A.dim())
      throw InputError(t + ": box dimension does not match");
    if (!term.box.empty()) f.terms.push_back(std::move(term));
  }
  return f;
}

Json to_json(const ModulatedBoxSum& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms)
    terms.push_back(Json{{"coef", to_json(t.coef)}, {"beta", to_json(t.beta)}, {"lo", to_json(t.box.lo)}, {"hi", to_json(t.box.hi)}});
  return Json{{"dim", f.dim}, {"terms", terms}};
}

Json to_json(const ConditionResult& c) {
  Json j{{"pass", c.pass}, {"mode", to_string(c.mode)}, {"note", c.note}};
  if (c.witness_set) j["witness_set"] = to_json(*c.witness_set);
  if (c.witness_scales) j["witness_scales"] = Json::array({c.witness_scales->first, c.witness_scales->second});
  if (c.witness_sample) {
    Json point = Json::array();
    for (double x : c.witness_sample->point) point.push_back(x);
    j["witness_sample"] = Json{{"index", c.witness_sample->index}, {"point", point}, {"scales", c.witness_sample->scales}};
  }
  if (c.overlap) j["overlap"] = to_json(*c.overlap);
  if (c.deficit) j["deficit"] = to_json(*c.deficit);
  return j;
}

Json to_json(const TilingReport& r) {
  Json params{{"J", r.params.J},
              {"annulus_pi_units", Json::array({to_json(r.params.r_in), to_json(r.params.r_out)})},
              {"samples", r.params.samples},
              {"seed", r.params.seed}};
  return Json{{"verdict", r.verdict()},
              {"is_wavelet_set", r.is_wavelet_set()},
              {"measure_pi_units", to_json(r.measure)},
              {"params", params},
              {"condition_i", to_json(r.condition_i)},
              {"condition_ii", to_json(r.condition_ii)},
              {"condition_iii", to_json(r.condition_iii)}};
}

Json to_json(const EZFunction& F) {
  Json j{{"dim", F.dim}, {"path", to_string(F.path)}, {"k_window", Json::array({F.k_min, F.k_max})},
         {"truncation_mass", F.truncation_mass}};
  if (F.path == FunctionPath::Exact) {
    Json terms = Json::array();
    for (const auto& t : F.terms)
      terms.push_back(Json{{"k", t.k},
                           {"coef", to_json(t.coef)},
                           {"det_power_half", t.det_power},
                           {"beta", to_json(t.beta)},
                           {"lo", to_json(t.box.lo)},
                           {"hi", to_json(t.box.hi)}});
    j["terms"] = terms;
  } else {
    j["cells"] = F.grid->cells.size();
    Json levels = Json::array();
    for (long k = F.k_min; k <= F.k_max; ++k) {
      double mass = 0;
      const auto& v = F.values[static_cast<std::size_t>(k - F.k_min)];
      for (std::size_t c = 0; c < v.size(); ++c) mass += std::norm(v[c]) * F.grid->weights[c];
      levels.push_back(Json{{"k", k}, {"mass", mass}});
    }
    j["levels"] = levels;
  }
  return j;
}

Json to_json(const FiberMatrix& M) {
  Json phases = Json::array();
  for (const auto& p : M.phases) phases.push_back(to_json(p));
  return Json{{"x", to_json(M.x)}, {"window", Json::array({-M.K, M.K})}, {"shift", M.shift}, {"phases", phases}};
}

}  // namespace wavrep::cli
