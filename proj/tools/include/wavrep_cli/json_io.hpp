#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "wavrep/box_set.hpp"
#include "wavrep/group.hpp"
#include "wavrep/modulated.hpp"
#include "wavrep/rep_engine.hpp"
#include "wavrep/spectral_map.hpp"
#include "wavrep/wavelet_set.hpp"

namespace wavrep::cli {

using Json = nlohmann::ordered_json;

/// Malformed command-line or file input; maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
/// Parse errors carry "source:line:column".
Json load_json_arg(const std::string& arg);

Rational rational_from_json(const Json& j, const std::string& field);
Json to_json(const Rational& q);
Json to_json(const Complex& c);
Json to_json(const IntVec& v);
Json to_json(const RatVec& v);

/// {"dim": n, "boxes": [{"lo": ["p/q", ...], "hi": [...]}]}, endpoints in π units.
BoxSet set_from_json(const Json& j, const std::string& field = "set");
Json to_json(const Box& b);
Json to_json(const BoxSet& s);

DilationMatrix matrix_from_arg(const std::string& arg);

/// {"v": [...], "j": J}
QAElement qa_from_json(const DilationMatrix& A, const Json& j, const std::string& field);
/// {"v": [...], "j": J, "m": M}
GroupElement group_from_json(const DilationMatrix& A, const Json& j, const std::string& field);
Json to_json(const QAElement& q);
Json to_json(const GroupElement& g);

/// Array of coordinates, each "p/q pi", "pi", or a decimal; a bare string is a 1-D point.
RealPoint point_from_json(const Json& j, const std::string& field);
Json to_json(const RealPoint& x);

/// {"dim": n, "terms": [{"coef": [re, im], "beta": {"v": [...], "j": J}, "lo": [...], "hi": [...]}]}
ModulatedBoxSum function_from_json(const DilationMatrix& A, const Json& j, const std::string& field = "function");
Json to_json(const ModulatedBoxSum& f);

Json to_json(const ConditionResult& c);
Json to_json(const TilingReport& r);
Json to_json(const EZFunction& F);
Json to_json(const FiberMatrix& M);

}  // namespace wavrep::cli
