#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qtrace/curves.hpp"
#include "qtrace/repcheck.hpp"
#include "qtrace/surface.hpp"
#include "qtrace/torus.hpp"

namespace qtrace {

using json = nlohmann::ordered_json;

// Schema violation: `path` is a JSON pointer into the offending document.
class InputError : public std::runtime_error {
 public:
  InputError(std::string path, const std::string& reason)
      : std::runtime_error(path + ": " + reason), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

json parse_json_text(const std::string& text, const std::string& origin);
json load_json_file(const std::string& path);

// {"triangles":[{"sides":[s1,s2,s3],"labels":[...]?}...], "gluing":[[s,s']...],
//  "boundary_marks":[...]?, "interior_points":n?}. Side ids are arbitrary distinct integers.
Triangulation triangulation_from_json(const json& j);
json triangulation_to_json(const Triangulation& T);

NormalCurve curve_from_json(const json& j);
json curve_to_json(const NormalCurve& c);

// {"terms":[{"exp":{"label":e,...},"coef":c}]} with c an integer, an integer string, or
// [[eighths, "integer"],...] for q-power coefficients.
TorusElement element_from_json(const json& j, const SpecPtr& spec);
json element_to_json(const TorusElement& a);
json scalar_to_json(const Scalar& s);
json matrix_to_json(const IntMatrix& M);
json exp_to_json(const Exp& k, const TorusSpec& spec);
json report_to_json(const VerifyReport& r);

}  // namespace qtrace
