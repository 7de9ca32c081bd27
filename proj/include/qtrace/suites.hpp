#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtrace/coordinate_change.hpp"
#include "qtrace/curves.hpp"
#include "qtrace/repcheck.hpp"
#include "qtrace/surface.hpp"

namespace qtrace {

// Library surfaces plus "lift:NAME" for the lift of a generalized library surface.
Triangulation library_surface(const std::string& name);
std::vector<std::string> duality_surfaces();
// Marked library surfaces whose flips the coordinate-change suites sweep.
std::vector<std::string> flip_surfaces();

struct CatalogCurve {
  std::string name;
  std::string surface;
  Triangulation T;
  NormalCurve curve;
};
// Simple closed curves used by the trace and naturality checks.
std::vector<CatalogCurve> curve_catalog();
// Curves of the generalized library surfaces, on the surfaces themselves.
std::vector<CatalogCurve> punctured_catalog();

struct Check {
  std::string name;
  Verdict verdict = Verdict::Inconclusive;
  bool exact = false;  // decided by exact expansion; no representation was used
  std::optional<VerifyReport> report;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  Verdict verdict() const;
  std::size_t count(Verdict v) const;
};

// Exact comparison when both sides expand to torus elements, repcheck otherwise.
Check check_identity(const std::string& name, const ExprPtr& lhs, const ExprPtr& rhs, const VerifyOptions& opts,
                     bool force_numeric = false);

SuiteReport suite_duality();
SuiteReport suite_flipback(const VerifyOptions& opts);
SuiteReport suite_pentagon(const VerifyOptions& opts);
SuiteReport suite_naturality(const VerifyOptions& opts);
SuiteReport suite_dia9(const VerifyOptions& opts);
SuiteReport suite_transfer(const VerifyOptions& opts);
// Flip-back of a Theta map with one image coefficient scaled by q^(1/8); expected to FAIL.
SuiteReport suite_corrupted(const VerifyOptions& opts);

std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const VerifyOptions& opts);

}  // namespace qtrace
