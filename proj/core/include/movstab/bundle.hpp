#pragma once

#include <optional>
#include <string>
#include <vector>

#include "movstab/stability.hpp"
#include "movstab/surface.hpp"

namespace movstab {

// Self-contained problem description parsed from a JSON file: one lattice,
// the pseudo-effective cone, the movable cone (default: dual of eff, which is
// the nef cone in the surface model), optional sheaf/family/curve data, and
// an ordered list of queries.  Queries are kept as compact JSON strings so
// the JSON dependency stays out of this header.
struct ProblemBundle {
  LatticePtr lattice;
  RationalCone eff;
  RationalCone mov;
  std::optional<SheafClass> sheaf;
  std::optional<SubsheafFamily> family;
  NegativeCurveSet curves;
  std::vector<std::string> queries;  // canonical compact JSON, one per query
};

// Structural JSON problems (wrong type, missing field, bad rational) raise
// SchemaError with the offending field path; semantic construction failures
// (degenerate gram matrix, inconsistent family...) propagate from the core
// types as PreconditionError/InvariantError.
ProblemBundle parse_bundle(const std::string& json_text);
ProblemBundle load_bundle_file(const std::string& path);

// One-line-per-section structural summary used by `validate`.
std::string bundle_summary(const ProblemBundle& bundle);

struct RunOutcome {
  int exit_code = 0;         // 0 ok; 3 precondition; 4 invariant (4 wins)
  std::string json_report;   // canonical: sorted keys, rationals as "p/q"
  std::string text_report;   // human-readable, same information
};

// Executes the queries in order (optionally only those matching `only_cmd`).
// Query-level precondition/invariant failures are captured in the report and
// reflected in the exit code; schema problems inside a query record abort
// with SchemaError.
RunOutcome run_bundle(const ProblemBundle& bundle, const std::string& only_cmd = "");

}  // namespace movstab
