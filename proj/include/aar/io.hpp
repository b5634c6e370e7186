#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"

#include "aar/checks.hpp"
#include "aar/experiments.hpp"
#include "aar/solver.hpp"

namespace aar {

using nlohmann::json;

/// Malformed or inconsistent input document.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ModelSpace parse_space(const json& j);
Point parse_point(const json& j);
ConvexSet parse_set(const json& j);
GluedSpace parse_glued_space(const json& j);
GluedPoint parse_glued_point(const json& j);
GluedSet parse_glued_set(const GluedSpace& g, const json& j);

json to_json(const ModelSpace& space);
json to_json(const Point& p);
json to_json(const ConvexSet& set);
json to_json(const GluedPoint& p);

/// A problem document: model or glued geometry plus the run configuration.
struct ProblemDocument {
  std::variant<ModelProblem, GluedProblem> problem;
  SolverConfig config;
};

/// Throws InputError on schema violations; geometry errors in the data
/// (off-surface points, invalid sets) are reported the same way.
ProblemDocument parse_problem(const json& j);
ProblemDocument load_problem(const std::string& path);

json result_to_json(const SolveResult<Point>& r);
json result_to_json(const SolveResult<GluedPoint>& r);

/// Header n,step,dist_A_of_shadow,x0,x1,...; glued traces add a side column
/// before the coordinates and pad shorter coordinate vectors with empty cells.
void write_trace_csv(std::ostream& os, const std::vector<IterateRecord<Point>>& trace);
void write_trace_csv(std::ostream& os, const std::vector<IterateRecord<GluedPoint>>& trace);

json report_to_json(const GluingCounterexampleReport& r);
json report_to_json(const SphericalCounterexampleReport& r);
json report_to_json(const RateBound& r);
json report_to_json(const SuiteReport& r);
json comparisons_to_json(const std::vector<Comparison>& rows);

}  // namespace aar
