#include "aar/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace aar {
namespace {

[[noreturn]] void fail(const std::string& what) { throw InputError(what); }

const json& field(const json& j, const char* key, const char* where) {
  if (!j.is_object()) fail(std::string(where) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string(where) + ": missing field \"" + key + "\"");
  return *it;
}

double number(const json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(std::string(what) + ": not finite");
  return v;
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + ": expected an integer");
  return j.get<int>();
}

std::string text(const json& j, const char* what) {
  if (!j.is_string()) fail(std::string(what) + ": expected a string");
  return j.get<std::string>();
}

void only_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items())
    if (!ok.count(key)) fail(std::string(where) + ": unknown field \"" + key + "\"");
}

Side parse_side(const json& j) {
  const std::string s = text(j, "side");
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  fail("side: expected \"left\" or \"right\", got \"" + s + "\"");
}

std::string_view side_name(Side s) { return s == Side::Left ? "left" : "right"; }

LambdaSchedule parse_lambda(const json& j) {
  if (j.is_number()) return LambdaSchedule::constant(number(j, "lambda"), 2);
  if (!j.is_object()) fail("lambda: expected a number or an object");
  const std::string kind = text(field(j, "kind", "lambda"), "lambda.kind");
  const int K = j.contains("K") ? integer(j["K"], "lambda.K") : 2;
  if (kind == "constant") return LambdaSchedule::constant(number(field(j, "value", "lambda"), "lambda.value"), K);
  if (kind == "list") {
    const json& vs = field(j, "values", "lambda");
    if (!vs.is_array() || vs.empty()) fail("lambda.values: expected a non-empty array");
    std::vector<double> values;
    for (const json& v : vs) values.push_back(number(v, "lambda.values[]"));
    return LambdaSchedule::list(std::move(values), K);
  }
  fail("lambda.kind: expected \"constant\" or \"list\", got \"" + kind + "\"");
}

void csv_head(std::ostream& os) { os << "n,step,dist_A_of_shadow"; }

void csv_row(std::ostream& os, int n, double step, double dist) {
  os << n << ',' << step << ',' << dist;
}

}  // namespace

ModelSpace parse_space(const json& j) {
  only_keys(j, {"k", "n"}, "space");
  const double k = number(field(j, "k", "space"), "space.k");
  const int n = integer(field(j, "n", "space"), "space.n");
  try {
    return ModelSpace(k, n);
  } catch (const GeometryError& e) {
    fail(std::string("space: ") + e.what());
  }
}

Point parse_point(const json& j) {
  if (!j.is_array() || j.empty()) fail("point: expected a non-empty array of numbers");
  Point p(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) p[static_cast<Eigen::Index>(i)] = number(j[i], "point coordinate");
  return p;
}

ConvexSet parse_set(const json& j) {
  const std::string type = text(field(j, "type", "set"), "set.type");
  if (type == "singleton") {
    only_keys(j, {"type", "p"}, "singleton");
    return Singleton{parse_point(field(j, "p", "singleton"))};
  }
  if (type == "ball") {
    only_keys(j, {"type", "center", "radius"}, "ball");
    return Ball{parse_point(field(j, "center", "ball")), number(field(j, "radius", "ball"), "ball.radius")};
  }
  if (type == "segment") {
    only_keys(j, {"type", "a", "b"}, "segment");
    return Segment{parse_point(field(j, "a", "segment")), parse_point(field(j, "b", "segment"))};
  }
  if (type == "halfspace") {
    only_keys(j, {"type", "u", "c"}, "halfspace");
    const double c = j.contains("c") ? number(j["c"], "halfspace.c") : 0.0;
    return HalfSpace{parse_point(field(j, "u", "halfspace")), c};
  }
  fail("set.type: unknown set type \"" + type + "\"");
}

GluedSpace parse_glued_space(const json& j) {
  only_keys(j, {"left", "right", "theta_left", "theta_right"}, "glued space");
  try {
    return GluedSpace(parse_space(field(j, "left", "glued space")),
                      parse_space(field(j, "right", "glued space")),
                      parse_point(field(j, "theta_left", "glued space")),
                      parse_point(field(j, "theta_right", "glued space")));
  } catch (const GeometryError& e) {
    fail(std::string("glued space: ") + e.what());
  }
}

GluedPoint parse_glued_point(const json& j) {
  only_keys(j, {"side", "coords"}, "glued point");
  return {parse_side(field(j, "side", "glued point")), parse_point(field(j, "coords", "glued point"))};
}

GluedSet parse_glued_set(const GluedSpace& g, const json& j) {
  only_keys(j, {"side", "set", "opposite"}, "glued set");
  const Side side = parse_side(field(j, "side", "glued set"));
  ConvexSet set = parse_set(field(j, "set", "glued set"));
  std::optional<ConvexSet> other;
  if (j.contains("opposite")) other = parse_set(j["opposite"]);
  try {
    return GluedSet(g, side, std::move(set), std::move(other));
  } catch (const GeometryError& e) {
    fail(std::string("glued set: ") + e.what());
  }
}

json to_json(const ModelSpace& space) {
  return {{"k", space.curvature()}, {"n", space.dimension()}};
}

json to_json(const Point& p) {
  json a = json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

json to_json(const ConvexSet& set) {
  return std::visit(
      [](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Singleton>) return {{"type", "singleton"}, {"p", to_json(c.p)}};
        else if constexpr (std::is_same_v<T, Ball>)
          return {{"type", "ball"}, {"center", to_json(c.center)}, {"radius", c.radius}};
        else if constexpr (std::is_same_v<T, Segment>)
          return {{"type", "segment"}, {"a", to_json(c.a)}, {"b", to_json(c.b)}};
        else
          return {{"type", "halfspace"}, {"u", to_json(c.u)}, {"c", c.offset}};
      },
      set);
}

json to_json(const GluedPoint& p) {
  return {{"side", side_name(p.side)}, {"coords", to_json(p.coords)}};
}

ProblemDocument parse_problem(const json& j) {
  if (!j.is_object()) fail("problem: expected a JSON object");
  only_keys(j, {"space", "A", "B", "x0", "method", "lambda", "eps", "feas_tol", "max_iter", "region"},
            "problem");

  SolverConfig cfg;
  if (j.contains("method")) {
    const std::string m = text(j["method"], "method");
    if (m == "aar") cfg.method = Method::AAR;
    else if (m == "km") cfg.method = Method::KM;
    else fail("method: expected \"aar\" or \"km\", got \"" + m + "\"");
  }
  if (j.contains("lambda")) cfg.lambda = parse_lambda(j["lambda"]);
  if (j.contains("eps")) cfg.eps = number(j["eps"], "eps");
  if (j.contains("feas_tol")) cfg.feas_tol = number(j["feas_tol"], "feas_tol");
  if (j.contains("max_iter")) cfg.max_iter = integer(j["max_iter"], "max_iter");
  try {
    cfg.validate();
  } catch (const GeometryError& e) {
    fail(std::string("config: ") + e.what());
  }

  const json& space = field(j, "space", "problem");
  if (space.is_object() && space.contains("left")) {
    if (j.contains("region")) fail("region: only supported for model spaces");
    GluedSpace g = parse_glued_space(space);
    GluedSet A = parse_glued_set(g, field(j, "A", "problem"));
    GluedSet B = parse_glued_set(g, field(j, "B", "problem"));
    GluedPoint x0 = parse_glued_point(field(j, "x0", "problem"));
    return {GluedProblem{std::move(g), std::move(A), std::move(B), std::move(x0)}, cfg};
  }

  ModelSpace m = parse_space(space);
  ModelProblem p{m, parse_set(field(j, "A", "problem")), parse_set(field(j, "B", "problem")),
                 parse_point(field(j, "x0", "problem")), std::nullopt};
  if (j.contains("region")) {
    ConvexSet region = parse_set(j["region"]);
    if (!std::holds_alternative<Ball>(region)) fail("region: expected a ball");
    p.region = std::get<Ball>(region);
  }
  return {std::move(p), cfg};
}

ProblemDocument load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(path + ": " + e.what());
  }
  return parse_problem(j);
}

namespace {

template <class P, class F>
json result_common(const SolveResult<P>& r, F&& point) {
  json j;
  j["status"] = to_string(r.status);
  j["iterations"] = r.iterations;
  j["final_x"] = point(r.final_x);
  j["shadow"] = point(r.shadow);
  j["certificate"] = {{"dist_A", r.certificate.dist_A}, {"dist_B", r.certificate.dist_B}};
  json trace = json::array();
  for (const auto& rec : r.trace)
    trace.push_back({{"n", rec.n},
                     {"x", point(rec.x)},
                     {"step", rec.step},
                     {"shadow", point(rec.shadow)},
                     {"dist_A_of_shadow", rec.dist_A_of_shadow}});
  j["trace"] = std::move(trace);
  if (r.status == SolveStatus::DomainError) {
    j["error"] = {{"message", r.message}};
    if (r.failed_index) j["error"]["index"] = *r.failed_index;
  }
  return j;
}

}  // namespace

json result_to_json(const SolveResult<Point>& r) {
  return result_common(r, [](const Point& p) { return to_json(p); });
}

json result_to_json(const SolveResult<GluedPoint>& r) {
  return result_common(r, [](const GluedPoint& p) { return to_json(p); });
}

void write_trace_csv(std::ostream& os, const std::vector<IterateRecord<Point>>& trace) {
  const Eigen::Index dim = trace.empty() ? 0 : trace.front().x.size();
  csv_head(os);
  for (Eigen::Index i = 0; i < dim; ++i) os << ",x" << i;
  os << '\n';
  os.precision(17);
  for (const auto& rec : trace) {
    csv_row(os, rec.n, rec.step, rec.dist_A_of_shadow);
    for (Eigen::Index i = 0; i < rec.x.size(); ++i) os << ',' << rec.x[i];
    os << '\n';
  }
}

void write_trace_csv(std::ostream& os, const std::vector<IterateRecord<GluedPoint>>& trace) {
  Eigen::Index dim = 0;
  for (const auto& rec : trace) dim = std::max(dim, rec.x.coords.size());
  csv_head(os);
  os << ",side";
  for (Eigen::Index i = 0; i < dim; ++i) os << ",x" << i;
  os << '\n';
  os.precision(17);
  for (const auto& rec : trace) {
    csv_row(os, rec.n, rec.step, rec.dist_A_of_shadow);
    os << ',' << side_name(rec.x.side);
    for (Eigen::Index i = 0; i < dim; ++i) {
      os << ',';
      if (i < rec.x.coords.size()) os << rec.x.coords[i];
    }
    os << '\n';
  }
}

json report_to_json(const GluingCounterexampleReport& r) {
  return {{"h", r.h},
          {"z", r.z},
          {"t0", r.t0},
          {"fprime_at_0", r.fprime_at_0},
          {"fprime_at_end", r.fprime_at_end},
          {"d_xp", r.d_xp},
          {"d_yp", r.d_yp},
          {"cos_gamma", r.cos_gamma},
          {"cosh_d", r.cosh_d},
          {"cosh_dxy", r.cosh_dxy},
          {"violated", r.violated},
          {"bisection_steps", r.bisection_steps}};
}

json report_to_json(const SphericalCounterexampleReport& r) {
  return {{"a", to_json(r.a)},
          {"b", to_json(r.b)},
          {"p", to_json(r.p)},
          {"c", to_json(r.c)},
          {"c_prime", to_json(r.c_prime)},
          {"Tc", to_json(r.Tc)},
          {"Tc_prime", to_json(r.Tc_prime)},
          {"d_TcTc_prime", r.d_TcTc_prime},
          {"d_cc_prime", r.d_cc_prime},
          {"violated", r.violated}};
}

json report_to_json(const RateBound& r) {
  json j = {{"M", r.M},
            {"log10_value", r.log10_value},
            {"mantissa", r.mantissa},
            {"exponent", r.exponent}};
  j["value"] = r.value ? json(*r.value) : json(nullptr);
  return j;
}

json report_to_json(const SuiteReport& r) {
  return {{"name", r.name},
          {"checked", r.checked},
          {"rejected", r.rejected},
          {"violations", r.violations},
          {"worst_excess", r.checked ? json(r.worst_excess) : json(nullptr)},
          {"breakdown", r.breakdown}};
}

json comparisons_to_json(const std::vector<Comparison>& rows) {
  json a = json::array();
  for (const Comparison& c : rows)
    a.push_back({{"quantity", c.quantity},
                 {"reference", c.reference},
                 {"computed", c.computed},
                 {"abs_diff", c.abs_diff},
                 {"within", c.within}});
  return a;
}

}  // namespace aar
