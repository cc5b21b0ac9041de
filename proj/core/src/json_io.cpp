#include "kappa/json_io.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "detail/gen.hpp"
#include "nlohmann/json.hpp"

namespace kappa::io {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw SchemaError(what); }

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) bad("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

std::string str(const json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Vector vec_of(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    bad(std::string(what) + " must be a nonempty array of numbers");
  }
  Vector v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(number(x, what));
  return v;
}

std::vector<Vector> vec_list_of(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<Vector> out;
  out.reserve(j.size());
  for (const auto& row : j) out.push_back(vec_of(row, what));
  return out;
}

json vec_json(const Vector& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

json vec_list_json(const std::vector<Vector>& rows) {
  json a = json::array();
  for (const auto& r : rows) a.push_back(vec_json(r));
  return a;
}

std::string norm_name(NormKind k) {
  switch (k) {
    case NormKind::L1:
      return "l1";
    case NormKind::LInf:
      return "linf";
    default:
      return "l2";
  }
}

NormKind norm_of(const std::string& name) {
  if (name == "l1") return NormKind::L1;
  if (name == "l2") return NormKind::L2;
  if (name == "linf") return NormKind::LInf;
  bad("unknown norm '" + name + "' (expected l1, l2 or linf)");
}

// Re-raises construction failures as schema errors: value constraints on
// inputs are part of the input schema.
template <typename Fn>
auto checked(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    bad(std::string(what) + ": " + e.what());
  }
}

json set_json(const ClosedSet& s);

ClosedSet set_of(const json& j) {
  const std::string type = str(field(j, "type"), "set type");
  if (type == "empty") return ClosedSet::empty();
  if (type == "ball") {
    Vector center = vec_of(field(j, "center"), "ball center");
    const double radius = number(field(j, "radius"), "ball radius");
    NormKind norm = NormKind::L2;
    if (j.contains("norm")) norm = norm_of(str(j["norm"], "ball norm"));
    return checked("ball", [&] {
      return ClosedSet::ball(std::move(center), radius, norm);
    });
  }
  if (type == "polytope") {
    std::vector<Vector> vertices =
        vec_list_of(field(j, "vertices"), "polytope vertex");
    return checked(
        "polytope", [&] { return ClosedSet::polytope(std::move(vertices)); });
  }
  if (type == "subspace") {
    const json& basis_json = field(j, "basis");
    if (!basis_json.is_array()) bad("subspace basis must be an array");
    std::vector<Vector> basis;
    for (const auto& row : basis_json) {
      basis.push_back(vec_of(row, "subspace basis vector"));
    }
    Vector offset = vec_of(field(j, "offset"), "subspace offset");
    return checked("subspace", [&] {
      return ClosedSet::subspace(std::move(basis), std::move(offset));
    });
  }
  if (type == "union") {
    const json& parts_json = field(j, "parts");
    if (!parts_json.is_array() || parts_json.empty()) {
      bad("union parts must be a nonempty array");
    }
    std::vector<ClosedSet> parts;
    for (const auto& part : parts_json) parts.push_back(set_of(part));
    return checked("union",
                   [&] { return ClosedSet::union_of(std::move(parts)); });
  }
  bad("unknown set type '" + type + "'");
}

json set_json(const ClosedSet& s) {
  json j;
  if (s.is_empty()) {
    j["type"] = "empty";
    return j;
  }
  if (const auto* b = s.as<Ball>()) {
    j["type"] = "ball";
    j["center"] = vec_json(b->center);
    j["radius"] = b->radius;
    j["norm"] = norm_name(b->norm);
    return j;
  }
  if (const auto* p = s.as<Polytope>()) {
    j["type"] = "polytope";
    j["vertices"] = vec_list_json(p->vertices);
    return j;
  }
  if (const auto* sub = s.as<Subspace>()) {
    j["type"] = "subspace";
    j["basis"] = vec_list_json(sub->basis);
    j["offset"] = vec_json(sub->offset);
    return j;
  }
  if (const auto* u = s.as<UnionSet>()) {
    j["type"] = "union";
    json parts = json::array();
    for (const auto& part : u->parts) parts.push_back(set_json(part));
    j["parts"] = std::move(parts);
    return j;
  }
  throw std::logic_error("unhandled set variant");
}

Matrix matrix_of(const json& j, const char* what) {
  std::vector<Vector> rows = vec_list_of(j, what);
  if (rows.empty()) bad(std::string(what) + " must be nonempty");
  for (const auto& r : rows) {
    if (r.size() != rows.size()) {
      bad(std::string(what) + " must be square");
    }
  }
  return rows;
}

Operator operator_of(const json& j) {
  Matrix m = matrix_of(field(j, "matrix"), "operator matrix");
  auto op = Operator::try_make(std::move(m));
  if (!op) bad("operator matrix is singular");
  return *op;
}

json operator_json(const Operator& op) {
  json j;
  j["matrix"] = vec_list_json(op.matrix());
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// ClosedSet

std::string emit_set(const ClosedSet& s) { return set_json(s).dump(); }

ClosedSet parse_set(const std::string& text) {
  return set_of(parse_text(text));
}

// ---------------------------------------------------------------------------
// TestFamily / ProbeFamily

std::string emit_test_family(const TestFamily& fam) {
  json probes = json::array();
  for (const auto& p : fam.probes()) {
    json e;
    e["x"] = vec_json(p.x);
    e["A"] = set_json(p.A);
    probes.push_back(std::move(e));
  }
  json j;
  j["probes"] = std::move(probes);
  return j.dump();
}

TestFamily parse_test_family(const std::string& text) {
  const json j = parse_text(text);
  const json& probes_json = field(j, "probes");
  if (!probes_json.is_array() || probes_json.empty()) {
    bad("probes must be a nonempty array");
  }
  std::vector<std::pair<Vector, ClosedSet>> probes;
  for (const auto& p : probes_json) {
    probes.emplace_back(vec_of(field(p, "x"), "probe x"),
                        set_of(field(p, "A")));
  }
  return checked("test family",
                 [&] { return TestFamily::of(std::move(probes)); });
}

std::string emit_probe_family(const ProbeFamily& fam) {
  json probes = json::array();
  for (const auto& p : fam.probes()) {
    json e;
    e["x"] = vec_json(p.x);
    e["E"] = set_json(p.e);
    probes.push_back(std::move(e));
  }
  json j;
  j["probes"] = std::move(probes);
  return j.dump();
}

ProbeFamily parse_probe_family(const std::string& text) {
  const json j = parse_text(text);
  const json& probes_json = field(j, "probes");
  if (!probes_json.is_array() || probes_json.empty()) {
    bad("probes must be a nonempty array");
  }
  std::vector<std::pair<Vector, ClosedSet>> probes;
  for (const auto& p : probes_json) {
    probes.emplace_back(vec_of(field(p, "x"), "probe x"),
                        set_of(field(p, "E")));
  }
  return checked("probe family",
                 [&] { return ProbeFamily::of(std::move(probes)); });
}

// ---------------------------------------------------------------------------
// Operators

std::string emit_operator(const Operator& op) {
  return operator_json(op).dump();
}

Operator parse_operator(const std::string& text) {
  return operator_of(parse_text(text));
}

std::string emit_operator_set(const OperatorSet& s) {
  json j;
  if (s.is_empty()) {
    j["type"] = "empty";
  } else if (const auto* fin = s.as<FiniteOpSet>()) {
    j["type"] = "finite";
    json ops = json::array();
    for (const auto& op : fin->ops) ops.push_back(operator_json(op));
    j["ops"] = std::move(ops);
  } else if (const auto* ball = s.as<OpBall>()) {
    j["type"] = "ball";
    j["center"] = operator_json(ball->center);
    j["radius"] = ball->radius;
    j["sample_size"] = ball->sample_size;
    j["seed"] = ball->seed;
  } else {
    throw std::logic_error("unhandled operator-set variant");
  }
  return j.dump();
}

OperatorSet parse_operator_set(const std::string& text) {
  const json j = parse_text(text);
  const std::string type = str(field(j, "type"), "operator-set type");
  if (type == "empty") return OperatorSet::empty();
  if (type == "finite") {
    const json& ops_json = field(j, "ops");
    if (!ops_json.is_array() || ops_json.empty()) {
      bad("ops must be a nonempty array");
    }
    std::vector<Operator> ops;
    for (const auto& op : ops_json) ops.push_back(operator_of(op));
    return checked("operator set",
                   [&] { return OperatorSet::finite(std::move(ops)); });
  }
  if (type == "ball") {
    Operator center = operator_of(field(j, "center"));
    const double radius = number(field(j, "radius"), "radius");
    int sample_size = 64;
    std::uint64_t seed = 2024;
    if (j.contains("sample_size")) {
      sample_size = static_cast<int>(number(j["sample_size"], "sample_size"));
    }
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
        bad("seed must be an integer");
      }
      seed = j["seed"].get<std::uint64_t>();
    }
    return checked("operator ball", [&] {
      return OperatorSet::op_ball(std::move(center), radius, sample_size,
                                  seed);
    });
  }
  bad("unknown operator-set type '" + type + "'");
}

// ---------------------------------------------------------------------------
// Scenario

VectorField Scenario::field() const {
  if (affine) return VectorField::affine(lin, drift);
  const auto dim = a0.dimension();
  if (!dim) {
    throw std::invalid_argument("scenario A0 must have a dimension");
  }
  if (builtin == "rotation") {
    if (*dim != 2) {
      throw std::invalid_argument("builtin rotation requires dimension 2");
    }
    return VectorField::rotation90();
  }
  if (builtin == "zero") return VectorField::zero(*dim);
  if (builtin == "identity") return VectorField::identity(*dim);
  throw std::invalid_argument("unknown builtin field '" + builtin + "'");
}

std::string emit_scenario(const Scenario& sc) {
  json j;
  json f;
  if (sc.affine) {
    json aff;
    aff["L"] = vec_list_json(sc.lin);
    aff["b"] = vec_json(sc.drift);
    f["affine"] = std::move(aff);
  } else {
    f["builtin"] = sc.builtin;
  }
  j["field"] = std::move(f);
  j["A0"] = set_json(sc.a0);
  j["t_end"] = sc.t_end;
  j["h"] = sc.config.h;
  j["picard_tol"] = sc.config.picard_tol;
  j["max_picard_iters"] = sc.config.max_picard_iters;
  j["hull_prune_eps"] = sc.config.hull_prune_eps;
  return j.dump();
}

Scenario parse_scenario(const std::string& text) {
  const json j = parse_text(text);
  Scenario sc;
  const json& f = field(j, "field");
  if (f.contains("affine")) {
    const json& aff = f["affine"];
    sc.affine = true;
    sc.lin = matrix_of(field(aff, "L"), "field matrix L");
    sc.drift = vec_of(field(aff, "b"), "field drift b");
    if (sc.drift.size() != sc.lin.size()) {
      bad("field drift b must match the dimension of L");
    }
  } else if (f.contains("builtin")) {
    sc.affine = false;
    sc.builtin = str(f["builtin"], "builtin field name");
  } else {
    bad("field must contain 'affine' or 'builtin'");
  }
  sc.a0 = set_of(field(j, "A0"));
  sc.t_end = number(field(j, "t_end"), "t_end");
  sc.config.h = number(field(j, "h"), "h");
  if (!(sc.config.h > 0.0)) bad("h must be positive");
  if (j.contains("picard_tol")) {
    sc.config.picard_tol = number(j["picard_tol"], "picard_tol");
    if (!(sc.config.picard_tol > 0.0)) bad("picard_tol must be positive");
  }
  if (j.contains("max_picard_iters")) {
    sc.config.max_picard_iters =
        static_cast<int>(number(j["max_picard_iters"], "max_picard_iters"));
    if (sc.config.max_picard_iters <= 0) {
      bad("max_picard_iters must be positive");
    }
  }
  if (j.contains("hull_prune_eps")) {
    sc.config.hull_prune_eps =
        number(j["hull_prune_eps"], "hull_prune_eps");
    if (sc.config.hull_prune_eps < 0.0) {
      bad("hull_prune_eps must be nonnegative");
    }
  }
  // Materialization validates the builtin name and dimension coherence.
  checked("scenario field", [&] { return sc.field(); });
  return sc;
}

// ---------------------------------------------------------------------------
// Order toolkit

std::string emit_poset(const PosetInput& p) {
  json j;
  json elems = json::array();
  for (const auto& id : p.order.elements()) elems.push_back(id);
  j["elements"] = std::move(elems);
  json less = json::array();
  const std::size_t n = p.order.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (p.order.less(a, b)) {
        less.push_back(json::array(
            {p.order.elements()[a], p.order.elements()[b]}));
      }
    }
  }
  j["less"] = std::move(less);
  if (!p.positions.empty()) {
    json pos;
    for (const auto& [id, x] : p.positions) pos[id] = x;
    j["positions"] = std::move(pos);
  }
  return j.dump();
}

PosetInput parse_poset(const std::string& text) {
  const json j = parse_text(text);
  const json& elems_json = field(j, "elements");
  if (!elems_json.is_array()) bad("elements must be an array of ids");
  std::vector<std::string> elements;
  for (const auto& e : elems_json) elements.push_back(str(e, "element id"));
  const json& less_json = field(j, "less");
  if (!less_json.is_array()) bad("less must be an array of id pairs");
  std::vector<std::pair<std::string, std::string>> less;
  for (const auto& pair : less_json) {
    if (!pair.is_array() || pair.size() != 2) {
      bad("each less entry must be a two-element array");
    }
    less.emplace_back(str(pair[0], "less id"), str(pair[1], "less id"));
  }
  IntervalOrder order = checked(
      "poset", [&] { return IntervalOrder::make(std::move(elements), less); });
  std::map<std::string, double> positions;
  if (j.contains("positions")) {
    const json& pos = j["positions"];
    if (!pos.is_object()) bad("positions must be an object");
    for (const auto& [id, x] : pos.items()) {
      positions[id] = number(x, "position");
    }
  }
  return PosetInput{std::move(order), std::move(positions)};
}

std::string emit_chains(const ChainFamily& fam) {
  json j;
  json chains = json::array();
  for (const auto& chain : fam.chains) {
    json c = json::array();
    for (const auto& id : chain) c.push_back(id);
    chains.push_back(std::move(c));
  }
  j["chains"] = std::move(chains);
  if (!fam.bounds.empty()) {
    json bounds;
    for (const auto& [idx, lohi] : fam.bounds) {
      bounds[std::to_string(idx)] =
          json::array({lohi.first, lohi.second});
    }
    j["bounds"] = std::move(bounds);
  }
  return j.dump();
}

ChainFamily parse_chains(const std::string& text) {
  const json j = parse_text(text);
  const json& chains_json = field(j, "chains");
  if (!chains_json.is_array() || chains_json.empty()) {
    bad("chains must be a nonempty array");
  }
  std::vector<std::vector<std::string>> chains;
  for (const auto& chain : chains_json) {
    if (!chain.is_array()) bad("each chain must be an array of ids");
    std::vector<std::string> ids;
    for (const auto& id : chain) ids.push_back(str(id, "chain id"));
    chains.push_back(std::move(ids));
  }
  std::map<std::size_t, std::pair<double, double>> bounds;
  if (j.contains("bounds")) {
    const json& bounds_json = j["bounds"];
    if (!bounds_json.is_object()) bad("bounds must be an object");
    for (const auto& [key, lohi] : bounds_json.items()) {
      std::size_t idx = 0;
      try {
        idx = static_cast<std::size_t>(std::stoul(key));
      } catch (const std::exception&) {
        bad("bounds keys must be chain indices");
      }
      if (!lohi.is_array() || lohi.size() != 2) {
        bad("each bound must be a two-element array");
      }
      bounds[idx] = {number(lohi[0], "bound"), number(lohi[1], "bound")};
    }
  }
  return checked("chain family", [&] {
    return bounds.empty()
               ? ChainFamily::of(std::move(chains))
               : ChainFamily::with_bounds(std::move(chains), std::move(bounds));
  });
}

std::string emit_function(const FunctionOnT& f) {
  json j;
  json values;
  for (const auto& [id, v] : f.values) values[id] = v;
  j["values"] = std::move(values);
  json phi;
  for (const auto& [id, w] : f.phi) phi[id] = w;
  j["phi"] = std::move(phi);
  return j.dump();
}

FunctionOnT parse_function(const std::string& text) {
  const json j = parse_text(text);
  const json& values_json = field(j, "values");
  if (!values_json.is_object()) bad("values must be an id-to-value object");
  std::map<std::string, double> values;
  for (const auto& [id, v] : values_json.items()) {
    values[id] = number(v, "function value");
  }
  if (j.contains("phi")) {
    const json& phi_json = j["phi"];
    if (!phi_json.is_object()) bad("phi must be an id-to-weight object");
    std::map<std::string, double> phi;
    for (const auto& [id, w] : phi_json.items()) {
      phi[id] = number(w, "phi weight");
    }
    return checked("function", [&] {
      return FunctionOnT::weighted(std::move(values), std::move(phi));
    });
  }
  return checked("function",
                 [&] { return FunctionOnT::of(std::move(values)); });
}

// ---------------------------------------------------------------------------
// Reports and trajectories

std::string emit_suite_report(const SuiteReport& report) {
  json j;
  j["all_pass"] = report.all_pass();
  json checks = json::array();
  for (const auto& check : report.checks) {
    json c;
    c["name"] = check.name;
    c["pass"] = check.pass;
    if (std::isfinite(check.worst_violation)) {
      c["worst_violation"] = check.worst_violation;
    } else {
      c["worst_violation"] = "inf";
    }
    c["witness"] = check.witness;
    c["evaluated"] = check.evaluated;
    c["skipped"] = check.skipped;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  return j.dump();
}

namespace {

std::vector<Vector> plot_vertices(const ClosedSet& s) {
  if (const auto* p = s.as<Polytope>()) return p->vertices;
  if (const auto* b = s.as<Ball>()) {
    if (b->center.size() == 1) {
      return {Vector{b->center[0] - b->radius},
              Vector{b->center[0] + b->radius}};
    }
    if (b->center.size() == 2) return inscribe_ball(*b, 64).vertices;
    return boundary_points(s, 8);
  }
  throw std::invalid_argument(
      "trajectory nodes must be polytopes or balls");
}

void csv_row(std::ostringstream& os, double t, std::size_t index,
             const Vector& x) {
  os << detail::fmt_num(t) << ',' << index;
  for (double xi : x) os << ',' << detail::fmt_num(xi);
  os << '\n';
}

}  // namespace

std::string trajectory_csv(const SetTrajectory& traj) {
  std::size_t dim = 0;
  if (!traj.sets.empty()) {
    dim = traj.sets.front().dimension().value_or(0);
  }
  std::ostringstream os;
  os << "t,vertex_index";
  for (std::size_t i = 1; i <= dim; ++i) os << ",x" << i;
  os << '\n';
  for (std::size_t node = 0; node < traj.size(); ++node) {
    const std::vector<Vector> verts = plot_vertices(traj.sets[node]);
    for (std::size_t k = 0; k < verts.size(); ++k) {
      csv_row(os, traj.times[node], k, verts[k]);
    }
  }
  return os.str();
}

std::string trajectory_csv(const PointTrajectory& traj) {
  const std::size_t dim =
      traj.states.empty() ? 0 : traj.states.front().size();
  std::ostringstream os;
  os << "t,vertex_index";
  for (std::size_t i = 1; i <= dim; ++i) os << ",x" << i;
  os << '\n';
  for (std::size_t node = 0; node < traj.times.size(); ++node) {
    csv_row(os, traj.times[node], 0, traj.states[node]);
  }
  return os.str();
}

}  // namespace kappa::io
