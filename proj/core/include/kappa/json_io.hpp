#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kappa/axiom_suite.hpp"
#include "kappa/closed_set.hpp"
#include "kappa/duality.hpp"
#include "kappa/operator_norm.hpp"
#include "kappa/order_rep.hpp"
#include "kappa/set_flow.hpp"

namespace kappa::io {

// Malformed JSON text, or well-formed JSON whose values violate an input
// schema (wrong types, missing fields, out-of-range values).
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ClosedSet:
//   {"type":"ball","center":[...],"radius":r,"norm":"l2"}
// | {"type":"polytope","vertices":[[...],...]}
// | {"type":"subspace","basis":[[...],...],"offset":[...]}
// | {"type":"union","parts":[...]}
// | {"type":"empty"}
std::string emit_set(const ClosedSet& s);
ClosedSet parse_set(const std::string& text);

// TestFamily: {"probes":[{"A":<ClosedSet>,"x":[...]},...]}
std::string emit_test_family(const TestFamily& fam);
TestFamily parse_test_family(const std::string& text);

// Operator: {"matrix":[[...],...]}
std::string emit_operator(const Operator& op);
Operator parse_operator(const std::string& text);

// OperatorSet mirrors the variants:
//   {"type":"finite","ops":[{"matrix":...},...]}
// | {"type":"ball","center":{"matrix":...},"radius":r,
//    "sample_size":m,"seed":s}
// | {"type":"empty"}
std::string emit_operator_set(const OperatorSet& s);
OperatorSet parse_operator_set(const std::string& text);

// ProbeFamily: {"probes":[{"E":<ClosedSet>,"x":[...]},...]}
std::string emit_probe_family(const ProbeFamily& fam);
ProbeFamily parse_probe_family(const std::string& text);

// Set-flow scenario:
//   {"field":{"affine":{"L":[[...]],"b":[...]}} or {"builtin":"rotation"},
//    "A0":<ClosedSet>, "t_end":t, "h":h, "picard_tol":tol}
struct Scenario {
  bool affine = false;
  Matrix lin;           // when affine
  Vector drift;         // when affine
  std::string builtin;  // "rotation" | "zero" | "identity" otherwise
  ClosedSet a0 = ClosedSet::empty();
  double t_end = 1.0;
  SolverConfig config;

  // Materializes the vector field; dimension is taken from A0.
  VectorField field() const;
};

std::string emit_scenario(const Scenario& sc);
Scenario parse_scenario(const std::string& text);

// Poset: {"elements":[...], "less":[["a","b"],...],
//         "positions":{...}} (positions optional).
struct PosetInput {
  IntervalOrder order;
  std::map<std::string, double> positions;
};

std::string emit_poset(const PosetInput& p);
PosetInput parse_poset(const std::string& text);

// ChainFamily: {"chains":[["a","b"],...], "bounds":{"0":[lo,hi],...}}
// (bounds optional, keyed by chain index).
std::string emit_chains(const ChainFamily& fam);
ChainFamily parse_chains(const std::string& text);

// FunctionOnT: {"values":{...}, "phi":{...}} (phi optional, default 1).
std::string emit_function(const FunctionOnT& f);
FunctionOnT parse_function(const std::string& text);

// Axiom-suite report (output only): {"all_pass":b, "checks":[{"name":...,
// "pass":..., "worst_violation":..., "witness":...},...]}.  Non-finite
// violations are emitted as the string "inf".
std::string emit_suite_report(const SuiteReport& report);

// Plot-ready trajectory CSV with header t,vertex_index,x1..xd.  Balls are
// rendered by boundary vertices, polytopes by their vertex lists.
std::string trajectory_csv(const SetTrajectory& traj);
std::string trajectory_csv(const PointTrajectory& traj);

}  // namespace kappa::io
