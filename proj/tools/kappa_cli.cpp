// kappa — batch frontend for the kappa-norm library.
//
// Commands: axioms, distance, duality, opnorm, ode, order.  Inputs are JSON
// files, reports are JSON (stdout or --out); ODE trajectories are written as
// plot-ready CSV next to the report.  Exit codes: 0 ok, 1 computation error
// (diagnostic JSON on stderr), 2 usage error, 3 schema violation, 4 I/O
// failure.  Reports are byte-stable for identical invocations and seeds;
// wall time goes to stderr so it never perturbs the report bytes.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kappa/axiom_suite.hpp"
#include "kappa/closed_set.hpp"
#include "kappa/duality.hpp"
#include "kappa/json_io.hpp"
#include "kappa/kappa_norm.hpp"
#include "kappa/operator_norm.hpp"
#include "kappa/order_rep.hpp"
#include "kappa/set_flow.hpp"
#include "nlohmann/json.hpp"

namespace {

using nlohmann::json;
using namespace kappa;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoFailure("failed reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoFailure("failed writing '" + path + "'");
}

// Non-finite results are emitted as the string "inf" (JSON numbers cannot
// carry infinity, and null would be ambiguous).
json num_or_inf(double v) {
  return std::isfinite(v) ? json(v) : json("inf");
}

json suite_json(const SuiteReport& report) {
  return json::parse(io::emit_suite_report(report));
}

json set_summary_json(const ClosedSet& s) {
  return json::parse(io::emit_set(s));
}

json parse_json_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw io::SchemaError(std::string(what) + ": malformed JSON: " + e.what());
  }
}

const json& field_of(const json& j, const char* key, const char* what) {
  if (!j.is_object()) {
    throw io::SchemaError(std::string(what) + " must be a JSON object");
  }
  auto it = j.find(key);
  if (it == j.end()) {
    throw io::SchemaError(std::string(what) + ": missing field '" + key + "'");
  }
  return *it;
}

Vector vector_of(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw io::SchemaError(std::string(what) +
                          " must be a nonempty array of numbers");
  }
  Vector v;
  for (const auto& x : j) {
    if (!x.is_number()) {
      throw io::SchemaError(std::string(what) + " must contain numbers only");
    }
    v.push_back(x.get<double>());
  }
  return v;
}

std::map<std::string, double> number_map_of(const json& j, const char* what) {
  if (!j.is_object()) {
    throw io::SchemaError(std::string(what) + " must be an object of numbers");
  }
  std::map<std::string, double> out;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) {
      throw io::SchemaError(std::string(what) + ": '" + key +
                            "' must be a number");
    }
    out[key] = value.get<double>();
  }
  return out;
}

void emit_report(const std::string& command, json config, json results,
                 const std::string& out_path) {
  json report;
  report["command"] = command;
  report["config"] = std::move(config);
  report["results"] = std::move(results);
  report["version"] = "0.1.0";
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
}

// ---------------------------------------------------------------------------
// Command handlers: each returns the results payload.

json run_axioms(std::uint64_t seed, std::size_t dim, int instances) {
  SuiteConfig cfg;
  cfg.seed = seed;
  cfg.dimension = dim;
  cfg.instances = instances;
  cfg.tolerance = 1e-9;
  json results;
  results["rho_suite"] = suite_json(axiom_suite(
      [](const Vector& x, const ClosedSet& c) { return rho(x, c); }, cfg));
  results["duality_suite"] = suite_json(duality_axiom_suite(cfg));
  SuiteConfig op_cfg = cfg;
  op_cfg.tolerance = 1e-8;
  results["operator_suite"] = suite_json(operator_axiom_suite(op_cfg));
  return results;
}

json run_distance(const std::string& a_path, const std::string& b_path,
                  const std::string& metric) {
  const ClosedSet a = io::parse_set(read_file(a_path));
  const ClosedSet b = io::parse_set(read_file(b_path));
  json results;
  if (metric == "rho") {
    const auto* p = a.as<Polytope>();
    if (p == nullptr || p->vertices.size() != 1) {
      throw std::invalid_argument(
          "--metric rho requires --a to be a one-point polytope");
    }
    results["value"] = num_or_inf(rho(p->vertices[0], b));
  } else if (metric == "rhobar") {
    const RhoBarDetail detail = rho_bar_detailed(a, b);
    results["value"] = num_or_inf(detail.value);
    results["exact"] = detail.exact;
    results["resolution"] = num_or_inf(detail.resolution);
  } else {  // D
    results["value"] = num_or_inf(metric_d(a, b));
    results["rho_bar_ab"] = num_or_inf(rho_bar(a, b));
    results["rho_bar_ba"] = num_or_inf(rho_bar(b, a));
  }
  return results;
}

json run_duality(const std::string& input_path, std::uint64_t seed) {
  const json in = parse_json_text(read_file(input_path), "duality input");
  const Vector x = vector_of(field_of(in, "x", "duality input"), "x");
  const Vector y = vector_of(field_of(in, "y", "duality input"), "y");
  if (x.size() != y.size()) {
    throw io::SchemaError("duality input: x and y must share a dimension");
  }
  const ClosedSet a =
      io::parse_set(field_of(in, "A", "duality input").dump());
  const ClosedSet b =
      io::parse_set(field_of(in, "B", "duality input").dump());

  json results;
  results["kappa_form"] = num_or_inf(kappa_form(x, a, y, b));
  const KappaValue rho_x = rho(x, a);
  const KappaValue rho_y = rho(y, b);
  results["rho_x"] = num_or_inf(rho_x);
  results["rho_y"] = num_or_inf(rho_y);
  results["product_bound"] = num_or_inf(rho_x * rho_y);

  const TestFamily family = TestFamily::default_family(seed, x.size());
  results["dual_norm_y"] = num_or_inf(dual_kappa_norm_sampled(y, b, family));
  results["rho_tilde_x"] = num_or_inf(rho_tilde_sampled(x, a, family));

  const auto polar_or_note = [](const ClosedSet& s) -> json {
    try {
      return set_summary_json(polar(s));
    } catch (const std::invalid_argument& e) {
      return json{{"error", e.what()}};
    }
  };
  results["polar_a"] = polar_or_note(a);
  results["polar_b"] = polar_or_note(b);
  return results;
}

json run_opnorm(const std::string& a_path, const std::string& b_path,
                const std::string& input_path, std::uint64_t seed) {
  const Operator a = io::parse_operator(read_file(a_path));
  const OperatorSet s = io::parse_operator_set(read_file(b_path));
  const ProbeFamily family =
      input_path.empty()
          ? ProbeFamily::default_family(seed, a.dim())
          : io::parse_probe_family(read_file(input_path));
  const RhoLDetail detail = rho_L_sampled_detailed(a, s, family);
  json results;
  results["rho_L"] = num_or_inf(detail.value);
  results["refined"] = num_or_inf(detail.refined);
  results["inner_exact"] = detail.inner_exact;
  results["probes"] = family.probes().size();
  return results;
}

json run_ode(io::Scenario sc, const std::string& out_path) {
  const VectorField f = sc.field();
  json results;
  std::string csv;
  const auto* p = sc.a0.as<Polytope>();
  if (p != nullptr && p->vertices.size() == 1) {
    const PointTrajectory traj =
        solve_point_ode(f, p->vertices[0], sc.t_end, sc.config);
    results["type"] = "point";
    results["nodes"] = traj.times.size();
    json final_state = json::array();
    for (double xi : traj.states.back()) final_state.push_back(xi);
    results["final"] = std::move(final_state);
    csv = io::trajectory_csv(traj);
  } else {
    const SetOdeResult r = solve_set_ode(f, sc.a0, sc.t_end, sc.config);
    results["type"] = "set";
    results["nodes"] = r.trajectory.size();
    results["final_bounding_radius"] =
        num_or_inf(bounding_radius(r.trajectory.sets.back()));
    json diag;
    diag["c_hat"] = num_or_inf(r.diagnostics.c_hat);
    diag["segments"] = r.diagnostics.segments;
    diag["picard_iterations"] = r.diagnostics.picard_iterations;
    diag["final_residuals"] = json::array();
    for (double res : r.diagnostics.final_residuals) {
      diag["final_residuals"].push_back(num_or_inf(res));
    }
    diag["f_zero_hypothesis_ok"] = r.diagnostics.f_zero_hypothesis_ok;
    diag["converged"] = r.diagnostics.converged;
    results["diagnostics"] = std::move(diag);
    csv = io::trajectory_csv(r.trajectory);
  }
  if (!out_path.empty()) {
    std::filesystem::path csv_path(out_path);
    csv_path.replace_extension(".csv");
    write_file(csv_path.string(), csv);
    results["trajectory_csv"] = csv_path.string();
  }
  return results;
}

json run_order(const std::string& mode, const std::string& input_path) {
  json results;
  if (mode == "check" || mode == "represent") {
    const io::PosetInput pin = io::parse_poset(read_file(input_path));
    if (mode == "check") {
      results["interval_order"] = check_interval_order(pin.order);
      return results;
    }
    const Representation rep = find_representation(pin.order);
    json v, sigma;
    for (const auto& [id, value] : rep.v) v[id] = value;
    for (const auto& [id, value] : rep.sigma) sigma[id] = value;
    results["v"] = std::move(v);
    results["sigma"] = std::move(sigma);
    results["verified"] = verify_representation(pin.order, rep);
    return results;
  }
  const json in = parse_json_text(read_file(input_path), "order input");
  const FunctionOnT g =
      io::parse_function(field_of(in, "function", "order input").dump());
  if (mode == "project") {
    const ChainFamily chains =
        io::parse_chains(field_of(in, "chains", "order input").dump());
    const ProjectionResult r = monotone_project_sup(g, chains);
    json projection;
    for (const auto& [id, value] : r.projection.values) projection[id] = value;
    results["projection"] = std::move(projection);
    results["distance"] = num_or_inf(r.distance);
    return results;
  }
  // fit
  const std::map<std::string, double> positions = number_map_of(
      field_of(in, "positions", "order input"), "order input positions");
  const json& c1_json = field_of(in, "c1", "order input");
  const json& c2_json = field_of(in, "c2", "order input");
  if (!c1_json.is_number() || !c2_json.is_number()) {
    throw io::SchemaError("order input: c1 and c2 must be numbers");
  }
  const FitResult r =
      constrained_fit(g, positions, c1_json.get<double>(),
                      c2_json.get<double>());
  json fit;
  for (const auto& [id, value] : r.fit.values) fit[id] = value;
  results["fit"] = std::move(fit);
  results["epsilon"] = num_or_inf(r.epsilon);
  return results;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kappa-norm toolkit: set distances, duality, operator norms, "
               "set-valued ODEs and interval orders"};
  app.require_subcommand(1);

  // axioms
  auto* axioms = app.add_subcommand(
      "axioms", "Run the randomized axiom suites and report per-axiom results");
  std::uint64_t ax_seed = 0;
  std::size_t ax_dim = 2;
  int ax_instances = 200;
  std::string ax_out;
  axioms->add_option("--seed", ax_seed, "RNG seed")->required();
  axioms->add_option("--dim", ax_dim, "ambient dimension")
      ->check(CLI::Range(std::size_t{1}, std::size_t{3}));
  axioms->add_option("--instances", ax_instances, "instances per check")
      ->check(CLI::PositiveNumber);
  axioms->add_option("--out", ax_out, "report path (default stdout)");

  // distance
  auto* distance = app.add_subcommand(
      "distance", "Evaluate rho, directed rho-bar or the metric D");
  std::string d_a, d_b, d_metric = "D", d_out;
  distance->add_option("--a", d_a, "first set (JSON file)")->required();
  distance->add_option("--b", d_b, "second set (JSON file)")->required();
  distance->add_option("--metric", d_metric, "one of rho, rhobar, D")
      ->check(CLI::IsMember({"rho", "rhobar", "D"}));
  distance->add_option("--out", d_out, "report path (default stdout)");

  // duality
  auto* duality = app.add_subcommand(
      "duality", "Evaluate the kappa-form, sampled dual norms and polars");
  std::string du_input, du_out;
  std::uint64_t du_seed = 0;
  duality->add_option("--input", du_input,
                      "JSON file with fields x, A, y, B")->required();
  duality->add_option("--seed", du_seed, "seed for the default test family")
      ->required();
  duality->add_option("--out", du_out, "report path (default stdout)");

  // opnorm
  auto* opnorm = app.add_subcommand(
      "opnorm", "Evaluate the sampled conditional operator norm rho_L");
  std::string op_a, op_b, op_input, op_out;
  std::uint64_t op_seed = 0;
  opnorm->add_option("--a", op_a, "operator (JSON file)")->required();
  opnorm->add_option("--b", op_b, "operator set (JSON file)")->required();
  opnorm->add_option("--input", op_input, "probe family (JSON file)");
  auto* op_seed_opt = opnorm->add_option(
      "--seed", op_seed, "seed for the default probe family");
  opnorm->add_option("--out", op_out, "report path (default stdout)");

  // ode
  auto* ode = app.add_subcommand(
      "ode", "Solve the point or set ODE of a scenario file");
  // --h is a documented flag; free the default -h short form first.
  ode->set_help_flag("--help", "print this help message and exit");
  std::string ode_input, ode_out;
  double ode_h = 0.0, ode_tend = 0.0;
  ode->add_option("--input", ode_input, "scenario (JSON file)")->required();
  auto* ode_h_opt = ode->add_option("--h", ode_h, "grid step override")
                        ->check(CLI::PositiveNumber);
  auto* ode_tend_opt =
      ode->add_option("--tend", ode_tend, "end time override")
          ->check(CLI::PositiveNumber);
  ode->add_option("--out", ode_out,
                  "report path; the trajectory CSV lands next to it");

  // order
  auto* order = app.add_subcommand(
      "order", "Interval-order checks, representations, projections, fits");
  std::string or_mode, or_input, or_out;
  order->add_option("mode", or_mode, "check | represent | project | fit")
      ->required()
      ->check(CLI::IsMember({"check", "represent", "project", "fit"}));
  order->add_option("--input", or_input, "input (JSON file)")->required();
  order->add_option("--out", or_out, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  if (opnorm->parsed() && op_input.empty() && op_seed_opt->count() == 0) {
    std::cerr << "opnorm: --seed is required when --input is not given"
              << std::endl;
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (axioms->parsed()) {
      json config{{"seed", ax_seed},
                  {"dim", ax_dim},
                  {"instances", ax_instances},
                  {"tolerance", 1e-9},
                  {"operator_tolerance", 1e-8}};
      emit_report("axioms", std::move(config),
                  run_axioms(ax_seed, ax_dim, ax_instances), ax_out);
    } else if (distance->parsed()) {
      json config{{"a", d_a}, {"b", d_b}, {"metric", d_metric}};
      emit_report("distance", std::move(config),
                  run_distance(d_a, d_b, d_metric), d_out);
    } else if (duality->parsed()) {
      json config{{"input", du_input}, {"seed", du_seed}};
      emit_report("duality", std::move(config),
                  run_duality(du_input, du_seed), du_out);
    } else if (opnorm->parsed()) {
      json config{{"a", op_a}, {"b", op_b}};
      if (!op_input.empty()) config["input"] = op_input;
      if (op_seed_opt->count() > 0) config["seed"] = op_seed;
      emit_report("opnorm", std::move(config),
                  run_opnorm(op_a, op_b, op_input, op_seed), op_out);
    } else if (ode->parsed()) {
      io::Scenario sc = io::parse_scenario(read_file(ode_input));
      if (ode_h_opt->count() > 0) sc.config.h = ode_h;
      if (ode_tend_opt->count() > 0) sc.t_end = ode_tend;
      json config{{"input", ode_input},
                  {"h", sc.config.h},
                  {"t_end", sc.t_end},
                  {"picard_tol", sc.config.picard_tol},
                  {"max_picard_iters", sc.config.max_picard_iters}};
      emit_report("ode", std::move(config), run_ode(std::move(sc), ode_out),
                  ode_out);
    } else if (order->parsed()) {
      json config{{"mode", or_mode}, {"input", or_input}};
      emit_report("order", std::move(config), run_order(or_mode, or_input),
                  or_out);
    }
  } catch (const io::SchemaError& e) {
    std::cerr << json{{"error", e.what()}, {"kind", "schema"}}.dump()
              << std::endl;
    return 3;
  } catch (const IoFailure& e) {
    std::cerr << json{{"error", e.what()}, {"kind", "io"}}.dump()
              << std::endl;
    return 4;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}, {"kind", "computation"}}.dump()
              << std::endl;
    return 1;
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(
      std::chrono::steady_clock::now() - start);
  std::fprintf(stderr, "wall_time_ms=%.1f\n", elapsed.count());
  return 0;
}
