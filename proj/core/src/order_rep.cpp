#include "kappa/order_rep.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kappa {

namespace {

constexpr double kBig = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) fail(std::string(what) + " must be finite");
}

}  // namespace

// ---------------------------------------------------------------------------
// IntervalOrder

IntervalOrder IntervalOrder::make(
    std::vector<std::string> elements,
    const std::vector<std::pair<std::string, std::string>>& less_pairs) {
  const std::size_t n = elements.size();
  if (n > 64) fail("IntervalOrder supports at most 64 elements");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(elements[i], i).second) {
      fail("duplicate element id '" + elements[i] + "'");
    }
  }
  std::vector<std::vector<bool>> less(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : less_pairs) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) {
      fail("relation references unknown element");
    }
    if (ia->second == ib->second) fail("relation must be irreflexive");
    less[ia->second][ib->second] = true;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!less[a][b]) continue;
      if (less[b][a]) fail("relation must be irreflexive (cycle of length 2)");
      for (std::size_t c = 0; c < n; ++c) {
        if (less[b][c] && !less[a][c]) {
          fail("relation must be transitive");
        }
      }
    }
  }
  IntervalOrder p;
  p.elements_ = std::move(elements);
  p.less_ = std::move(less);
  p.preds_.assign(n, 0);
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a = 0; a < n; ++a) {
      if (p.less_[a][b]) p.preds_[b] |= (std::uint64_t{1} << a);
    }
  }
  return p;
}

std::size_t IntervalOrder::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] == id) return i;
  }
  fail("unknown element id '" + id + "'");
}

bool check_interval_order(const IntervalOrder& p) {
  const std::size_t n = p.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!p.less(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d) {
          if (!p.less(c, d)) continue;
          if (!p.less(a, d) && !p.less(c, b)) return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Representation

Representation Representation::make(std::map<std::string, double> v,
                                    std::map<std::string, double> sigma) {
  if (v.size() != sigma.size()) fail("v and sigma must share their key set");
  for (const auto& [id, val] : v) {
    require_finite(val, "v");
    auto it = sigma.find(id);
    if (it == sigma.end()) fail("sigma missing id '" + id + "'");
    require_finite(it->second, "sigma");
    if (it->second < 0.0) fail("sigma must be nonnegative");
  }
  Representation r;
  r.v = std::move(v);
  r.sigma = std::move(sigma);
  return r;
}

Representation find_representation(const IntervalOrder& p) {
  if (!check_interval_order(p)) {
    fail("not an interval order: the relation contains a 2+2 pattern");
  }
  const std::size_t n = p.size();
  bool any_pair = false;
  for (std::size_t i = 0; i < n && !any_pair; ++i) {
    any_pair = p.pred_mask(i) != 0;
  }
  if (!any_pair) {
    // Antichain: nothing to separate, the all-zero representation verifies.
    std::map<std::string, double> v0;
    std::map<std::string, double> s0;
    for (const auto& id : p.elements()) {
      v0[id] = 0.0;
      s0[id] = 0.0;
    }
    return Representation::make(std::move(v0), std::move(s0));
  }
  // Distinct strict-predecessor sets, totally ordered by inclusion for an
  // interval order; rank in that chain is the left endpoint.
  std::vector<std::uint64_t> distinct;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t m = p.pred_mask(i);
    if (std::find(distinct.begin(), distinct.end(), m) == distinct.end()) {
      distinct.push_back(m);
    }
  }
  std::sort(distinct.begin(), distinct.end(),
            [](std::uint64_t a, std::uint64_t b) {
              const int pa = __builtin_popcountll(a);
              const int pb = __builtin_popcountll(b);
              return pa != pb ? pa < pb : a < b;
            });
  const std::size_t k = distinct.size();
  std::map<std::string, double> v;
  std::map<std::string, double> sigma;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t m = p.pred_mask(i);
    std::size_t left = 0;
    while (distinct[left] != m) ++left;
    // First distinct predecessor set containing i; i < j holds exactly when
    // the rank of pred(j) reaches this threshold.
    std::size_t right = k;
    for (std::size_t r = 0; r < k; ++r) {
      if (distinct[r] & (std::uint64_t{1} << i)) {
        right = r;
        break;
      }
    }
    // Integer scale 2*rank keeps "i < j iff right(i) < left(j)" strict.
    v[p.elements()[i]] = 2.0 * static_cast<double>(left);
    sigma[p.elements()[i]] =
        (2.0 * static_cast<double>(right) - 1.0) - 2.0 * static_cast<double>(left);
  }
  Representation rep = Representation::make(std::move(v), std::move(sigma));
  if (!verify_representation(p, rep)) {
    throw std::logic_error(
        "internal error: constructed representation failed verification");
  }
  return rep;
}

VerifyDetail verify_representation_detailed(const IntervalOrder& p,
                                            const Representation& r) {
  const std::size_t n = p.size();
  for (const auto& id : p.elements()) {
    if (r.v.find(id) == r.v.end() || r.sigma.find(id) == r.sigma.end()) {
      fail("representation missing element '" + id + "'");
    }
  }
  VerifyDetail detail;
  detail.min_margin = kBig;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const std::string& idx = p.elements()[x];
      const std::string& idy = p.elements()[y];
      const double rx = r.v.at(idx) + r.sigma.at(idx);
      const double ly = r.v.at(idy);
      // x < y must hold exactly when the interval of x ends strictly before
      // the interval of y begins.
      const double margin = p.less(x, y) ? ly - rx : rx - ly;
      if (margin < detail.min_margin) detail.min_margin = margin;
      const bool holds = p.less(x, y) ? (rx < ly) : !(rx < ly);
      if (!holds && detail.ok) {
        detail.ok = false;
        std::ostringstream os;
        os << "pair (" << idx << ", " << idy << "): "
           << (p.less(x, y) ? "ordered but intervals overlap"
                            : "unordered but intervals are separated");
        detail.witness = os.str();
      }
    }
  }
  if (detail.min_margin == kBig) detail.min_margin = 0.0;
  return detail;
}

bool verify_representation(const IntervalOrder& p, const Representation& r) {
  return verify_representation_detailed(p, r).ok;
}

// ---------------------------------------------------------------------------
// FunctionOnT / ChainFamily / ConstraintSet

FunctionOnT FunctionOnT::of(std::map<std::string, double> values) {
  std::map<std::string, double> phi;
  for (const auto& [id, val] : values) {
    require_finite(val, "function value");
    phi[id] = 1.0;
  }
  FunctionOnT f;
  f.values = std::move(values);
  f.phi = std::move(phi);
  return f;
}

FunctionOnT FunctionOnT::weighted(std::map<std::string, double> values,
                                  std::map<std::string, double> phi) {
  if (values.size() != phi.size()) fail("phi must share the value key set");
  for (const auto& [id, val] : values) {
    require_finite(val, "function value");
    auto it = phi.find(id);
    if (it == phi.end()) fail("phi missing id '" + id + "'");
    require_finite(it->second, "phi");
    if (it->second <= 0.0) fail("phi must be strictly positive");
  }
  FunctionOnT f;
  f.values = std::move(values);
  f.phi = std::move(phi);
  return f;
}

double seminorm(const FunctionOnT& f) {
  double best = 0.0;
  for (const auto& [id, val] : f.values) {
    best = std::max(best, std::abs(val) * f.phi.at(id));
  }
  return best;
}

ChainFamily ChainFamily::of(std::vector<std::vector<std::string>> chains) {
  for (const auto& chain : chains) {
    if (chain.empty()) fail("chains must be nonempty");
    std::set<std::string> seen(chain.begin(), chain.end());
    if (seen.size() != chain.size()) {
      fail("chain elements must be distinct");
    }
  }
  ChainFamily fam;
  fam.chains = std::move(chains);
  return fam;
}

ChainFamily ChainFamily::with_bounds(
    std::vector<std::vector<std::string>> chains,
    std::map<std::size_t, std::pair<double, double>> bounds) {
  ChainFamily fam = ChainFamily::of(std::move(chains));
  for (const auto& [idx, lohi] : bounds) {
    if (idx >= fam.chains.size()) fail("bound references unknown chain");
    require_finite(lohi.first, "chain bound");
    require_finite(lohi.second, "chain bound");
    if (lohi.first > lohi.second) fail("chain bound must have lo <= hi");
  }
  fam.bounds = std::move(bounds);
  return fam;
}

ConstraintSet ConstraintSet::make(std::vector<ConstraintEntry> entries) {
  for (const auto& e : entries) {
    if (e.ids.empty()) fail("constraint entry must cover at least one id");
    if (e.targets.size() != e.ids.size() || e.weights.size() != e.ids.size()) {
      fail("constraint entry arrays must align");
    }
    if (!(e.radius >= 0.0)) fail("constraint radius must be nonnegative");
    for (double t : e.targets) require_finite(t, "constraint target");
    for (double w : e.weights) {
      require_finite(w, "constraint weight");
      if (w <= 0.0) fail("constraint weight must be strictly positive");
    }
  }
  ConstraintSet c;
  c.entries = std::move(entries);
  return c;
}

bool ConstraintSet::contains(const FunctionOnT& g) const {
  for (const auto& e : entries) {
    double dev = 0.0;
    for (std::size_t i = 0; i < e.ids.size(); ++i) {
      auto it = g.values.find(e.ids[i]);
      if (it == g.values.end()) {
        fail("function missing constrained id '" + e.ids[i] + "'");
      }
      dev = std::max(dev, std::abs(it->second - e.targets[i]) * e.weights[i]);
    }
    if (dev > e.radius) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Monotone projection

namespace {

struct Digraph {
  std::vector<std::string> ids;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<std::size_t>> succ;
  std::vector<std::vector<std::size_t>> pred;
};

// Nodes = given universe; edges = consecutive pairs of every chain.  Chain
// ids outside the universe are an error.
Digraph build_digraph(const std::vector<std::string>& universe,
                      const ChainFamily& chains) {
  Digraph g;
  g.ids = universe;
  for (std::size_t i = 0; i < g.ids.size(); ++i) g.index[g.ids[i]] = i;
  g.succ.assign(g.ids.size(), {});
  g.pred.assign(g.ids.size(), {});
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& chain : chains.chains) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      auto a = g.index.find(chain[i]);
      auto b = g.index.find(chain[i + 1]);
      if (a == g.index.end() || b == g.index.end()) {
        fail("chain references id outside the function domain");
      }
      if (seen.insert({a->second, b->second}).second) {
        g.succ[a->second].push_back(b->second);
        g.pred[b->second].push_back(a->second);
      }
    }
  }
  return g;
}

// Kahn topological order; empty result when the graph has a cycle.
std::vector<std::size_t> topo_order(const Digraph& g) {
  std::vector<std::size_t> indeg(g.ids.size(), 0);
  for (std::size_t v = 0; v < g.ids.size(); ++v) indeg[v] = g.pred[v].size();
  std::priority_queue<std::size_t, std::vector<std::size_t>,
                      std::greater<std::size_t>>
      ready;
  for (std::size_t v = 0; v < g.ids.size(); ++v) {
    if (indeg[v] == 0) ready.push(v);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::size_t w : g.succ[v]) {
      if (--indeg[w] == 0) ready.push(w);
    }
  }
  if (order.size() != g.ids.size()) order.clear();
  return order;
}

}  // namespace

ProjectionResult monotone_project_sup(const FunctionOnT& g,
                                      const ChainFamily& chains) {
  std::vector<std::string> universe;
  for (const auto& [id, val] : g.values) universe.push_back(id);
  const Digraph graph = build_digraph(universe, chains);
  const std::vector<std::size_t> order = topo_order(graph);
  if (order.empty() && !universe.empty()) {
    fail("generated order is cyclic; quotient equivalent elements first");
  }
  const std::size_t n = universe.size();
  std::vector<double> val(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) val[i] = g.values.at(graph.ids[i]);
  // Running max of g over predecessors-or-self, running min over
  // successors-or-self; the midpoint is the sup-norm projection onto the
  // monotone cone.
  std::vector<double> upper(val);
  for (std::size_t v : order) {
    for (std::size_t p : graph.pred[v]) {
      upper[v] = std::max(upper[v], upper[p]);
    }
  }
  std::vector<double> lower(val);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (std::size_t s : graph.succ[*it]) {
      lower[*it] = std::min(lower[*it], lower[s]);
    }
  }
  std::map<std::string, double> projected;
  double dist = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double star = 0.5 * (upper[i] + lower[i]);
    projected[graph.ids[i]] = star;
    dist = std::max(dist, std::abs(star - val[i]));
  }
  ProjectionResult out;
  out.projection.values = std::move(projected);
  out.projection.phi = g.phi;
  out.distance = dist;
  return out;
}

// ---------------------------------------------------------------------------
// Cone feasibility

namespace {

// Tarjan strongly connected components, iterative.
std::vector<std::size_t> scc_components(const Digraph& g,
                                        std::size_t* component_count) {
  const std::size_t n = g.ids.size();
  std::vector<std::size_t> comp(n, n);
  std::vector<std::size_t> low(n, 0);
  std::vector<std::size_t> disc(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t timer = 1;
  std::size_t count = 0;

  struct Frame {
    std::size_t v;
    std::size_t next_edge;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] != 0) continue;
    std::vector<Frame> frames{{root, 0}};
    disc[root] = low[root] = timer++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_edge < g.succ[f.v].size()) {
        const std::size_t w = g.succ[f.v][f.next_edge++];
        if (disc[w] == 0) {
          disc[w] = low[w] = timer++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        const std::size_t v = f.v;
        frames.pop_back();
        if (!frames.empty()) {
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
        if (low[v] == disc[v]) {
          while (true) {
            const std::size_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = count;
            if (w == v) break;
          }
          ++count;
        }
      }
    }
  }
  *component_count = count;
  return comp;
}

}  // namespace

FeasibilityResult cone_feasibility(const ConstraintSet& c,
                                   const ChainFamily& chains) {
  // Universe: every id mentioned by a constraint or a chain.
  std::set<std::string> id_set;
  for (const auto& e : c.entries) id_set.insert(e.ids.begin(), e.ids.end());
  for (const auto& chain : chains.chains) {
    id_set.insert(chain.begin(), chain.end());
  }
  std::vector<std::string> universe(id_set.begin(), id_set.end());
  const Digraph graph = build_digraph(universe, chains);
  const std::size_t n = universe.size();

  // Per-id interval from all covering constraints (and chain value bounds).
  std::vector<double> lo(n, -kBig);
  std::vector<double> hi(n, kBig);
  for (const auto& e : c.entries) {
    for (std::size_t i = 0; i < e.ids.size(); ++i) {
      const std::size_t v = graph.index.at(e.ids[i]);
      const double slack = e.radius / e.weights[i];
      lo[v] = std::max(lo[v], e.targets[i] - slack);
      hi[v] = std::min(hi[v], e.targets[i] + slack);
    }
  }
  for (const auto& [ci, lohi] : chains.bounds) {
    if (ci >= chains.chains.size()) fail("bound references unknown chain");
    for (const auto& id : chains.chains[ci]) {
      const std::size_t v = graph.index.at(id);
      lo[v] = std::max(lo[v], lohi.first);
      hi[v] = std::min(hi[v], lohi.second);
    }
  }
  FeasibilityResult out;
  for (std::size_t v = 0; v < n; ++v) {
    if (lo[v] > hi[v]) {
      out.feasible = false;
      out.note = "conflicting targets leave an empty value interval at '" +
                 graph.ids[v] + "'";
      return out;
    }
  }

  // Quotient cycles to equality classes, then propagate running lower
  // bounds through the condensation in topological order.
  std::size_t comp_count = 0;
  const std::vector<std::size_t> comp = scc_components(graph, &comp_count);
  std::vector<double> clo(comp_count, -kBig);
  std::vector<double> chi(comp_count, kBig);
  for (std::size_t v = 0; v < n; ++v) {
    clo[comp[v]] = std::max(clo[comp[v]], lo[v]);
    chi[comp[v]] = std::min(chi[comp[v]], hi[v]);
  }
  std::vector<std::set<std::size_t>> csucc(comp_count);
  std::vector<std::size_t> indeg(comp_count, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : graph.succ[v]) {
      if (comp[v] != comp[w] && csucc[comp[v]].insert(comp[w]).second) {
        ++indeg[comp[w]];
      }
    }
  }
  std::queue<std::size_t> ready;
  for (std::size_t k = 0; k < comp_count; ++k) {
    if (indeg[k] == 0) ready.push(k);
  }
  std::vector<double> level(clo);
  std::size_t processed = 0;
  std::vector<std::size_t> topo;
  while (!ready.empty()) {
    const std::size_t k = ready.front();
    ready.pop();
    topo.push_back(k);
    ++processed;
    for (std::size_t m : csucc[k]) {
      level[m] = std::max(level[m], level[k]);
      if (--indeg[m] == 0) ready.push(m);
    }
  }
  if (processed != comp_count) {
    throw std::logic_error("internal error: condensation is not acyclic");
  }
  for (std::size_t k : topo) {
    if (level[k] > chi[k]) {
      out.feasible = false;
      std::ostringstream os;
      os << "running lower bound " << level[k] << " exceeds upper bound "
         << chi[k] << " on an equality class";
      out.note = os.str();
      return out;
    }
  }

  // Witness: the running lower bound, with unconstrained-from-below classes
  // pinned to the smallest finite level (monotone by construction).
  double fallback = 0.0;
  bool have_finite = false;
  for (std::size_t k = 0; k < comp_count; ++k) {
    if (level[k] > -kBig) {
      fallback = have_finite ? std::min(fallback, level[k]) : level[k];
      have_finite = true;
    }
  }
  std::map<std::string, double> values;
  for (std::size_t v = 0; v < n; ++v) {
    const double lv = level[comp[v]];
    values[graph.ids[v]] = (lv > -kBig) ? lv : fallback;
  }
  FunctionOnT witness = FunctionOnT::of(std::move(values));

  // Re-verify by direct predicate evaluation before returning.
  if (!c.contains(witness)) {
    throw std::logic_error("internal error: witness violates a constraint");
  }
  for (const auto& chain : chains.chains) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      if (witness.values.at(chain[i]) > witness.values.at(chain[i + 1])) {
        throw std::logic_error("internal error: witness is not monotone");
      }
    }
  }
  out.feasible = true;
  out.witness = std::move(witness);
  return out;
}

// ---------------------------------------------------------------------------
// Constrained fit

namespace {

struct FitProblem {
  std::vector<std::string> ids;  // sorted by position
  std::vector<double> pos;
  std::vector<double> g;
};

// Forward window propagation along the position-sorted chain: one
// shortest-path relaxation sweep, exact on a chain of difference
// constraints.  Returns the per-point feasible windows, or empty on
// infeasibility.
bool propagate(const FitProblem& fp, double c1, double c2, double eps,
               std::vector<std::pair<double, double>>* windows) {
  const std::size_t n = fp.ids.size();
  windows->assign(n, {0.0, 0.0});
  (*windows)[0] = {fp.g[0] - eps, fp.g[0] + eps};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dx = fp.pos[i + 1] - fp.pos[i];
    double lo = (*windows)[i].first + c2 * dx;
    double hi = (*windows)[i].second + c1 * dx;
    lo = std::max(lo, fp.g[i + 1] - eps);
    hi = std::min(hi, fp.g[i + 1] + eps);
    if (lo > hi) return false;
    (*windows)[i + 1] = {lo, hi};
  }
  return true;
}

}  // namespace

FitResult constrained_fit(const FunctionOnT& g,
                          const std::map<std::string, double>& positions,
                          double c1, double c2) {
  if (!(c2 >= 0.0) || !(c1 >= 0.0)) {
    fail("slope bounds must be nonnegative");
  }
  if (c2 > c1) fail("infeasible slope bounds: C2 exceeds C1");
  FitProblem fp;
  for (const auto& [id, val] : g.values) {
    auto it = positions.find(id);
    if (it == positions.end()) fail("position missing for id '" + id + "'");
    require_finite(it->second, "position");
    fp.ids.push_back(id);
    fp.pos.push_back(it->second);
    fp.g.push_back(val);
  }
  std::vector<std::size_t> perm(fp.ids.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return fp.pos[a] < fp.pos[b];
  });
  FitProblem sorted;
  for (std::size_t i : perm) {
    sorted.ids.push_back(fp.ids[i]);
    sorted.pos.push_back(fp.pos[i]);
    sorted.g.push_back(fp.g[i]);
  }
  for (std::size_t i = 0; i + 1 < sorted.pos.size(); ++i) {
    if (sorted.pos[i] == sorted.pos[i + 1]) {
      fail("positions must be distinct");
    }
  }
  const std::size_t n = sorted.ids.size();
  if (n == 0) fail("function domain is empty");

  FitResult out;
  if (n == 1) {
    out.fit = g;
    out.epsilon = 0.0;
    return out;
  }

  double gmax = 0.0;
  for (double v : sorted.g) gmax = std::max(gmax, std::abs(v));
  const double diam = sorted.pos.back() - sorted.pos.front();
  double hi = gmax + c1 * diam;
  std::vector<std::pair<double, double>> windows;
  // The analytic bracket is always feasible; the doubling loop is a
  // defensive guard against rounding at the boundary.
  int guard = 0;
  while (!propagate(sorted, c1, c2, hi, &windows)) {
    hi = 2.0 * hi + 1.0;
    if (++guard > 64) {
      throw std::logic_error("internal error: no feasible bracket found");
    }
  }
  double lo = 0.0;
  if (propagate(sorted, c1, c2, 0.0, &windows)) {
    hi = 0.0;
  } else {
    for (int iter = 0; iter < 200 && hi - lo > 1e-9; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (propagate(sorted, c1, c2, mid, &windows)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  if (!propagate(sorted, c1, c2, hi, &windows)) {
    throw std::logic_error("internal error: certified epsilon infeasible");
  }

  // Backward extraction: each step intersects the forward window with the
  // slope cone from the already-fixed right neighbour; midpoints keep the
  // witness centred.
  std::vector<double> fitted(n, 0.0);
  fitted[n - 1] = 0.5 * (windows[n - 1].first + windows[n - 1].second);
  for (std::size_t i = n - 1; i-- > 0;) {
    const double dx = sorted.pos[i + 1] - sorted.pos[i];
    const double lo_i = std::max(windows[i].first, fitted[i + 1] - c1 * dx);
    const double hi_i = std::min(windows[i].second, fitted[i + 1] - c2 * dx);
    if (lo_i > hi_i) {
      throw std::logic_error("internal error: backward extraction failed");
    }
    fitted[i] = 0.5 * (lo_i + hi_i);
  }
  std::map<std::string, double> values;
  for (std::size_t i = 0; i < n; ++i) values[sorted.ids[i]] = fitted[i];
  out.fit.values = std::move(values);
  out.fit.phi = g.phi;
  out.epsilon = hi;
  return out;
}

ConstraintSet build_constraint_set(const FunctionOnT& f,
                                   const ChainFamily& chains,
                                   const std::vector<double>& radii) {
  if (radii.size() != chains.chains.size()) {
    fail("one radius per chain is required");
  }
  std::vector<ConstraintEntry> entries;
  for (std::size_t k = 0; k < chains.chains.size(); ++k) {
    if (radii[k] < 0.0) fail("constraint radius must be nonnegative");
    ConstraintEntry e;
    e.radius = radii[k];
    for (const auto& id : chains.chains[k]) {
      auto vi = f.values.find(id);
      if (vi == f.values.end()) {
        fail("function missing chain id '" + id + "'");
      }
      e.ids.push_back(id);
      e.targets.push_back(vi->second);
      e.weights.push_back(f.phi.at(id));
    }
    entries.push_back(std::move(e));
  }
  return ConstraintSet::make(std::move(entries));
}

}  // namespace kappa
