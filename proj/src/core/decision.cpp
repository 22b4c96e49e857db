#include "core/decision.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mtor {

namespace {

constexpr std::int64_t kBoundClamp = std::int64_t{1} << 60;

std::int64_t clamp_bigint(const BigInt& v) {
  if (v > kBoundClamp) return kBoundClamp;
  return static_cast<std::int64_t>(v);
}

// Deterministic tight loop inside a subgraph whose vertices all have
// valence >= 2: walk least-dart-first without backtracking until a vertex
// repeats, then cyclically reduce the enclosed closed walk.
CyclicPath find_tight_loop(const Subgraph& s) {
  const Graph& g = s.parent();
  VertexId start = -1;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (s.has_vertex(v) && s.valence(v) > 0) {
      start = v;
      break;
    }
  }
  if (start < 0) throw std::invalid_argument("find_tight_loop: empty subgraph");

  std::vector<std::ptrdiff_t> seen_at(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<DartId> walk;
  VertexId cur = start;
  DartId incoming = -1;
  while (seen_at[static_cast<std::size_t>(cur)] < 0) {
    seen_at[static_cast<std::size_t>(cur)] = static_cast<std::ptrdiff_t>(walk.size());
    DartId step = -1;
    for (DartId d : g.darts_at(cur)) {
      if (s.has_dart(d) && (incoming < 0 || d != reverse_dart(incoming))) {
        step = d;
        break;
      }
    }
    if (step < 0) throw std::logic_error("find_tight_loop: dead end in a valence->=2 subgraph");
    walk.push_back(step);
    incoming = step;
    cur = g.terminus(step);
  }
  auto from = seen_at[static_cast<std::size_t>(cur)];
  std::vector<DartId> cycle(walk.begin() + from, walk.end());
  auto reduced = CyclicPath::reduce(g, std::move(cycle));
  if (!reduced.has_value()) {
    throw std::logic_error("find_tight_loop: closed walk reduced to nothing");
  }
  return *reduced;
}

// lcm of the orbit-cycle lengths of the darts of c under the single-dart
// image map; every dart of c must map to a single dart. nullopt when the
// lcm leaves the tractable range.
std::optional<std::int64_t> orbit_period_bound(const GraphMap& f, const CyclicPath& c) {
  std::int64_t bound = 1;
  for (DartId d : c.darts()) {
    DartId cur = d;
    std::int64_t steps = 0;
    std::map<DartId, std::int64_t> when;
    while (!when.contains(cur)) {
      when[cur] = steps++;
      auto image = f.dart_image(cur);
      if (image.size() != 1) {
        throw std::logic_error("orbit_period_bound: dart leaves the single-image regime");
      }
      cur = image[0];
    }
    std::int64_t cycle_len = steps - when[cur];
    bound = std::lcm(bound, cycle_len);
    if (bound > (std::int64_t{1} << 22)) return std::nullopt;
  }
  return bound;
}

}  // namespace

std::optional<InvariantLoopCertificate> detect_degree_one(const GraphMap& f) {
  Subgraph z = non_expanding_subgraph(f);
  Subgraph p = periodic_part(f, z);
  Subgraph core = core_subgraph(p);
  if (core.empty()) return std::nullopt;

  CyclicPath c = find_tight_loop(core);
  auto cap = orbit_period_bound(f, c);
  if (!cap.has_value()) {
    // Period past the tractable range: give up here. A fixed loop still
    // blocks the downstream expansion search (its edges never expand, before
    // or after collapsing), so the pipeline degrades to inconclusive rather
    // than to a wrong verdict.
    return std::nullopt;
  }
  CyclicPath u = c;
  for (std::int64_t k = 1; k <= *cap; ++k) {
    auto next = map_cyclic(f, u);
    if (!next.has_value()) return std::nullopt;  // non-immersion degeneracy
    u = *next;
    if (u == c) {
      return InvariantLoopCertificate{c, static_cast<int>(k), 1};
    }
  }
  throw std::logic_error("detect_degree_one: periodic loop did not return within its period bound");
}

std::optional<InvariantLoopCertificate> certify_invariant_loop(const GraphMap& f,
                                                               const CyclicPath& c,
                                                               int k_budget,
                                                               std::int64_t d_cap) {
  const auto base_len = static_cast<std::int64_t>(c.length());
  std::set<CyclicPath> seen;
  CyclicPath u = c;
  for (int m = 1; m <= k_budget; ++m) {
    auto next = map_cyclic(f, u);
    if (!next.has_value()) return std::nullopt;
    u = *next;
    auto len = static_cast<std::int64_t>(u.length());
    if (len > d_cap * base_len) return std::nullopt;  // lengths never shrink again
    if (len % base_len == 0) {
      auto d = static_cast<int>(len / base_len);
      if (u == c.power(f.domain(), d)) {
        return InvariantLoopCertificate{c, m, d};
      }
    }
    if (!seen.insert(u).second) return std::nullopt;  // orbit cycled without a hit
  }
  return std::nullopt;
}

std::int64_t graph_rank(const Graph& g) {
  auto comps = components(g);
  return g.edge_count() - g.vertex_count() + static_cast<std::int64_t>(comps.size());
}

std::int64_t circles_from_depth(const Graph& g) {
  std::int64_t r = graph_rank(g);
  return 2 * (r - 1) * (r - 1);
}

namespace {

struct DepthMReadout {
  std::int64_t component_count = 0;
  std::int64_t max_subloops = 0;    // over minimal roots of projections
  std::int64_t max_loop_length = 0; // over projections themselves
};

// Loop data of the depth-M new core; for M = 0 the core of the domain
// itself stands in, each circle paired with itself.
DepthMReadout depth_m_readout(const GraphMap& f, std::int64_t m_depth) {
  const Graph& g = f.domain();
  DepthMReadout out;
  auto absorb = [&](const CyclicPath& c) {
    auto [root, exponent] = minimal_root(g, c);
    (void)exponent;
    out.max_subloops = std::max(out.max_subloops, subloop_count(g, root));
    out.max_loop_length = std::max<std::int64_t>(out.max_loop_length,
                                                 static_cast<std::int64_t>(c.length()));
  };
  if (m_depth == 0) {
    for (const Subgraph& comp : components(core_subgraph(g))) {
      if (!comp.is_circle()) {
        throw std::logic_error("stabilization_bound: depth-0 core component is not a circle");
      }
      ++out.component_count;
      absorb(loop_component_word(comp));
    }
    return out;
  }
  NewCore nc = new_core(f, static_cast<int>(m_depth));
  for (const Subgraph& core : nc.cores) {
    if (!core.is_circle()) {
      throw std::logic_error("stabilization_bound: new-core component at the circle depth is not a circle");
    }
  }
  auto pairs = loop_pairs(nc);
  out.component_count = static_cast<std::int64_t>(pairs.size());
  for (const LoopPair& pair : pairs) {
    absorb(pair.c_minus);
    absorb(pair.c_plus);
  }
  return out;
}

std::int64_t assemble_bound(std::int64_t m_depth, const DepthMReadout& r, std::int64_t edges) {
  BigInt c = r.component_count, e = edges, nstar = r.max_subloops, lstar = r.max_loop_length;
  BigInt bound = BigInt(m_depth) + c * e * (e * (nstar + 1) * lstar + 2) + e;
  return clamp_bigint(bound);
}

}  // namespace

std::int64_t stabilization_bound(const GraphMap& f) {
  std::int64_t m_depth = circles_from_depth(f.domain());
  DepthMReadout readout = depth_m_readout(f, m_depth);
  return assemble_bound(m_depth, readout, f.domain().edge_count());
}

FlareConstants flare_constants(int n, std::int64_t stabilization_depth, int lambda_f) {
  if (lambda_f < 2) {
    throw std::invalid_argument("flare_constants: maximum edge stretch must be at least 2");
  }
  if (n < 1 || stabilization_depth < 1) {
    throw std::invalid_argument("flare_constants: n and the depth must be positive");
  }
  FlareConstants out;
  out.lambda_f = lambda_f;
  out.n = n;
  out.stabilization_depth = stabilization_depth;

  // certificates always use expansion factor 2; the smallest power beating 2
  out.k = 2;

  const std::int64_t knl = static_cast<std::int64_t>(out.k) * n * stabilization_depth;
  if (knl > 100000) {
    throw std::invalid_argument("flare_constants: exponents out of supported range");
  }
  BigInt target = 8 * boost::multiprecision::pow(BigInt(lambda_f), static_cast<unsigned>(knl));
  int r = 1;
  while ((BigInt(1) << static_cast<unsigned>(r + stabilization_depth)) < target) ++r;
  out.r = r;
  out.m = (2 * stabilization_depth + r) * out.k * n;

  if (out.m > 100000) {
    throw std::invalid_argument("flare_constants: exponents out of supported range");
  }
  BigInt lam = lambda_f;
  BigInt numerator = boost::multiprecision::pow(lam, static_cast<unsigned>(2 * out.m)) - 1;
  out.h_coefficient = 4 * (BigInt(1) << static_cast<unsigned>(out.m)) * numerator / (lam - 1);
  return out;
}

namespace {

std::string immersion_failure_message(const ImmersionViolation& v) {
  std::ostringstream os;
  os << "not an immersion: darts " << v.dart1 << " and " << v.dart2 << " at vertex " << v.vertex
     << " share the first image dart";
  return os.str();
}

Verdict inconclusive(int max_depth, int reached, std::optional<std::int64_t> stab,
                     std::string reason) {
  Verdict v;
  v.kind = Verdict::Kind::inconclusive;
  v.budget = BudgetReport{max_depth, reached, stab, std::move(reason)};
  return v;
}

}  // namespace

Verdict decide(const GraphMap& f, const DecideBudgets& budgets) {
  if (!f.is_self_map()) throw std::invalid_argument("decide: self-map required");
  ImmersionCheck imm = check_immersion(f);
  if (!imm.ok()) throw std::invalid_argument(immersion_failure_message(*imm.violation));

  if (auto fixed = detect_degree_one(f)) {
    Verdict v;
    v.kind = Verdict::Kind::not_hyperbolic;
    v.invariant_loop = std::move(fixed);
    return v;
  }

  std::int64_t expansion_cap =
      budgets.expansion_cap > 0 ? budgets.expansion_cap : default_expansion_cap(f.domain());
  auto expansion = expansion_exponent(f, expansion_cap);
  if (!expansion.has_value()) {
    return inconclusive(budgets.max_depth, 0, std::nullopt,
                        "expansion exponent search cap exhausted");
  }

  const std::int64_t m_depth = circles_from_depth(f.domain());
  std::optional<std::int64_t> stab;
  if (m_depth == 0) {
    stab = stabilization_bound(f);
  } else if (m_depth <= budgets.max_depth &&
             subdivision_dart_count(f, static_cast<int>(m_depth), budgets.max_subdivision_darts) <=
                 budgets.max_subdivision_darts) {
    SubdividedSystem probe = subdivide_for(f, static_cast<int>(m_depth));
    if (pullback_dart_count(probe) <= budgets.max_pullback_darts) {
      stab = stabilization_bound(f);
    }
  }

  int k_budget = budgets.k_budget;
  if (k_budget <= 0) {
    // derived from the stabilization bound when known, clamped to keep the
    // per-candidate search bounded; orbit cycling cuts it short anyway
    std::int64_t derived = stab.has_value() ? *stab : 4 * f.domain().edge_count() + 8;
    k_budget = static_cast<int>(std::clamp<std::int64_t>(derived, 4, 10000));
  }

  std::int64_t depth_cap = budgets.max_depth;
  if (stab.has_value()) depth_cap = std::min(depth_cap, *stab);

  std::set<CyclicPath> tried;
  int reached = 0;
  for (int depth = 1; depth <= depth_cap; ++depth) {
    if (subdivision_dart_count(f, depth, budgets.max_subdivision_darts) >
        budgets.max_subdivision_darts) {
      return inconclusive(budgets.max_depth, reached, stab,
                          "subdivision size guard tripped at depth " + std::to_string(depth));
    }
    SubdividedSystem sys = subdivide_for(f, depth);
    if (pullback_dart_count(sys) > budgets.max_pullback_darts) {
      return inconclusive(budgets.max_depth, reached, stab,
                          "pullback size guard tripped at depth " + std::to_string(depth));
    }
    NewCore nc = new_core(f, depth);
    reached = depth;
    if (nc.cores.empty()) {
      Verdict v;
      v.kind = Verdict::Kind::hyperbolic;
      HyperbolicityCertificate cert;
      cert.expansion = std::move(*expansion);
      cert.stabilization_depth = depth;
      int lambda = max_image_length(f);
      if (lambda >= 2) {
        cert.flare = flare_constants(cert.expansion.n, depth, lambda);
      }
      v.hyperbolic = std::move(cert);
      return v;
    }
    if (depth >= m_depth) {
      for (const LoopPair& pair : loop_pairs(nc)) {
        for (const CyclicPath* c : {&pair.c_minus, &pair.c_plus}) {
          auto [root, exponent] = minimal_root(f.domain(), *c);
          (void)exponent;
          if (!tried.insert(root).second) continue;
          if (auto cert = certify_invariant_loop(f, root, k_budget, budgets.d_cap)) {
            Verdict v;
            v.kind = Verdict::Kind::not_hyperbolic;
            v.invariant_loop = std::move(cert);
            return v;
          }
        }
      }
    }
  }
  return inconclusive(budgets.max_depth, reached, stab, "depth budget exhausted");
}

namespace {

bool verify_invariant_loop(const GraphMap& f, const InvariantLoopCertificate& cert) {
  if (cert.k < 1 || cert.d < 1) return false;
  const Graph& g = f.domain();
  try {
    std::vector<DartId> darts(cert.loop.darts().begin(), cert.loop.darts().end());
    CyclicPath rebuilt = CyclicPath::canonical(g, std::move(darts));
    if (!(rebuilt == cert.loop)) return false;
    auto [root, exponent] = minimal_root(g, cert.loop);
    (void)root;
    if (exponent != 1) return false;

    // Image lengths never shrink, so anything past d * l(c) is fatal. Orbit
    // revisits let large k values resolve by modular arithmetic instead of
    // k literal steps. Claims past the checker's resource range are false.
    const auto limit = static_cast<std::int64_t>(cert.d) *
                       static_cast<std::int64_t>(cert.loop.length());
    if (limit > (std::int64_t{1} << 24)) return false;
    std::vector<CyclicPath> orbit{cert.loop};
    std::map<CyclicPath, std::size_t> seen_at{{cert.loop, 0}};
    CyclicPath u = cert.loop;
    constexpr std::int64_t kStepCap = 1 << 20;
    bool resolved = false;
    for (std::int64_t step = 1; step <= kStepCap; ++step) {
      auto next = map_cyclic(f, u);
      if (!next.has_value()) return false;
      u = *next;
      if (static_cast<std::int64_t>(u.length()) > limit) return false;
      if (step == cert.k) {
        resolved = true;
        break;
      }
      auto [it, inserted] = seen_at.emplace(u, orbit.size());
      if (!inserted) {
        std::size_t entry = it->second;
        std::size_t period = orbit.size() - entry;
        std::size_t index = entry + static_cast<std::size_t>(
                                        (static_cast<std::uint64_t>(cert.k) - entry) % period);
        u = orbit[index];
        resolved = true;
        break;
      }
      orbit.push_back(u);
    }
    if (!resolved) return false;
    return u == cert.loop.power(g, cert.d);
  } catch (const std::exception&) {
    return false;
  }
}

bool verify_hyperbolic(const GraphMap& f, const HyperbolicityCertificate& cert) {
  const Graph& g = f.domain();
  try {
    if (cert.stabilization_depth < 1) return false;
    if (cert.stabilization_depth > (std::int64_t{1} << 20)) return false;

    // stabilization claim; a depth whose product leaves the checker's
    // resource range verifies false rather than exhausting memory
    constexpr std::int64_t kSubdivisionGuard = 2'000'000;
    constexpr std::int64_t kPullbackGuard = 8'000'000;
    auto depth = static_cast<int>(cert.stabilization_depth);
    if (subdivision_dart_count(f, depth, kSubdivisionGuard) > kSubdivisionGuard) return false;
    if (pullback_dart_count(subdivide_for(f, depth)) > kPullbackGuard) return false;
    NewCore nc = new_core(f, depth);
    if (!nc.cores.empty()) return false;

    // expansion claim: the stored forest must be a genuine invariant forest,
    // and on its collapse every edge must expand within n_prime steps
    const ExpansionCertificate& exp = cert.expansion;
    if (exp.n_prime < 1 || exp.forest_k < 1) return false;
    if (exp.n != exp.forest_k * exp.n_prime) return false;

    std::vector<bool> vmask(static_cast<std::size_t>(g.vertex_count()), false);
    std::vector<bool> dmask(static_cast<std::size_t>(g.dart_count()), false);
    for (EdgeId e : exp.collapsed.forest_edges) {
      if (e < 0 || e >= g.edge_count()) return false;
      DartId d = forward_dart(e);
      dmask[static_cast<std::size_t>(d)] = true;
      dmask[static_cast<std::size_t>(reverse_dart(d))] = true;
      vmask[static_cast<std::size_t>(g.origin(d))] = true;
      vmask[static_cast<std::size_t>(g.terminus(d))] = true;
    }
    CollapsedSystem rebuilt = collapse_forest(f, Subgraph::of(g, std::move(vmask), std::move(dmask)));
    if (!(rebuilt.graph == exp.collapsed.graph)) return false;
    if (!(rebuilt.map == exp.collapsed.map)) return false;

    const Graph& cg = rebuilt.graph;
    for (EdgeId e = 0; e < cg.edge_count(); ++e) {
      DartId cur = forward_dart(e);
      bool expanded = false;
      for (int step = 1; step <= exp.n_prime; ++step) {
        auto image = rebuilt.map.dart_image(cur);
        if (image.size() >= 2) {
          expanded = true;
          break;
        }
        cur = image[0];
      }
      if (!expanded) return false;
    }
    if (((std::int64_t{1} << exp.forest_k) - 1) <=
        static_cast<std::int64_t>(exp.collapsed.forest_edges.size())) {
      return false;
    }

    // flare constants are a pure function of (n, L, lambda_f)
    int lambda = max_image_length(f);
    if (lambda >= 2) {
      if (!cert.flare.has_value()) return false;
      FlareConstants expect = flare_constants(exp.n, cert.stabilization_depth, lambda);
      if (!(expect == *cert.flare)) return false;
    } else if (cert.flare.has_value()) {
      return false;
    }
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

bool verify(const GraphMap& f, const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::not_hyperbolic:
      return v.invariant_loop.has_value() && verify_invariant_loop(f, *v.invariant_loop);
    case Verdict::Kind::hyperbolic:
      return v.hyperbolic.has_value() && verify_hyperbolic(f, *v.hyperbolic);
    case Verdict::Kind::inconclusive:
      return false;
  }
  return false;
}

}  // namespace mtor
