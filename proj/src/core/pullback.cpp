#include "core/pullback.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace mtor {

PullbackGraph pullback(const GraphMap& f, int depth) {
  PullbackGraph p;
  p.depth_ = depth;
  p.system_ = subdivide_for(f, depth);
  const SubdividedSystem& sys = p.system_;
  const Graph& sub = sys.graph();
  const Graph& base = f.domain();

  // vertices: pairs grouped by common image vertex, ids in lexicographic
  // (x, y) order
  std::vector<std::vector<VertexId>> by_image(static_cast<std::size_t>(base.vertex_count()));
  for (VertexId v = 0; v < sub.vertex_count(); ++v) {
    by_image[static_cast<std::size_t>(sys.vertex_image(v))].push_back(v);
  }
  GraphBuilder builder;
  std::map<std::pair<VertexId, VertexId>, VertexId> pair_id;
  for (VertexId x = 0; x < sub.vertex_count(); ++x) {
    for (VertexId y : by_image[static_cast<std::size_t>(sys.vertex_image(x))]) {
      pair_id.emplace(std::pair{x, y}, builder.add_vertex());
      p.vertex_pair_.emplace_back(x, y);
    }
  }

  // darts: pairs of subdivided darts with equal image darts; one geometric
  // edge per pair with forward first coordinate
  std::vector<std::vector<DartId>> darts_by_image(static_cast<std::size_t>(base.dart_count()));
  for (DartId d = 0; d < sub.dart_count(); ++d) {
    darts_by_image[static_cast<std::size_t>(sys.dart_image(d))].push_back(d);
  }
  for (DartId l = 0; l < sub.dart_count(); ++l) {
    if (!is_forward(l)) continue;
    for (DartId r : darts_by_image[static_cast<std::size_t>(sys.dart_image(l))]) {
      auto from = pair_id.find({sub.origin(l), sub.origin(r)});
      auto to = pair_id.find({sub.terminus(l), sub.terminus(r)});
      if (from == pair_id.end() || to == pair_id.end()) {
        throw std::logic_error("pullback: paired darts with unpaired endpoints");
      }
      builder.add_edge(from->second, to->second);
      p.dart_pair_fwd_.emplace_back(l, r);
    }
  }
  p.graph_ = builder.build();
  return p;
}

std::int64_t subdivision_dart_count(const GraphMap& f, int depth, std::int64_t limit) {
  const Graph& g = f.domain();
  std::vector<std::int64_t> len(static_cast<std::size_t>(g.dart_count()), 1);
  for (int j = 0; j < depth; ++j) {
    std::vector<std::int64_t> next(static_cast<std::size_t>(g.dart_count()), 0);
    for (DartId d = 0; d < g.dart_count(); ++d) {
      std::int64_t total = 0;
      for (DartId step : f.dart_image(d)) {
        total += len[static_cast<std::size_t>(step)];
        if (total > limit) return limit + 1;
      }
      next[static_cast<std::size_t>(d)] = total;
    }
    len = std::move(next);
  }
  std::int64_t total = 0;
  for (std::int64_t v : len) {
    total += v;
    if (total > limit) return limit + 1;
  }
  return total;
}

std::int64_t pullback_dart_count(const SubdividedSystem& sys) {
  std::vector<std::int64_t> tally(static_cast<std::size_t>(sys.base_map().domain().dart_count()), 0);
  for (DartId d = 0; d < sys.graph().dart_count(); ++d) {
    ++tally[static_cast<std::size_t>(sys.dart_image(d))];
  }
  std::int64_t total = 0;
  for (std::int64_t c : tally) total += c * c;
  return total;
}

namespace {

bool pair_is_old(const PullbackGraph& p, VertexId v) {
  const GraphMap& f = p.system().base_map();
  auto [lx, ly] = p.vertex_label(v);
  return map_point_iter(f, lx, p.depth() - 1) == map_point_iter(f, ly, p.depth() - 1);
}

}  // namespace

Classified classify_components(const PullbackGraph& p) {
  Classified out;
  out.components = components(p.graph());
  out.is_old.reserve(out.components.size());
  for (const Subgraph& comp : out.components) {
    auto verts = comp.vertices();
    bool old_flag = pair_is_old(p, verts.front());
    // membership one depth down is a component property; verify on every vertex
    for (VertexId v : verts) {
      if (pair_is_old(p, v) != old_flag) {
        throw std::logic_error("classify_components: membership not constant on a component");
      }
    }
    out.is_old.push_back(old_flag);
  }
  return out;
}

Classified classify_components(const PullbackGraph& p, const PullbackGraph& previous) {
  if (previous.depth() != p.depth() - 1) {
    throw std::invalid_argument("classify_components: depth mismatch");
  }
  if (!(previous.system().base_map() == p.system().base_map())) {
    throw std::invalid_argument("classify_components: pullbacks of different maps");
  }
  Classified out = classify_components(p);
  check_chain(previous, p);
  return out;
}

void check_chain(const PullbackGraph& previous, const PullbackGraph& p) {
  const GraphMap& f = p.system().base_map();
  using Label = std::pair<ExactPoint, ExactPoint>;

  // Labels of the previous pullback's vertices, tagged by component index.
  auto prev_comps = components(previous.graph());
  std::map<Label, std::size_t> prev_of_label;
  for (std::size_t ci = 0; ci < prev_comps.size(); ++ci) {
    for (VertexId v : prev_comps[ci].vertices()) {
      prev_of_label.emplace(previous.vertex_label(v), ci);
    }
  }

  Classified cls = classify_components(p);
  std::set<std::size_t> prev_seen;
  std::size_t shared = 0;
  std::size_t old_count = 0;
  for (std::size_t ci = 0; ci < cls.components.size(); ++ci) {
    if (!cls.is_old[ci]) {
      // no vertex of a new component may carry a previous-depth label
      for (VertexId v : cls.components[ci].vertices()) {
        if (prev_of_label.contains(p.vertex_label(v))) {
          throw std::logic_error("check_chain: previous-depth label inside a new component");
        }
      }
      continue;
    }
    ++old_count;
    // labels of one old component must land in exactly one previous component
    std::set<std::size_t> hits;
    for (VertexId v : cls.components[ci].vertices()) {
      auto label = p.vertex_label(v);
      auto [lx, ly] = label;
      bool is_prev_vertex = map_point_iter(f, lx, p.depth() - 1).is_vertex();
      auto it = prev_of_label.find(label);
      if (it != prev_of_label.end()) {
        hits.insert(it->second);
        ++shared;
      } else if (is_prev_vertex) {
        throw std::logic_error("check_chain: old-component vertex missing one depth down");
      }
    }
    if (hits.size() != 1) {
      throw std::logic_error("check_chain: old component does not match a unique previous component");
    }
    prev_seen.insert(*hits.begin());
  }
  if (prev_seen.size() != prev_comps.size() || old_count != prev_comps.size()) {
    throw std::logic_error("check_chain: component counts disagree across depths");
  }
  if (shared != prev_of_label.size()) {
    throw std::logic_error("check_chain: some previous-depth labels were not found again");
  }
}

NewCore new_core(const GraphMap& f, int depth) {
  NewCore out{pullback(f, depth), {}};
  Classified cls = classify_components(out.pullback);
  for (std::size_t ci = 0; ci < cls.components.size(); ++ci) {
    if (cls.is_old[ci]) continue;
    Subgraph core = core_subgraph(cls.components[ci]);
    if (!core.empty()) out.cores.push_back(std::move(core));
  }
  return out;
}

std::vector<LoopPair> loop_pairs(const NewCore& nc) {
  std::vector<LoopPair> out;
  const PullbackGraph& p = nc.pullback;
  for (std::size_t i = 0; i < nc.cores.size(); ++i) {
    const Subgraph& core = nc.cores[i];
    if (!core.is_circle()) {
      throw std::invalid_argument("loop_pairs: new-core component is not a circle");
    }
    CyclicPath word = loop_component_word(core);
    std::vector<DartId> left, right;
    left.reserve(word.length());
    right.reserve(word.length());
    for (DartId d : word.darts()) {
      auto [l, r] = p.dart_pair(d);
      left.push_back(l);
      right.push_back(r);
    }
    out.push_back(LoopPair{i, p.system().collapse_cyclic(left),
                           p.system().collapse_cyclic(right)});
  }
  return out;
}

std::vector<LoopPair> loop_pairs(const GraphMap& f, int depth) {
  return loop_pairs(new_core(f, depth));
}

std::pair<CyclicPath, int> minimal_root(const Graph& g, const CyclicPath& c) {
  const auto darts = c.darts();
  const std::size_t n = darts.size();
  for (std::size_t period = 1; period <= n; ++period) {
    if (n % period != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i + period < n && ok; ++i) {
      if (darts[i] != darts[i + period]) ok = false;
    }
    if (ok) {
      std::vector<DartId> root(darts.begin(), darts.begin() + static_cast<std::ptrdiff_t>(period));
      return {CyclicPath::canonical(g, std::move(root)), static_cast<int>(n / period)};
    }
  }
  throw std::logic_error("minimal_root: unreachable");
}

std::int64_t subloop_count(const Graph& g, const CyclicPath& c) {
  auto [root, exponent] = minimal_root(g, c);
  if (exponent != 1) {
    throw std::invalid_argument("subloop_count: input must be primitive");
  }
  const auto darts = c.darts();
  const std::size_t n = darts.size();
  auto vertex_at = [&](std::size_t i) { return g.origin(darts[i % n]); };
  std::int64_t count = 0;
  for (std::size_t start = 0; start < n; ++start) {
    for (std::size_t len = 1; len <= n; ++len) {
      if (vertex_at(start) == vertex_at(start + len)) ++count;
    }
  }
  return count;
}

}  // namespace mtor
