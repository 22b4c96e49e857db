#include "core/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mtor {

namespace {

void check_vertex(const Graph& g, VertexId v, const char* what) {
  if (v < 0 || v >= g.vertex_count()) {
    throw std::invalid_argument(std::string(what) + ": vertex id out of range");
  }
}

void check_dart(const Graph& g, DartId d, const char* what) {
  if (d < 0 || d >= g.dart_count()) {
    throw std::invalid_argument(std::string(what) + ": dart id out of range");
  }
}

}  // namespace

VertexId GraphBuilder::add_vertex() { return vertex_count_++; }

EdgeId GraphBuilder::add_edge(VertexId u, VertexId v) {
  if (u < 0 || u >= vertex_count_ || v < 0 || v >= vertex_count_) {
    throw std::invalid_argument("add_edge: endpoint not a declared vertex");
  }
  origin_.push_back(u);
  origin_.push_back(v);
  return static_cast<EdgeId>(origin_.size() / 2) - 1;
}

Graph GraphBuilder::build() const {
  Graph g;
  g.vertex_count_ = vertex_count_;
  g.origin_ = origin_;
  g.at_offset_.assign(static_cast<std::size_t>(vertex_count_) + 1, 0);
  for (VertexId v : origin_) {
    ++g.at_offset_[static_cast<std::size_t>(v) + 1];
  }
  std::partial_sum(g.at_offset_.begin(), g.at_offset_.end(), g.at_offset_.begin());
  g.at_darts_.resize(origin_.size());
  std::vector<std::int32_t> cursor(g.at_offset_.begin(), g.at_offset_.end() - 1);
  for (DartId d = 0; d < static_cast<DartId>(origin_.size()); ++d) {
    auto v = static_cast<std::size_t>(origin_[static_cast<std::size_t>(d)]);
    g.at_darts_[static_cast<std::size_t>(cursor[v]++)] = d;
  }
  return g;
}

// --- Subgraph ---------------------------------------------------------------

Subgraph::Subgraph(const Graph& parent, std::vector<bool> vmask, std::vector<bool> dmask)
    : parent_(&parent), vertex_mask_(std::move(vmask)), dart_mask_(std::move(dmask)) {
  vertex_count_ = static_cast<std::int32_t>(std::count(vertex_mask_.begin(), vertex_mask_.end(), true));
  dart_count_ = static_cast<std::int32_t>(std::count(dart_mask_.begin(), dart_mask_.end(), true));
}

Subgraph Subgraph::of(const Graph& parent, std::vector<bool> vertex_mask,
                      std::vector<bool> dart_mask) {
  if (vertex_mask.size() != static_cast<std::size_t>(parent.vertex_count()) ||
      dart_mask.size() != static_cast<std::size_t>(parent.dart_count())) {
    throw std::invalid_argument("Subgraph::of: mask sizes do not match parent");
  }
  for (DartId d = 0; d < parent.dart_count(); ++d) {
    if (!dart_mask[static_cast<std::size_t>(d)]) continue;
    if (!dart_mask[static_cast<std::size_t>(reverse_dart(d))]) {
      throw std::invalid_argument("Subgraph::of: dart set not closed under reversal");
    }
    if (!vertex_mask[static_cast<std::size_t>(parent.origin(d))]) {
      throw std::invalid_argument("Subgraph::of: kept dart with dropped origin");
    }
  }
  return Subgraph(parent, std::move(vertex_mask), std::move(dart_mask));
}

Subgraph Subgraph::full(const Graph& parent) {
  return Subgraph(parent,
                  std::vector<bool>(static_cast<std::size_t>(parent.vertex_count()), true),
                  std::vector<bool>(static_cast<std::size_t>(parent.dart_count()), true));
}

Subgraph Subgraph::empty_in(const Graph& parent) {
  return Subgraph(parent,
                  std::vector<bool>(static_cast<std::size_t>(parent.vertex_count()), false),
                  std::vector<bool>(static_cast<std::size_t>(parent.dart_count()), false));
}

std::vector<VertexId> Subgraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(static_cast<std::size_t>(vertex_count_));
  for (VertexId v = 0; v < parent_->vertex_count(); ++v) {
    if (has_vertex(v)) out.push_back(v);
  }
  return out;
}

std::vector<DartId> Subgraph::darts() const {
  std::vector<DartId> out;
  out.reserve(static_cast<std::size_t>(dart_count_));
  for (DartId d = 0; d < parent_->dart_count(); ++d) {
    if (has_dart(d)) out.push_back(d);
  }
  return out;
}

std::vector<EdgeId> Subgraph::edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < parent_->edge_count(); ++e) {
    if (has_edge(e)) out.push_back(e);
  }
  return out;
}

int Subgraph::valence(VertexId v) const {
  int n = 0;
  for (DartId d : parent_->darts_at(v)) {
    if (has_dart(d)) ++n;
  }
  return n;
}

bool Subgraph::is_circle() const {
  if (vertex_count_ == 0 || dart_count_ == 0) return false;
  for (VertexId v : vertices()) {
    if (valence(v) != 2) return false;
  }
  // valence-2 everywhere forces edges == vertices; connectivity then means a
  // single circle, which a traversal from any dart can confirm.
  if (edge_count() != vertex_count_) return false;
  auto comps = components(*this);
  return comps.size() == 1;
}

MaterializedSubgraph Subgraph::materialize() const {
  MaterializedSubgraph out;
  std::vector<VertexId> vertex_new(static_cast<std::size_t>(parent_->vertex_count()), -1);
  GraphBuilder builder;
  for (VertexId v = 0; v < parent_->vertex_count(); ++v) {
    if (!has_vertex(v)) continue;
    vertex_new[static_cast<std::size_t>(v)] = builder.add_vertex();
    out.vertex_to_parent.push_back(v);
  }
  for (EdgeId e = 0; e < parent_->edge_count(); ++e) {
    if (!has_edge(e)) continue;
    DartId fwd = forward_dart(e);
    builder.add_edge(vertex_new[static_cast<std::size_t>(parent_->origin(fwd))],
                     vertex_new[static_cast<std::size_t>(parent_->terminus(fwd))]);
    out.dart_to_parent.push_back(fwd);
    out.dart_to_parent.push_back(reverse_dart(fwd));
  }
  out.graph = builder.build();
  return out;
}

// --- paths ------------------------------------------------------------------

EdgePath make_path(const Graph& g, std::vector<DartId> darts,
                   std::optional<VertexId> basepoint) {
  EdgePath p;
  if (darts.empty()) {
    if (!basepoint.has_value()) {
      throw std::invalid_argument("make_path: empty path needs a basepoint");
    }
    check_vertex(g, *basepoint, "make_path");
    p.basepoint = *basepoint;
    return p;
  }
  for (std::size_t i = 0; i < darts.size(); ++i) {
    check_dart(g, darts[i], "make_path");
    if (i > 0 && g.terminus(darts[i - 1]) != g.origin(darts[i])) {
      throw std::invalid_argument("make_path: consecutive darts not incident");
    }
  }
  if (basepoint.has_value() && *basepoint != g.origin(darts.front())) {
    throw std::invalid_argument("make_path: basepoint does not match first dart");
  }
  p.basepoint = g.origin(darts.front());
  p.darts = std::move(darts);
  return p;
}

VertexId path_origin(const Graph& g, const EdgePath& p) {
  return p.empty() ? p.basepoint : g.origin(p.darts.front());
}

VertexId path_terminus(const Graph& g, const EdgePath& p) {
  return p.empty() ? p.basepoint : g.terminus(p.darts.back());
}

bool is_tight(const EdgePath& p) {
  for (std::size_t i = 1; i < p.darts.size(); ++i) {
    if (p.darts[i] == reverse_dart(p.darts[i - 1])) return false;
  }
  return true;
}

EdgePath tighten(const Graph& g, const EdgePath& p) {
  std::vector<DartId> stack;
  stack.reserve(p.darts.size());
  for (DartId d : p.darts) {
    if (!stack.empty() && stack.back() == reverse_dart(d)) {
      stack.pop_back();
    } else {
      stack.push_back(d);
    }
  }
  EdgePath out;
  out.basepoint = path_origin(g, p);
  out.darts = std::move(stack);
  return out;
}

EdgePath reverse_path(const Graph& g, const EdgePath& p) {
  EdgePath out;
  out.basepoint = path_terminus(g, p);
  out.darts.reserve(p.darts.size());
  for (auto it = p.darts.rbegin(); it != p.darts.rend(); ++it) {
    out.darts.push_back(reverse_dart(*it));
  }
  return out;
}

// Booth's least-rotation algorithm.
std::size_t least_rotation(std::span<const DartId> seq) {
  const std::size_t n = seq.size();
  if (n <= 1) return 0;
  auto at = [&](std::size_t i) { return seq[i % n]; };
  std::vector<std::ptrdiff_t> fail(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    std::ptrdiff_t i = fail[j - k - 1];
    while (i != -1 && at(j) != at(k + static_cast<std::size_t>(i) + 1)) {
      if (at(j) < at(k + static_cast<std::size_t>(i) + 1)) {
        k = j - static_cast<std::size_t>(i) - 1;
      }
      i = fail[static_cast<std::size_t>(i)];
    }
    if (i == -1 && at(j) != at(k)) {
      if (at(j) < at(k)) k = j;
      fail[j - k] = -1;
    } else {
      fail[j - k] = i + 1;
    }
  }
  return k;
}

CyclicPath CyclicPath::canonical(const Graph& g, std::vector<DartId> darts) {
  if (darts.empty()) {
    throw std::invalid_argument("CyclicPath: empty loop");
  }
  const std::size_t n = darts.size();
  for (std::size_t i = 0; i < n; ++i) {
    check_dart(g, darts[i], "CyclicPath");
    DartId next = darts[(i + 1) % n];
    if (g.terminus(darts[i]) != g.origin(next)) {
      throw std::invalid_argument("CyclicPath: darts not cyclically incident");
    }
    if (next == reverse_dart(darts[i])) {
      throw std::invalid_argument("CyclicPath: loop not cyclically tight");
    }
  }
  std::size_t r = least_rotation(darts);
  std::rotate(darts.begin(), darts.begin() + static_cast<std::ptrdiff_t>(r), darts.end());
  CyclicPath c;
  c.darts_ = std::move(darts);
  return c;
}

std::optional<CyclicPath> CyclicPath::reduce(const Graph& g, std::vector<DartId> darts) {
  std::vector<DartId> stack;
  stack.reserve(darts.size());
  for (DartId d : darts) {
    if (!stack.empty() && stack.back() == reverse_dart(d)) {
      stack.pop_back();
    } else {
      stack.push_back(d);
    }
  }
  // cancel across the seam
  std::size_t lo = 0, hi = stack.size();
  while (hi - lo >= 2 && stack[lo] == reverse_dart(stack[hi - 1])) {
    ++lo;
    --hi;
  }
  if (lo >= hi) return std::nullopt;
  return canonical(g, std::vector<DartId>(stack.begin() + static_cast<std::ptrdiff_t>(lo),
                                          stack.begin() + static_cast<std::ptrdiff_t>(hi)));
}

CyclicPath CyclicPath::power(const Graph& g, int exponent) const {
  if (exponent < 1) {
    throw std::invalid_argument("CyclicPath::power: exponent must be positive");
  }
  std::vector<DartId> out;
  out.reserve(darts_.size() * static_cast<std::size_t>(exponent));
  for (int i = 0; i < exponent; ++i) {
    out.insert(out.end(), darts_.begin(), darts_.end());
  }
  return canonical(g, std::move(out));
}

CyclicPath CyclicPath::reversed(const Graph& g) const {
  std::vector<DartId> out;
  out.reserve(darts_.size());
  for (auto it = darts_.rbegin(); it != darts_.rend(); ++it) {
    out.push_back(reverse_dart(*it));
  }
  return canonical(g, std::move(out));
}

// --- core subgraph / components / euler -------------------------------------

Subgraph core_subgraph(const Subgraph& s) {
  const Graph& g = s.parent();
  std::vector<bool> vmask(static_cast<std::size_t>(g.vertex_count()), false);
  std::vector<bool> dmask(static_cast<std::size_t>(g.dart_count()), false);
  std::vector<int> val(static_cast<std::size_t>(g.vertex_count()), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (s.has_vertex(v)) {
      vmask[static_cast<std::size_t>(v)] = true;
      val[static_cast<std::size_t>(v)] = s.valence(v);
    }
  }
  for (DartId d = 0; d < g.dart_count(); ++d) dmask[static_cast<std::size_t>(d)] = s.has_dart(d);

  std::vector<VertexId> queue;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (vmask[static_cast<std::size_t>(v)] && val[static_cast<std::size_t>(v)] <= 1) queue.push_back(v);
  }
  while (!queue.empty()) {
    VertexId v = queue.back();
    queue.pop_back();
    if (!vmask[static_cast<std::size_t>(v)]) continue;
    if (val[static_cast<std::size_t>(v)] > 1) continue;
    vmask[static_cast<std::size_t>(v)] = false;
    for (DartId d : g.darts_at(v)) {
      if (!dmask[static_cast<std::size_t>(d)]) continue;
      dmask[static_cast<std::size_t>(d)] = false;
      dmask[static_cast<std::size_t>(reverse_dart(d))] = false;
      VertexId w = g.terminus(d);
      --val[static_cast<std::size_t>(v)];
      --val[static_cast<std::size_t>(w)];
      if (vmask[static_cast<std::size_t>(w)] && val[static_cast<std::size_t>(w)] <= 1) {
        queue.push_back(w);
      }
    }
  }
  return Subgraph::of(g, std::move(vmask), std::move(dmask));
}

Subgraph core_subgraph(const Graph& g) { return core_subgraph(Subgraph::full(g)); }

std::vector<Subgraph> components(const Subgraph& s) {
  const Graph& g = s.parent();
  std::vector<int> label(static_cast<std::size_t>(g.vertex_count()), -1);
  int next = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!s.has_vertex(v) || label[static_cast<std::size_t>(v)] != -1) continue;
    int id = next++;
    std::vector<VertexId> stack{v};
    label[static_cast<std::size_t>(v)] = id;
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (DartId d : g.darts_at(u)) {
        if (!s.has_dart(d)) continue;
        VertexId w = g.terminus(d);
        if (label[static_cast<std::size_t>(w)] == -1) {
          label[static_cast<std::size_t>(w)] = id;
          stack.push_back(w);
        }
      }
    }
  }
  std::vector<std::vector<bool>> vmasks(static_cast<std::size_t>(next),
                                        std::vector<bool>(static_cast<std::size_t>(g.vertex_count()), false));
  std::vector<std::vector<bool>> dmasks(static_cast<std::size_t>(next),
                                        std::vector<bool>(static_cast<std::size_t>(g.dart_count()), false));
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (s.has_vertex(v)) vmasks[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])][static_cast<std::size_t>(v)] = true;
  }
  for (DartId d = 0; d < g.dart_count(); ++d) {
    if (s.has_dart(d)) {
      int id = label[static_cast<std::size_t>(g.origin(d))];
      dmasks[static_cast<std::size_t>(id)][static_cast<std::size_t>(d)] = true;
    }
  }
  std::vector<Subgraph> out;
  out.reserve(static_cast<std::size_t>(next));
  for (int i = 0; i < next; ++i) {
    out.push_back(Subgraph::of(g, std::move(vmasks[static_cast<std::size_t>(i)]),
                               std::move(dmasks[static_cast<std::size_t>(i)])));
  }
  return out;
}

std::vector<Subgraph> components(const Graph& g) { return components(Subgraph::full(g)); }

std::int64_t neg_euler(const Subgraph& s) {
  Subgraph core = core_subgraph(s);
  std::int64_t total = 0;
  for (const Subgraph& comp : components(core)) {
    std::int64_t rank = comp.edge_count() - comp.vertex_count() + 1;
    total += std::max<std::int64_t>(0, rank - 1);
  }
  return total;
}

std::int64_t neg_euler(const Graph& g) { return neg_euler(Subgraph::full(g)); }

CyclicPath loop_component_word(const Subgraph& component) {
  const Graph& g = component.parent();
  if (!component.is_circle()) {
    throw std::invalid_argument("loop_component_word: component is not a circle");
  }
  DartId start = -1;
  for (DartId d = 0; d < g.dart_count(); ++d) {
    if (component.has_dart(d)) {
      start = d;
      break;
    }
  }
  std::vector<DartId> word;
  DartId cur = start;
  do {
    word.push_back(cur);
    VertexId v = g.terminus(cur);
    DartId next = -1;
    for (DartId d : g.darts_at(v)) {
      if (component.has_dart(d) && d != reverse_dart(cur)) {
        next = d;
        break;
      }
    }
    if (next == -1) {
      throw std::logic_error("loop_component_word: traversal left the circle");
    }
    cur = next;
  } while (cur != start);
  return CyclicPath::canonical(g, std::move(word));
}

}  // namespace mtor
