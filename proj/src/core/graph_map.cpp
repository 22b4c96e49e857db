#include "core/graph_map.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mtor {

GraphMap::GraphMap(Graph domain, Graph codomain, std::vector<VertexId> vertex_map,
                   std::vector<std::vector<DartId>> dart_map)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      vertex_map_(std::move(vertex_map)),
      dart_map_(std::move(dart_map)) {
  if (vertex_map_.size() != static_cast<std::size_t>(domain_.vertex_count())) {
    throw std::invalid_argument("GraphMap: vertex map size mismatch");
  }
  if (dart_map_.size() != static_cast<std::size_t>(domain_.dart_count())) {
    throw std::invalid_argument("GraphMap: dart map size mismatch");
  }
  for (VertexId v : vertex_map_) {
    if (v < 0 || v >= codomain_.vertex_count()) {
      throw std::invalid_argument("GraphMap: vertex image out of range");
    }
  }
  for (DartId d = 0; d < domain_.dart_count(); ++d) {
    const auto& image = dart_map_[static_cast<std::size_t>(d)];
    if (image.empty()) {
      throw std::invalid_argument("GraphMap: dart image must be nonempty");
    }
    for (std::size_t i = 0; i < image.size(); ++i) {
      if (image[i] < 0 || image[i] >= codomain_.dart_count()) {
        throw std::invalid_argument("GraphMap: image dart out of range");
      }
      if (i > 0) {
        if (codomain_.terminus(image[i - 1]) != codomain_.origin(image[i])) {
          throw std::invalid_argument("GraphMap: image path not incident");
        }
        if (image[i] == reverse_dart(image[i - 1])) {
          throw std::invalid_argument("GraphMap: image path not tight");
        }
      }
    }
    if (codomain_.origin(image.front()) != vertex_image(domain_.origin(d))) {
      throw std::invalid_argument("GraphMap: image path starts at wrong vertex");
    }
    if (codomain_.terminus(image.back()) != vertex_image(domain_.terminus(d))) {
      throw std::invalid_argument("GraphMap: image path ends at wrong vertex");
    }
    const auto& rev_image = dart_map_[static_cast<std::size_t>(reverse_dart(d))];
    if (rev_image.size() != image.size()) {
      throw std::invalid_argument("GraphMap: reversal images inconsistent");
    }
    for (std::size_t i = 0; i < image.size(); ++i) {
      if (rev_image[image.size() - 1 - i] != reverse_dart(image[i])) {
        throw std::invalid_argument("GraphMap: reversal images inconsistent");
      }
    }
  }
}

GraphMap GraphMap::from_forward_images(Graph domain, Graph codomain,
                                       std::vector<VertexId> vertex_map,
                                       const std::vector<std::vector<DartId>>& forward_images) {
  if (forward_images.size() != static_cast<std::size_t>(domain.edge_count())) {
    throw std::invalid_argument("from_forward_images: one image per edge required");
  }
  std::vector<std::vector<DartId>> dart_map(static_cast<std::size_t>(domain.dart_count()));
  for (EdgeId e = 0; e < domain.edge_count(); ++e) {
    const auto& fwd = forward_images[static_cast<std::size_t>(e)];
    std::vector<DartId> rev(fwd.size());
    for (std::size_t i = 0; i < fwd.size(); ++i) {
      rev[fwd.size() - 1 - i] = reverse_dart(fwd[i]);
    }
    dart_map[static_cast<std::size_t>(forward_dart(e))] = fwd;
    dart_map[static_cast<std::size_t>(reverse_dart(forward_dart(e)))] = std::move(rev);
  }
  return GraphMap(std::move(domain), std::move(codomain), std::move(vertex_map),
                  std::move(dart_map));
}

GraphMap identity_map(const Graph& g) {
  std::vector<VertexId> vmap(static_cast<std::size_t>(g.vertex_count()));
  std::iota(vmap.begin(), vmap.end(), 0);
  std::vector<std::vector<DartId>> dmap(static_cast<std::size_t>(g.dart_count()));
  for (DartId d = 0; d < g.dart_count(); ++d) dmap[static_cast<std::size_t>(d)] = {d};
  return GraphMap(g, g, std::move(vmap), std::move(dmap));
}

GraphMap compose(const GraphMap& outer, const GraphMap& inner) {
  if (!(inner.codomain() == outer.domain())) {
    throw std::invalid_argument("compose: codomain/domain mismatch");
  }
  const Graph& dom = inner.domain();
  std::vector<VertexId> vmap(static_cast<std::size_t>(dom.vertex_count()));
  for (VertexId v = 0; v < dom.vertex_count(); ++v) {
    vmap[static_cast<std::size_t>(v)] = outer.vertex_image(inner.vertex_image(v));
  }
  std::vector<std::vector<DartId>> dmap(static_cast<std::size_t>(dom.dart_count()));
  for (DartId d = 0; d < dom.dart_count(); ++d) {
    std::vector<DartId> image;
    for (DartId step : inner.dart_image(d)) {
      auto piece = outer.dart_image(step);
      image.insert(image.end(), piece.begin(), piece.end());
    }
    EdgePath tight = tighten(outer.codomain(), make_path(outer.codomain(), std::move(image)));
    if (tight.empty()) {
      throw std::invalid_argument("compose: composite dart image cancels completely");
    }
    dmap[static_cast<std::size_t>(d)] = std::move(tight.darts);
  }
  return GraphMap(dom, outer.codomain(), std::move(vmap), std::move(dmap));
}

GraphMap iterate(const GraphMap& f, int k) {
  if (k < 1) {
    throw std::invalid_argument("iterate: k must be positive");
  }
  if (!f.is_self_map()) {
    throw std::invalid_argument("iterate: self-map required");
  }
  GraphMap acc = f;
  for (int i = 1; i < k; ++i) acc = compose(f, acc);
  return acc;
}

ImmersionCheck check_immersion(const GraphMap& f) {
  if (!f.is_self_map()) {
    throw std::invalid_argument("check_immersion: self-map required");
  }
  const Graph& g = f.domain();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::map<DartId, DartId> seen;  // first image dart -> dart at v
    for (DartId d : g.darts_at(v)) {
      DartId first = f.dart_image(d).front();
      auto [it, inserted] = seen.emplace(first, d);
      if (!inserted) {
        return ImmersionCheck{ImmersionViolation{v, it->second, d}};
      }
    }
  }
  return ImmersionCheck{};
}

EdgePath map_path(const GraphMap& f, const EdgePath& p) {
  std::vector<DartId> image;
  for (DartId d : p.darts) {
    auto piece = f.dart_image(d);
    image.insert(image.end(), piece.begin(), piece.end());
  }
  std::optional<VertexId> base;
  if (image.empty()) base = f.vertex_image(path_origin(f.domain(), p));
  return tighten(f.codomain(), make_path(f.codomain(), std::move(image), base));
}

std::optional<CyclicPath> map_cyclic(const GraphMap& f, const CyclicPath& c) {
  std::vector<DartId> image;
  for (DartId d : c.darts()) {
    auto piece = f.dart_image(d);
    image.insert(image.end(), piece.begin(), piece.end());
  }
  return CyclicPath::reduce(f.codomain(), std::move(image));
}

int max_image_length(const GraphMap& f) {
  std::size_t best = 0;
  for (DartId d = 0; d < f.domain().dart_count(); ++d) {
    best = std::max(best, f.dart_image(d).size());
  }
  return static_cast<int>(best);
}

namespace {

// Per-edge orbit map: e -> image edge when the image is a single dart, -1
// otherwise. Defined on forward darts; reversed darts agree.
std::vector<EdgeId> single_edge_orbit_map(const GraphMap& f) {
  std::vector<EdgeId> next(static_cast<std::size_t>(f.domain().edge_count()), -1);
  for (EdgeId e = 0; e < f.domain().edge_count(); ++e) {
    auto image = f.dart_image(forward_dart(e));
    if (image.size() == 1) next[static_cast<std::size_t>(e)] = edge_of_dart(image[0]);
  }
  return next;
}

Subgraph subgraph_of_edges(const Graph& g, const std::vector<bool>& edge_mask) {
  std::vector<bool> vmask(static_cast<std::size_t>(g.vertex_count()), false);
  std::vector<bool> dmask(static_cast<std::size_t>(g.dart_count()), false);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!edge_mask[static_cast<std::size_t>(e)]) continue;
    DartId d = forward_dart(e);
    dmask[static_cast<std::size_t>(d)] = true;
    dmask[static_cast<std::size_t>(reverse_dart(d))] = true;
    vmask[static_cast<std::size_t>(g.origin(d))] = true;
    vmask[static_cast<std::size_t>(g.terminus(d))] = true;
  }
  return Subgraph::of(g, std::move(vmask), std::move(dmask));
}

}  // namespace

Subgraph non_expanding_subgraph(const GraphMap& f) {
  const Graph& g = f.domain();
  auto next = single_edge_orbit_map(f);
  const int window = g.edge_count();
  std::vector<bool> keep(static_cast<std::size_t>(g.edge_count()), false);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    EdgeId cur = e;
    bool ok = true;
    for (int j = 0; j < window; ++j) {
      cur = next[static_cast<std::size_t>(cur)];
      if (cur < 0) {
        ok = false;
        break;
      }
    }
    keep[static_cast<std::size_t>(e)] = ok;
  }
  return subgraph_of_edges(g, keep);
}

Subgraph periodic_part(const GraphMap& f, const Subgraph& z) {
  const Graph& g = f.domain();
  auto next = single_edge_orbit_map(f);
  std::vector<bool> in(static_cast<std::size_t>(g.edge_count()), false);
  for (EdgeId e : z.edges()) in[static_cast<std::size_t>(e)] = true;
  // Trim edges with no preimage inside the current set until stable; what
  // remains is exactly the union of cycles of the orbit map.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<bool> has_pre(static_cast<std::size_t>(g.edge_count()), false);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (in[static_cast<std::size_t>(e)] && next[static_cast<std::size_t>(e)] >= 0) {
        has_pre[static_cast<std::size_t>(next[static_cast<std::size_t>(e)])] = true;
      }
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (in[static_cast<std::size_t>(e)] && !has_pre[static_cast<std::size_t>(e)]) {
        in[static_cast<std::size_t>(e)] = false;
        changed = true;
      }
    }
  }
  return subgraph_of_edges(g, in);
}

namespace {

// Smallest edge set containing seeds and closed under taking edge images.
std::vector<bool> orbit_closure(const GraphMap& f, std::vector<bool> set) {
  std::vector<EdgeId> stack;
  for (EdgeId e = 0; e < f.domain().edge_count(); ++e) {
    if (set[static_cast<std::size_t>(e)]) stack.push_back(e);
  }
  while (!stack.empty()) {
    EdgeId e = stack.back();
    stack.pop_back();
    for (DartId d : f.dart_image(forward_dart(e))) {
      EdgeId img = edge_of_dart(d);
      if (!set[static_cast<std::size_t>(img)]) {
        set[static_cast<std::size_t>(img)] = true;
        stack.push_back(img);
      }
    }
  }
  return set;
}

bool is_forest(const Graph& g, const std::vector<bool>& edge_mask) {
  std::vector<VertexId> uf(static_cast<std::size_t>(g.vertex_count()));
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](VertexId v) {
    while (uf[static_cast<std::size_t>(v)] != v) {
      VertexId up = uf[static_cast<std::size_t>(v)];
      uf[static_cast<std::size_t>(v)] = uf[static_cast<std::size_t>(up)];
      v = uf[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!edge_mask[static_cast<std::size_t>(e)]) continue;
    auto [u, v] = g.endpoints(e);
    VertexId ru = find(u), rv = find(v);
    if (ru == rv) return false;
    uf[static_cast<std::size_t>(ru)] = rv;
  }
  return true;
}

}  // namespace

Subgraph max_invariant_forest(const GraphMap& f) {
  const Graph& g = f.domain();
  std::vector<bool> forest(static_cast<std::size_t>(g.edge_count()), false);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (forest[static_cast<std::size_t>(e)]) continue;
    std::vector<bool> candidate = forest;
    candidate[static_cast<std::size_t>(e)] = true;
    candidate = orbit_closure(f, std::move(candidate));
    if (is_forest(g, candidate)) forest = std::move(candidate);
  }
  return subgraph_of_edges(g, forest);
}

CollapsedSystem collapse_forest(const GraphMap& f, const Subgraph& forest) {
  const Graph& g = f.domain();
  std::vector<bool> fmask(static_cast<std::size_t>(g.edge_count()), false);
  for (EdgeId e : forest.edges()) fmask[static_cast<std::size_t>(e)] = true;
  if (!is_forest(g, fmask)) {
    throw std::invalid_argument("collapse_forest: subgraph is not a forest");
  }
  if (orbit_closure(f, fmask) != fmask) {
    throw std::invalid_argument("collapse_forest: subgraph is not closed under edge images");
  }

  // Quotient vertices by forest trees; class representative = least member.
  std::vector<VertexId> uf(static_cast<std::size_t>(g.vertex_count()));
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](VertexId v) {
    while (uf[static_cast<std::size_t>(v)] != v) {
      VertexId up = uf[static_cast<std::size_t>(v)];
      uf[static_cast<std::size_t>(v)] = uf[static_cast<std::size_t>(up)];
      v = uf[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!fmask[static_cast<std::size_t>(e)]) continue;
    auto [u, v] = g.endpoints(e);
    VertexId ru = find(u), rv = find(v);
    if (ru != rv) uf[static_cast<std::size_t>(std::max(ru, rv))] = std::min(ru, rv);
  }

  CollapsedSystem out;
  out.vertex_class.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  GraphBuilder builder;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (find(v) == v) out.vertex_class[static_cast<std::size_t>(v)] = builder.add_vertex();
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out.vertex_class[static_cast<std::size_t>(v)] = out.vertex_class[static_cast<std::size_t>(find(v))];
  }

  std::vector<DartId> dart_new(static_cast<std::size_t>(g.dart_count()), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (fmask[static_cast<std::size_t>(e)]) continue;
    auto [u, v] = g.endpoints(e);
    EdgeId ne = builder.add_edge(out.vertex_class[static_cast<std::size_t>(u)],
                                 out.vertex_class[static_cast<std::size_t>(v)]);
    dart_new[static_cast<std::size_t>(forward_dart(e))] = forward_dart(ne);
    dart_new[static_cast<std::size_t>(reverse_dart(forward_dart(e)))] = reverse_dart(forward_dart(ne));
    out.edge_to_original.push_back(e);
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (fmask[static_cast<std::size_t>(e)]) out.forest_edges.push_back(e);
  }
  out.graph = builder.build();

  std::vector<VertexId> vmap(static_cast<std::size_t>(out.graph.vertex_count()));
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (find(v) != v) continue;
    VertexId image = out.vertex_class[static_cast<std::size_t>(f.vertex_image(v))];
    vmap[static_cast<std::size_t>(out.vertex_class[static_cast<std::size_t>(v)])] = image;
  }
  // image classes must not depend on the representative
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    VertexId expect = vmap[static_cast<std::size_t>(out.vertex_class[static_cast<std::size_t>(v)])];
    if (out.vertex_class[static_cast<std::size_t>(f.vertex_image(v))] != expect) {
      throw std::invalid_argument("collapse_forest: map does not descend to the quotient");
    }
  }

  std::vector<std::vector<DartId>> dmap(static_cast<std::size_t>(out.graph.dart_count()));
  for (DartId d = 0; d < g.dart_count(); ++d) {
    DartId nd = dart_new[static_cast<std::size_t>(d)];
    if (nd < 0) continue;
    std::vector<DartId> image;
    for (DartId step : f.dart_image(d)) {
      DartId ns = dart_new[static_cast<std::size_t>(step)];
      if (ns >= 0) image.push_back(ns);
    }
    if (image.empty()) {
      throw std::invalid_argument("collapse_forest: dart image vanished in the quotient");
    }
    dmap[static_cast<std::size_t>(nd)] = std::move(image);
  }
  out.map = GraphMap(out.graph, out.graph, std::move(vmap), std::move(dmap));
  return out;
}

std::int64_t default_expansion_cap(const Graph& g) {
  return std::max<std::int64_t>(
      1, 4 * static_cast<std::int64_t>(g.edge_count()) * g.vertex_count());
}

std::optional<ExpansionCertificate> expansion_exponent(const GraphMap& f, std::int64_t cap) {
  Subgraph forest = max_invariant_forest(f);
  CollapsedSystem collapsed = collapse_forest(f, forest);
  const Graph& cg = collapsed.graph;
  auto next = single_edge_orbit_map(collapsed.map);

  // First step at which an edge's image stops being a single dart. A chain
  // of single-dart images longer than the edge count has entered a cycle and
  // will never expand.
  int n_prime = 1;
  const int window = cg.edge_count();
  for (EdgeId e = 0; e < cg.edge_count(); ++e) {
    EdgeId cur = e;
    int step = 0;
    bool expands = false;
    while (step <= window) {
      ++step;
      EdgeId img = next[static_cast<std::size_t>(cur)];
      if (img < 0) {
        expands = true;
        break;
      }
      cur = img;
    }
    if (!expands) return std::nullopt;
    n_prime = std::max(n_prime, step);
  }
  if (n_prime > cap) return std::nullopt;

  int forest_k = 1;
  while (((std::int64_t{1} << forest_k) - 1) <= static_cast<std::int64_t>(collapsed.forest_edges.size())) {
    ++forest_k;
  }

  ExpansionCertificate cert;
  cert.n_prime = n_prime;
  cert.forest_k = forest_k;
  cert.n = forest_k * n_prime;
  cert.collapsed = std::move(collapsed);
  return cert;
}

}  // namespace mtor
