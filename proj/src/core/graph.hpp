#ifndef MTOR_CORE_GRAPH_HPP
#define MTOR_CORE_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace mtor {

using VertexId = std::int32_t;
using DartId = std::int32_t;
using EdgeId = std::int32_t;

// Darts come in pairs: geometric edge e owns darts 2e and 2e+1, each the
// other's reversal.
inline DartId reverse_dart(DartId d) { return d ^ 1; }
inline EdgeId edge_of_dart(DartId d) { return d >> 1; }
inline DartId forward_dart(EdgeId e) { return 2 * e; }
inline bool is_forward(DartId d) { return (d & 1) == 0; }

/**
 * Finite combinatorial graph: darts with a fixed-point-free reversal
 * involution. Self-loops and parallel edges are allowed; the empty graph is
 * a legal value. Immutable after construction.
 */
class Graph {
 public:
  Graph() = default;

  std::int32_t vertex_count() const { return vertex_count_; }
  std::int32_t dart_count() const { return static_cast<std::int32_t>(origin_.size()); }
  std::int32_t edge_count() const { return dart_count() / 2; }

  VertexId origin(DartId d) const { return origin_[static_cast<std::size_t>(d)]; }
  VertexId terminus(DartId d) const { return origin(reverse_dart(d)); }
  DartId reversal(DartId d) const { return reverse_dart(d); }

  std::pair<VertexId, VertexId> endpoints(EdgeId e) const {
    return {origin(forward_dart(e)), terminus(forward_dart(e))};
  }

  // Darts based at v, ascending by id.
  std::span<const DartId> darts_at(VertexId v) const {
    auto lo = static_cast<std::size_t>(at_offset_[static_cast<std::size_t>(v)]);
    auto hi = static_cast<std::size_t>(at_offset_[static_cast<std::size_t>(v) + 1]);
    return {at_darts_.data() + lo, hi - lo};
  }

  int valence(VertexId v) const { return static_cast<int>(darts_at(v).size()); }

  bool operator==(const Graph&) const = default;

 private:
  friend class GraphBuilder;

  std::int32_t vertex_count_ = 0;
  std::vector<VertexId> origin_;
  std::vector<std::int32_t> at_offset_;
  std::vector<DartId> at_darts_;
};

class GraphBuilder {
 public:
  VertexId add_vertex();
  // Adds a geometric edge from u to v; the forward dart runs u -> v.
  EdgeId add_edge(VertexId u, VertexId v);
  Graph build() const;

 private:
  std::int32_t vertex_count_ = 0;
  std::vector<VertexId> origin_;
};

class Subgraph;

struct MaterializedSubgraph {
  Graph graph;
  std::vector<VertexId> vertex_to_parent;  // new vertex id -> parent vertex id
  std::vector<DartId> dart_to_parent;      // new dart id -> parent dart id
};

/**
 * A subgraph of a parent graph: a vertex subset plus a reversal-closed dart
 * subset whose origins are all kept. The parent must outlive the handle.
 */
class Subgraph {
 public:
  static Subgraph of(const Graph& parent, std::vector<bool> vertex_mask,
                     std::vector<bool> dart_mask);
  static Subgraph full(const Graph& parent);
  static Subgraph empty_in(const Graph& parent);

  const Graph& parent() const { return *parent_; }

  bool has_vertex(VertexId v) const { return vertex_mask_[static_cast<std::size_t>(v)]; }
  bool has_dart(DartId d) const { return dart_mask_[static_cast<std::size_t>(d)]; }
  bool has_edge(EdgeId e) const { return has_dart(forward_dart(e)); }

  std::int32_t vertex_count() const { return vertex_count_; }
  std::int32_t dart_count() const { return dart_count_; }
  std::int32_t edge_count() const { return dart_count_ / 2; }
  bool empty() const { return vertex_count_ == 0 && dart_count_ == 0; }

  std::vector<VertexId> vertices() const;
  std::vector<DartId> darts() const;
  std::vector<EdgeId> edges() const;

  // Valence of v counting only kept darts.
  int valence(VertexId v) const;

  // True when the subgraph is a single topological circle: nonempty,
  // connected, every vertex of valence exactly 2.
  bool is_circle() const;

  // Induced graph with dense ids; vertices and edges keep ascending parent
  // order, forward darts stay forward.
  MaterializedSubgraph materialize() const;

  bool same_extent(const Subgraph& other) const {
    return vertex_mask_ == other.vertex_mask_ && dart_mask_ == other.dart_mask_;
  }

 private:
  Subgraph(const Graph& parent, std::vector<bool> vmask, std::vector<bool> dmask);

  const Graph* parent_;
  std::vector<bool> vertex_mask_;
  std::vector<bool> dart_mask_;
  std::int32_t vertex_count_ = 0;
  std::int32_t dart_count_ = 0;
};

/**
 * An edge-path: a sequence of consecutively incident darts. The empty path
 * carries its basepoint vertex. Not necessarily tight.
 */
struct EdgePath {
  std::vector<DartId> darts;
  VertexId basepoint = -1;  // origin of the path (meaningful when empty)

  bool empty() const { return darts.empty(); }
  std::size_t length() const { return darts.size(); }
};

EdgePath make_path(const Graph& g, std::vector<DartId> darts,
                   std::optional<VertexId> basepoint = std::nullopt);
VertexId path_origin(const Graph& g, const EdgePath& p);
VertexId path_terminus(const Graph& g, const EdgePath& p);
bool is_tight(const EdgePath& p);

// Stack-based free reduction; keeps endpoints.
EdgePath tighten(const Graph& g, const EdgePath& p);
EdgePath reverse_path(const Graph& g, const EdgePath& p);

/**
 * A nonempty immersed loop considered up to rotation. Stored in canonical
 * form: the lexicographically least rotation of its dart sequence.
 */
class CyclicPath {
 public:
  // Validates cyclic incidence and cyclic tightness, then canonicalizes.
  static CyclicPath canonical(const Graph& g, std::vector<DartId> darts);

  // Frees cyclically-cancelling pairs first; nullopt if everything cancels.
  static std::optional<CyclicPath> reduce(const Graph& g, std::vector<DartId> darts);

  std::span<const DartId> darts() const { return darts_; }
  std::size_t length() const { return darts_.size(); }

  CyclicPath power(const Graph& g, int exponent) const;
  CyclicPath reversed(const Graph& g) const;

  bool operator==(const CyclicPath& other) const { return darts_ == other.darts_; }
  bool operator<(const CyclicPath& other) const { return darts_ < other.darts_; }

 private:
  CyclicPath() = default;
  std::vector<DartId> darts_;
};

// Index of the lexicographically least rotation (Booth's algorithm).
std::size_t least_rotation(std::span<const DartId> seq);

// --- core operations -------------------------------------------------------

// Maximal subgraph with every vertex of valence >= 2, computed by iterated
// pruning of valence-<=1 vertices. Possibly empty.
Subgraph core_subgraph(const Graph& g);
Subgraph core_subgraph(const Subgraph& s);

// Connected components, ordered by least vertex id. Isolated vertices form
// their own components.
std::vector<Subgraph> components(const Graph& g);
std::vector<Subgraph> components(const Subgraph& s);

// Sum over components C of the core of max(0, rank(C) - 1), where
// rank = edges - vertices + 1 per component.
std::int64_t neg_euler(const Graph& g);
std::int64_t neg_euler(const Subgraph& s);

// The cyclic dart word traversing a circle component once, canonical
// rotation. Throws if the subgraph is not a circle.
CyclicPath loop_component_word(const Subgraph& component);

}  // namespace mtor

#endif  // MTOR_CORE_GRAPH_HPP
