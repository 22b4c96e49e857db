#ifndef MTOR_CORE_GRAPH_MAP_HPP
#define MTOR_CORE_GRAPH_MAP_HPP

#include <optional>
#include <span>
#include <vector>

#include "core/graph.hpp"

namespace mtor {

/**
 * A combinatorial graph map: vertices to vertices, darts to nonempty tight
 * edge-paths, with images of reversed darts equal to reversed images.
 * Immutable after construction; the constructor validates all invariants.
 */
class GraphMap {
 public:
  GraphMap() = default;  // the unique self-map of the empty graph
  GraphMap(Graph domain, Graph codomain, std::vector<VertexId> vertex_map,
           std::vector<std::vector<DartId>> dart_map);

  // Builds the full dart map from images of forward darts only.
  static GraphMap from_forward_images(Graph domain, Graph codomain,
                                      std::vector<VertexId> vertex_map,
                                      const std::vector<std::vector<DartId>>& forward_images);

  const Graph& domain() const { return domain_; }
  const Graph& codomain() const { return codomain_; }
  bool is_self_map() const { return domain_ == codomain_; }

  VertexId vertex_image(VertexId v) const { return vertex_map_[static_cast<std::size_t>(v)]; }
  std::span<const DartId> dart_image(DartId d) const { return dart_map_[static_cast<std::size_t>(d)]; }

  bool operator==(const GraphMap&) const = default;

 private:
  Graph domain_;
  Graph codomain_;
  std::vector<VertexId> vertex_map_;
  std::vector<std::vector<DartId>> dart_map_;
};

GraphMap identity_map(const Graph& g);

// outer after inner; dart images are tightened. Throws if some composite
// dart image cancels away completely (cannot happen between immersions).
GraphMap compose(const GraphMap& outer, const GraphMap& inner);

// k-fold self-composition, k >= 1.
GraphMap iterate(const GraphMap& f, int k);

struct ImmersionViolation {
  VertexId vertex;
  DartId dart1;
  DartId dart2;  // distinct darts at vertex whose images start with the same dart
};

struct ImmersionCheck {
  std::optional<ImmersionViolation> violation;
  bool ok() const { return !violation.has_value(); }
};

// Local injectivity at every vertex of the domain: dart -> first dart of its
// image must be injective. Reports the first violation in id order.
ImmersionCheck check_immersion(const GraphMap& f);

EdgePath map_path(const GraphMap& f, const EdgePath& p);

// Image of a loop, cyclically tightened. nullopt when the image cancels to a
// point (possible only for non-immersions).
std::optional<CyclicPath> map_cyclic(const GraphMap& f, const CyclicPath& c);

// Maximum length of a dart image.
int max_image_length(const GraphMap& f);

// Edges whose iterated images stay single edges forever. Detected with a
// window of edge_count steps: a single-dart orbit that survives that long has
// entered a cycle of single-dart images.
Subgraph non_expanding_subgraph(const GraphMap& f);

// Edges of z lying on a cycle of the single-edge orbit map.
Subgraph periodic_part(const GraphMap& f, const Subgraph& z);

// Greedy maximal subgraph (ascending edge id) that is a forest and closed
// under taking edge images. Greedy maximality here implies true maximality:
// any larger invariant forest would offer a single addable edge orbit.
Subgraph max_invariant_forest(const GraphMap& f);

struct CollapsedSystem {
  Graph graph;                          // quotient graph
  GraphMap map;                         // induced self-map
  std::vector<VertexId> vertex_class;   // original vertex -> quotient vertex
  std::vector<EdgeId> edge_to_original; // quotient edge -> original edge
  std::vector<EdgeId> forest_edges;     // collapsed original edges, ascending
};

// Quotients each tree of the forest to a vertex and returns the induced map.
// Throws if the subgraph is not a forest or not closed under edge images.
CollapsedSystem collapse_forest(const GraphMap& f, const Subgraph& forest);

struct ExpansionCertificate {
  int n_prime = 0;        // every collapsed edge satisfies l(f'^n_prime(e)) >= 2
  int forest_k = 0;       // minimal k with 2^k - 1 > number of forest edges
  int n = 0;              // n = forest_k * n_prime
  CollapsedSystem collapsed;
};

// Certificate that the map expands every edge after collapsing its maximal
// invariant forest. nullopt when the search cap is exhausted, which is
// evidence of a fixed loop upstream rather than a verdict.
std::optional<ExpansionCertificate> expansion_exponent(const GraphMap& f, std::int64_t cap);

// Default search cap used by expansion_exponent callers.
std::int64_t default_expansion_cap(const Graph& g);

}  // namespace mtor

#endif  // MTOR_CORE_GRAPH_MAP_HPP
