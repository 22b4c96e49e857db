#ifndef MTOR_CORE_PULLBACK_HPP
#define MTOR_CORE_PULLBACK_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "core/subdivision.hpp"

namespace mtor {

/**
 * The fibered product of f^depth with itself: vertices are pairs of
 * subdivided vertices with equal images, darts are pairs of subdivided darts
 * with equal image darts. The diagonal is a copy of the subdivided graph and
 * swapping coordinates is a label-preserving automorphism.
 */
class PullbackGraph {
 public:
  const Graph& graph() const { return graph_; }
  int depth() const { return depth_; }
  const SubdividedSystem& system() const { return system_; }

  std::pair<VertexId, VertexId> vertex_pair(VertexId v) const {
    return vertex_pair_[static_cast<std::size_t>(v)];
  }
  std::pair<DartId, DartId> dart_pair(DartId d) const {
    DartId base = d & ~1;
    auto [l, r] = dart_pair_fwd_[static_cast<std::size_t>(base >> 1)];
    if (is_forward(d)) return {l, r};
    return {reverse_dart(l), reverse_dart(r)};
  }

  std::pair<ExactPoint, ExactPoint> vertex_label(VertexId v) const {
    auto [x, y] = vertex_pair(v);
    return {system_.vertex_point(x), system_.vertex_point(y)};
  }

 private:
  friend PullbackGraph pullback(const GraphMap& f, int depth);

  Graph graph_;
  int depth_ = 0;
  SubdividedSystem system_;
  std::vector<std::pair<VertexId, VertexId>> vertex_pair_;
  std::vector<std::pair<DartId, DartId>> dart_pair_fwd_;  // per edge, forward dart pair
};

PullbackGraph pullback(const GraphMap& f, int depth);

// Total count of subdivided darts at a given depth, saturating at the limit.
// Cheap length arithmetic, no construction.
std::int64_t subdivision_dart_count(const GraphMap& f, int depth, std::int64_t limit);

// Dart count the depth-i pullback would have, computed from a built
// subdivision without constructing the product.
std::int64_t pullback_dart_count(const SubdividedSystem& sys);

struct Classified {
  std::vector<Subgraph> components;  // of the pullback graph, by least vertex
  std::vector<bool> is_old;          // already present one depth down
};

// Splits components by whether their points already had equal images one
// depth earlier. The defining property is constant on components; this is
// re-checked on every vertex.
Classified classify_components(const PullbackGraph& p);

// Contract-checking variant: previous must be the pullback one depth down
// for the same map. Also verifies the chain property: old components match
// the previous pullback's components, label for label.
Classified classify_components(const PullbackGraph& p, const PullbackGraph& previous);

// Chain property check alone; throws std::logic_error with a description on
// violation.
void check_chain(const PullbackGraph& previous, const PullbackGraph& p);

// Core subgraphs of the new components at the given depth, in component
// order; empty cores are dropped. The returned handles reference the
// returned pullback's graph.
struct NewCore {
  PullbackGraph pullback;
  std::vector<Subgraph> cores;  // nonempty core subgraphs of new components
};
NewCore new_core(const GraphMap& f, int depth);

struct LoopPair {
  std::size_t core_index;  // index into the NewCore::cores list
  CyclicPath c_minus;      // left projection, collapsed to the original graph
  CyclicPath c_plus;       // right projection
};

// Projects each circle component of the depth-i new core to its two
// coordinate loops. Throws if some new-core component is not a circle.
std::vector<LoopPair> loop_pairs(const NewCore& nc);
std::vector<LoopPair> loop_pairs(const GraphMap& f, int depth);

// Primitive root and maximal exponent of a cyclic path.
std::pair<CyclicPath, int> minimal_root(const Graph& g, const CyclicPath& c);

// Number of (start, length) pairs whose subpath of the periodic extension
// begins and ends at the same vertex; start in [0, l), length in [1, l].
// Input must be primitive.
std::int64_t subloop_count(const Graph& g, const CyclicPath& c);

}  // namespace mtor

#endif  // MTOR_CORE_PULLBACK_HPP
