#ifndef MTOR_CORE_SUBDIVISION_HPP
#define MTOR_CORE_SUBDIVISION_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "core/graph_map.hpp"

namespace mtor {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/**
 * An exact point of a graph: either a vertex or an interior point of an
 * edge, stored on the forward dart with offset in (0,1). The map acts on
 * points by stretching each dart affinely across its image path.
 */
class ExactPoint {
 public:
  static ExactPoint at_vertex(VertexId v);
  static ExactPoint on_edge(DartId d, Rational offset);  // canonicalizes orientation

  bool is_vertex() const { return dart_ < 0; }
  VertexId vertex() const { return vertex_; }
  DartId dart() const { return dart_; }
  const Rational& offset() const { return offset_; }

  bool operator==(const ExactPoint& other) const {
    return vertex_ == other.vertex_ && dart_ == other.dart_ && offset_ == other.offset_;
  }
  bool operator<(const ExactPoint& other) const;

 private:
  VertexId vertex_ = -1;
  DartId dart_ = -1;
  Rational offset_ = 0;
};

ExactPoint map_point(const GraphMap& f, const ExactPoint& p);
ExactPoint map_point_iter(const GraphMap& f, ExactPoint p, int times);

/**
 * The depth-i subdivision of the domain of a self-immersion f: new vertices
 * at every interior point whose i-th image is a vertex. Each subdivided dart
 * then maps under f^i onto exactly one original dart, which is what lets the
 * fibered product of f^i with itself be built dart by dart.
 */
class SubdividedSystem {
 public:
  const Graph& graph() const { return graph_; }  // the subdivided graph
  const GraphMap& base_map() const { return base_map_; }
  int depth() const { return depth_; }

  // Exact location in the original graph of a subdivided vertex.
  const ExactPoint& vertex_point(VertexId v) const { return vertex_point_[static_cast<std::size_t>(v)]; }

  // Original vertices keep their ids; everything above is a subdivision point.
  bool vertex_is_original(VertexId v) const { return v < base_map_.domain().vertex_count(); }

  // f^depth image of a subdivided dart, a single original dart.
  DartId dart_image(DartId d) const { return dart_image_[static_cast<std::size_t>(d)]; }

  // f^depth image of a subdivided vertex, an original vertex.
  VertexId vertex_image(VertexId v) const { return vertex_image_[static_cast<std::size_t>(v)]; }

  // Original dart a subdivided dart lies inside, orientation matched.
  DartId dart_container(DartId d) const { return dart_container_[static_cast<std::size_t>(d)]; }

  // Collapses a cyclic walk in the subdivided graph back to the original
  // graph, emitting one dart per full edge crossing.
  CyclicPath collapse_cyclic(std::span<const DartId> subdivided_loop) const;

 private:
  friend SubdividedSystem subdivide_for(const GraphMap& f, int depth);

  Graph graph_;
  GraphMap base_map_;
  int depth_ = 0;
  std::vector<ExactPoint> vertex_point_;
  std::vector<DartId> dart_image_;
  std::vector<VertexId> vertex_image_;
  std::vector<DartId> dart_container_;
};

// Builds the depth-i subdivision of a certified immersion, depth >= 1.
SubdividedSystem subdivide_for(const GraphMap& f, int depth);

}  // namespace mtor

#endif  // MTOR_CORE_SUBDIVISION_HPP
