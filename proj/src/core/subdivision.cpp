#include "core/subdivision.hpp"

#include <algorithm>
#include <stdexcept>

namespace mtor {

ExactPoint ExactPoint::at_vertex(VertexId v) {
  ExactPoint p;
  p.vertex_ = v;
  return p;
}

ExactPoint ExactPoint::on_edge(DartId d, Rational offset) {
  if (offset <= 0 || offset >= 1) {
    throw std::invalid_argument("ExactPoint::on_edge: offset must lie strictly inside (0,1)");
  }
  ExactPoint p;
  if (is_forward(d)) {
    p.dart_ = d;
    p.offset_ = std::move(offset);
  } else {
    p.dart_ = reverse_dart(d);
    p.offset_ = 1 - offset;
  }
  return p;
}

bool ExactPoint::operator<(const ExactPoint& other) const {
  if (is_vertex() != other.is_vertex()) return is_vertex();
  if (is_vertex()) return vertex_ < other.vertex_;
  if (dart_ != other.dart_) return dart_ < other.dart_;
  return offset_ < other.offset_;
}

ExactPoint map_point(const GraphMap& f, const ExactPoint& p) {
  if (p.is_vertex()) {
    return ExactPoint::at_vertex(f.vertex_image(p.vertex()));
  }
  auto image = f.dart_image(p.dart());
  const auto m = static_cast<std::int64_t>(image.size());
  Rational scaled = p.offset() * m;
  BigInt k = numerator(scaled) / denominator(scaled);
  auto ki = static_cast<std::int64_t>(k);
  if (scaled == Rational(k)) {
    // hits the junction vertex between image darts ki-1 and ki
    return ExactPoint::at_vertex(f.codomain().origin(image[static_cast<std::size_t>(ki)]));
  }
  return ExactPoint::on_edge(image[static_cast<std::size_t>(ki)], scaled - Rational(k));
}

ExactPoint map_point_iter(const GraphMap& f, ExactPoint p, int times) {
  for (int i = 0; i < times; ++i) p = map_point(f, p);
  return p;
}

namespace {

// Breakpoints and per-segment image darts of one dart under f^level.
struct DartSegments {
  std::vector<Rational> breaks;  // 0 = breaks[0] < ... < breaks[n] = 1
  std::vector<DartId> images;    // one original dart per segment
};

std::vector<DartSegments> level_table(const GraphMap& f, int depth) {
  const Graph& g = f.domain();
  std::vector<DartSegments> cur(static_cast<std::size_t>(g.dart_count()));
  for (DartId d = 0; d < g.dart_count(); ++d) {
    cur[static_cast<std::size_t>(d)].breaks = {Rational(0), Rational(1)};
    cur[static_cast<std::size_t>(d)].images = {d};
  }
  for (int level = 1; level <= depth; ++level) {
    std::vector<DartSegments> next(static_cast<std::size_t>(g.dart_count()));
    for (DartId d = 0; d < g.dart_count(); ++d) {
      auto image = f.dart_image(d);
      const auto m = static_cast<std::int64_t>(image.size());
      DartSegments out;
      out.breaks.push_back(Rational(0));
      for (std::int64_t k = 0; k < m; ++k) {
        const DartSegments& sub = cur[static_cast<std::size_t>(image[static_cast<std::size_t>(k)])];
        for (std::size_t s = 0; s < sub.images.size(); ++s) {
          out.breaks.push_back((Rational(k) + sub.breaks[s + 1]) / m);
          out.images.push_back(sub.images[s]);
        }
      }
      next[static_cast<std::size_t>(d)] = std::move(out);
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

SubdividedSystem subdivide_for(const GraphMap& f, int depth) {
  if (depth < 1) {
    throw std::invalid_argument("subdivide_for: depth must be positive");
  }
  if (!f.is_self_map()) {
    throw std::invalid_argument("subdivide_for: self-map required");
  }
  const Graph& g = f.domain();
  auto table = level_table(f, depth);

  SubdividedSystem sys;
  sys.base_map_ = f;
  sys.depth_ = depth;

  GraphBuilder builder;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    builder.add_vertex();
    sys.vertex_point_.push_back(ExactPoint::at_vertex(v));
    VertexId img = v;
    for (int j = 0; j < depth; ++j) img = f.vertex_image(img);
    sys.vertex_image_.push_back(img);
  }

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    DartId d0 = forward_dart(e);
    const DartSegments& segs = table[static_cast<std::size_t>(d0)];
    const std::size_t count = segs.images.size();
    std::vector<VertexId> stops(count + 1);
    stops[0] = g.origin(d0);
    stops[count] = g.terminus(d0);
    for (std::size_t s = 1; s < count; ++s) {
      VertexId nv = builder.add_vertex();
      stops[s] = nv;
      sys.vertex_point_.push_back(ExactPoint::on_edge(d0, segs.breaks[s]));
      // interior breakpoint maps to the junction vertex of its two image darts
      sys.vertex_image_.push_back(g.origin(segs.images[s]));
    }
    for (std::size_t s = 0; s < count; ++s) {
      builder.add_edge(stops[s], stops[s + 1]);
      sys.dart_image_.push_back(segs.images[s]);
      sys.dart_image_.push_back(reverse_dart(segs.images[s]));
      sys.dart_container_.push_back(d0);
      sys.dart_container_.push_back(reverse_dart(d0));
    }
  }
  sys.graph_ = builder.build();
  return sys;
}

CyclicPath SubdividedSystem::collapse_cyclic(std::span<const DartId> subdivided_loop) const {
  std::vector<DartId> word;
  for (DartId d : subdivided_loop) {
    if (vertex_is_original(graph_.origin(d))) {
      word.push_back(dart_container(d));
    }
  }
  if (word.empty()) {
    throw std::invalid_argument("collapse_cyclic: loop never visits an original vertex");
  }
  return CyclicPath::canonical(base_map_.domain(), std::move(word));
}

}  // namespace mtor
