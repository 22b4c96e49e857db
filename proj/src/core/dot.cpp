#include "core/dot.hpp"

#include <sstream>

namespace mtor {

namespace {

std::string point_name(const InputDocument& doc, const ExactPoint& p) {
  if (p.is_vertex()) return doc.vertex_name(p.vertex());
  std::ostringstream os;
  os << doc.dart_name(p.dart()) << "@" << numerator(p.offset()) << "/" << denominator(p.offset());
  return os.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string pullback_dot(const InputDocument& doc, const PullbackGraph& p,
                         const Classified& classification) {
  const Graph& g = p.graph();
  std::vector<int> comp_of(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<bool> in_core(static_cast<std::size_t>(g.vertex_count()), false);
  std::vector<bool> edge_core(static_cast<std::size_t>(g.edge_count()), false);
  for (std::size_t ci = 0; ci < classification.components.size(); ++ci) {
    const Subgraph& comp = classification.components[ci];
    for (VertexId v : comp.vertices()) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(ci);
    if (!classification.is_old[ci]) {
      Subgraph core = core_subgraph(comp);
      for (VertexId v : core.vertices()) in_core[static_cast<std::size_t>(v)] = true;
      for (EdgeId e : core.edges()) edge_core[static_cast<std::size_t>(e)] = true;
    }
  }

  std::ostringstream os;
  os << "graph pullback_depth_" << p.depth() << " {\n";
  os << "  graph [label=\"depth " << p.depth() << "\"];\n";
  os << "  node [shape=point, width=0.08];\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto [lx, ly] = p.vertex_label(v);
    bool old_flag = classification.is_old[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(v)])];
    os << "  n" << v << " [label=\"(" << escape(point_name(doc, lx)) << ", "
       << escape(point_name(doc, ly)) << ")\"";
    if (old_flag) {
      os << ", color=gray";
    } else if (in_core[static_cast<std::size_t>(v)]) {
      os << ", color=red";
    }
    os << "];\n";
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [from, to] = g.endpoints(e);
    bool old_flag = classification.is_old[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(from)])];
    os << "  n" << from << " -- n" << to;
    if (old_flag) {
      os << " [color=gray]";
    } else if (edge_core[static_cast<std::size_t>(e)]) {
      os << " [color=red, penwidth=2]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace mtor
