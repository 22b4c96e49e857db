#ifndef MTOR_CORE_FIXTURES_HPP
#define MTOR_CORE_FIXTURES_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core/words.hpp"

namespace mtor {

/** A named self-map described directly on a graph. */
struct GraphMapInput {
  std::vector<std::string> vertex_names;
  std::vector<std::string> edge_names;
  GraphMap map;
};

/** A named endomorphism; its rose map realizes it on a graph. */
struct EndoInput {
  Endomorphism endo;
};

/**
 * A parsed input document: exactly one of a graph self-map or an
 * endomorphism, plus an optional name.
 */
struct InputDocument {
  std::string name;
  std::variant<GraphMapInput, EndoInput> payload;

  bool is_endomorphism() const { return std::holds_alternative<EndoInput>(payload); }
  const Endomorphism* endomorphism() const {
    auto* e = std::get_if<EndoInput>(&payload);
    return e ? &e->endo : nullptr;
  }

  // The self-map to run the machinery on: the map itself, or the rose map of
  // the endomorphism.
  GraphMap realize_map() const;

  // Human names for darts/vertices of the realized map's domain.
  std::string dart_name(DartId d) const;
  std::string vertex_name(VertexId v) const;
  std::string path_name(std::span<const DartId> darts) const;
};

// Built-in examples: bs12, sapir, phi2, phi3, phi4, identity, deg1 and the
// parametric family psi:<d>.
std::optional<InputDocument> builtin_fixture(const std::string& name);
std::vector<std::string> builtin_fixture_names();

}  // namespace mtor

#endif  // MTOR_CORE_FIXTURES_HPP
