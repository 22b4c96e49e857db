#include "core/fixtures.hpp"

#include <charconv>
#include <stdexcept>

namespace mtor {

GraphMap InputDocument::realize_map() const {
  if (auto* g = std::get_if<GraphMapInput>(&payload)) return g->map;
  return rose_map(std::get<EndoInput>(payload).endo);
}

std::string InputDocument::dart_name(DartId d) const {
  std::string base;
  if (auto* g = std::get_if<GraphMapInput>(&payload)) {
    base = g->edge_names[static_cast<std::size_t>(edge_of_dart(d))];
  } else {
    base = std::string(1, static_cast<char>('a' + edge_of_dart(d)));
  }
  if (!is_forward(d)) base += '\'';
  return base;
}

std::string InputDocument::vertex_name(VertexId v) const {
  if (auto* g = std::get_if<GraphMapInput>(&payload)) {
    return g->vertex_names[static_cast<std::size_t>(v)];
  }
  return "v0";
}

std::string InputDocument::path_name(std::span<const DartId> darts) const {
  std::string out;
  for (std::size_t i = 0; i < darts.size(); ++i) {
    if (i > 0) out += ' ';
    out += dart_name(darts[i]);
  }
  return out;
}

namespace {

Word parse_letters(std::initializer_list<int> codes) {
  Word w;
  for (int c : codes) w.letters.push_back(c);
  return w;
}

InputDocument endo_fixture(std::string name, int rank, std::vector<Word> images) {
  Endomorphism e{rank, std::move(images)};
  validate(e);
  InputDocument doc;
  doc.name = std::move(name);
  doc.payload = EndoInput{std::move(e)};
  return doc;
}

// letter codes: a=0 a'=1 b=2 b'=3 c=4 c'=5 d=6 d'=7

InputDocument make_sapir() {
  return endo_fixture("sapir", 2, {parse_letters({0, 2}), parse_letters({2, 0})});
}

InputDocument make_psi(int d) {
  Word image;
  for (int i = 0; i < d; ++i) image.letters.push_back(0);
  return endo_fixture("psi:" + std::to_string(d), 1, {image});
}

// circle doubling as a one-edge graph map
InputDocument make_bs12() {
  GraphBuilder builder;
  VertexId v = builder.add_vertex();
  builder.add_edge(v, v);
  Graph circle = builder.build();
  GraphMap map = GraphMap::from_forward_images(circle, circle, {v}, {{0, 0}});
  InputDocument doc;
  doc.name = "bs12";
  doc.payload = GraphMapInput{{"v0"}, {"e0"}, std::move(map)};
  return doc;
}

InputDocument make_identity() {
  return endo_fixture("identity", 2, {parse_letters({0}), parse_letters({2})});
}

// a -> a, b -> b a; its rose map fails the immersion check (the inverse
// darts of a and b share the first image dart), so it exercises the
// word-level tooling rather than the decision pipeline.
InputDocument make_deg1() {
  return endo_fixture("deg1", 2, {parse_letters({0}), parse_letters({2, 0})});
}

InputDocument make_phi2() {
  // a -> b a', b -> a a a b' a b' a a
  return endo_fixture("phi2", 2,
                      {parse_letters({2, 1}), parse_letters({0, 0, 0, 3, 0, 3, 0, 0})});
}

InputDocument make_phi3() {
  // a -> b, b -> a c a', c -> a b' a c' a' b a
  return endo_fixture("phi3", 3,
                      {parse_letters({2}), parse_letters({0, 4, 1}),
                       parse_letters({0, 3, 0, 5, 1, 2, 0})});
}

InputDocument make_phi4() {
  // a -> b, b -> a c, c -> d a', d -> a b' a d' b' a c a
  return endo_fixture("phi4", 4,
                      {parse_letters({2}), parse_letters({0, 4}), parse_letters({6, 1}),
                       parse_letters({0, 3, 0, 7, 3, 0, 4, 0})});
}

}  // namespace

std::optional<InputDocument> builtin_fixture(const std::string& name) {
  if (name == "bs12") return make_bs12();
  if (name == "sapir") return make_sapir();
  if (name == "identity") return make_identity();
  if (name == "deg1") return make_deg1();
  if (name == "phi2") return make_phi2();
  if (name == "phi3") return make_phi3();
  if (name == "phi4") return make_phi4();
  if (name.starts_with("psi:")) {
    int d = 0;
    const char* first = name.data() + 4;
    const char* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, d);
    if (ec != std::errc() || ptr != last || d < 1 || d > 64) return std::nullopt;
    return make_psi(d);
  }
  return std::nullopt;
}

std::vector<std::string> builtin_fixture_names() {
  return {"bs12", "sapir", "identity", "deg1", "phi2", "phi3", "phi4", "psi:<d>"};
}

}  // namespace mtor
