#include <doctest.h>

#include <random>
#include <stdexcept>

#include "core/graph_map.hpp"
#include "test_support.hpp"

using namespace mtor;

namespace {

// v0 --e0-- v1 with a fixed non-loop edge e0, a loop e1 at v1 expanding
// across e0, and a loop e2 at v0. Immersion with invariant forest {e0}.
GraphMap fixed_edge_map() {
  GraphBuilder b;
  VertexId v0 = b.add_vertex();
  VertexId v1 = b.add_vertex();
  b.add_edge(v0, v1);  // e0, darts 0/1
  b.add_edge(v1, v1);  // e1, darts 2/3
  b.add_edge(v0, v0);  // e2, darts 4/5
  Graph g = b.build();
  return GraphMap::from_forward_images(g, g, {v0, v1},
                                       {{0}, {2, 1, 4, 0, 2}, {4, 4}});
}

}  // namespace

TEST_CASE("check_immersion on the fixtures") {
  CHECK(check_immersion(test::fixture_map("sapir")).ok());
  CHECK(check_immersion(identity_map(test::rose(3))).ok());

  ImmersionCheck phi3 = check_immersion(test::fixture_map("phi3"));
  REQUIRE(!phi3.ok());
  CHECK(phi3.violation->vertex == 0);
  CHECK(phi3.violation->dart1 == 2);  // b
  CHECK(phi3.violation->dart2 == 3);  // b'
  // re-checkable: both images start with the same dart
  GraphMap f = test::fixture_map("phi3");
  CHECK(f.dart_image(2).front() == f.dart_image(3).front());

  CHECK(check_immersion(fixed_edge_map()).ok());
  CHECK(!check_immersion(test::fixture_map("deg1")).ok());
}

TEST_CASE("map_path and map_cyclic") {
  GraphMap sapir = test::fixture_map("sapir");
  const Graph& rose = sapir.domain();

  auto image = map_cyclic(sapir, CyclicPath::canonical(rose, {0}));
  REQUIRE(image.has_value());
  CHECK(*image == CyclicPath::canonical(rose, {0, 2}));  // a -> a b

  GraphMap id = identity_map(rose);
  EdgePath p = make_path(rose, {0, 2, 1});
  CHECK(map_path(id, p).darts == p.darts);

  GraphMap doubling = test::fixture_map("bs12");
  auto twice = map_cyclic(doubling, CyclicPath::canonical(doubling.domain(), {0}));
  REQUIRE(twice.has_value());
  CHECK(twice->length() == 2);
  CHECK(*twice == CyclicPath::canonical(doubling.domain(), {0, 0}));
}

TEST_CASE("iterate") {
  GraphMap sapir = test::fixture_map("sapir");
  GraphMap sapir2 = iterate(sapir, 2);
  CHECK(std::vector<DartId>(sapir2.dart_image(0).begin(), sapir2.dart_image(0).end()) ==
        std::vector<DartId>{0, 2, 2, 0});  // a -> a b b a

  GraphMap doubling = test::fixture_map("bs12");
  CHECK(iterate(doubling, 3).dart_image(0).size() == 8);

  GraphMap id = identity_map(test::rose(2));
  CHECK(iterate(id, 5) == id);

  CHECK_THROWS_AS(iterate(sapir, 0), std::invalid_argument);
}

TEST_CASE("iterate composes additively") {
  GraphMap f = test::fixture_map("sapir");
  CHECK(iterate(f, 5) == compose(iterate(f, 2), iterate(f, 3)));
  GraphMap g = fixed_edge_map();
  CHECK(iterate(g, 4) == compose(iterate(g, 1), iterate(g, 3)));
}

TEST_CASE("max_image_length") {
  CHECK(max_image_length(test::fixture_map("sapir")) == 2);
  CHECK(max_image_length(identity_map(test::rose(2))) == 1);
  CHECK(max_image_length(test::fixture_map("psi:5")) == 5);
}

TEST_CASE("image lengths are additive for immersions and nondecreasing") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    Endomorphism e = test::random_rose_immersion(rng, 2, 3);
    GraphMap f = rose_map(e);
    // no cancellation: the image of a tight path concatenates exactly
    Word w = test::random_reduced_word(rng, 2, 5);
    EdgePath p = make_path(f.domain(), std::vector<DartId>(w.letters.begin(), w.letters.end()));
    std::size_t expect = 0;
    for (DartId d : p.darts) expect += f.dart_image(d).size();
    CHECK(map_path(f, p).length() == expect);

    GraphMap cur = f;
    std::size_t prev = 1;
    for (int j = 1; j <= 4; ++j) {
      std::size_t len = cur.dart_image(0).size();
      CHECK(len >= prev);
      prev = len;
      cur = compose(f, cur);
    }
  }
}

TEST_CASE("non_expanding_subgraph") {
  CHECK(non_expanding_subgraph(test::fixture_map("sapir")).empty());

  GraphMap id = identity_map(test::rose(2));
  Subgraph all = non_expanding_subgraph(id);
  CHECK(all.edge_count() == 2);

  // a -> a, b -> b a: image lengths of b grow, a stays put
  Subgraph z = non_expanding_subgraph(test::fixture_map("deg1"));
  CHECK(z.edge_count() == 1);
  CHECK(z.has_edge(0));
}

TEST_CASE("periodic_part") {
  GraphMap id = identity_map(test::rose(2));
  Subgraph z = non_expanding_subgraph(id);
  Subgraph p = periodic_part(id, z);
  CHECK(p.edge_count() == 2);

  GraphMap deg1 = test::fixture_map("deg1");
  Subgraph z1 = non_expanding_subgraph(deg1);
  Subgraph p1 = periodic_part(deg1, z1);
  CHECK(p1.edge_count() == 1);
  CHECK(p1.has_edge(0));

  GraphMap sapir = test::fixture_map("sapir");
  CHECK(periodic_part(sapir, non_expanding_subgraph(sapir)).empty());
}

TEST_CASE("max_invariant_forest") {
  CHECK(max_invariant_forest(test::fixture_map("sapir")).empty());

  // the only invariant candidate {a} is a loop, not a forest
  CHECK(max_invariant_forest(test::fixture_map("deg1")).empty());

  GraphMap fixed = fixed_edge_map();
  Subgraph forest = max_invariant_forest(fixed);
  CHECK(forest.edge_count() == 1);
  CHECK(forest.has_edge(0));

  CollapsedSystem collapsed = collapse_forest(fixed, forest);
  CHECK(collapsed.graph.vertex_count() == fixed.domain().vertex_count() - 1);
  CHECK(collapsed.graph.edge_count() == 2);
  CHECK(check_immersion(collapsed.map).ok());
  CHECK(collapsed.forest_edges == std::vector<EdgeId>{0});

  // collapse errors on junk subgraphs
  GraphMap sapir = test::fixture_map("sapir");
  CHECK_THROWS_AS(collapse_forest(sapir, Subgraph::full(sapir.domain())),
                  std::invalid_argument);
}

TEST_CASE("collapsed lengths count non-forest darts") {
  GraphMap fixed = fixed_edge_map();
  CollapsedSystem collapsed = collapse_forest(fixed, max_invariant_forest(fixed));
  std::vector<DartId> dart_new(static_cast<std::size_t>(fixed.domain().dart_count()), -1);
  for (std::size_t ne = 0; ne < collapsed.edge_to_original.size(); ++ne) {
    DartId old = forward_dart(collapsed.edge_to_original[ne]);
    dart_new[static_cast<std::size_t>(old)] = forward_dart(static_cast<EdgeId>(ne));
    dart_new[static_cast<std::size_t>(reverse_dart(old))] =
        reverse_dart(forward_dart(static_cast<EdgeId>(ne)));
  }
  // tight loops through the forest edge e0
  for (std::vector<DartId> loop :
       {std::vector<DartId>{0, 2, 1, 4}, std::vector<DartId>{2, 1, 4, 4, 0}}) {
    CyclicPath c = CyclicPath::canonical(fixed.domain(), loop);
    std::size_t non_forest = 0;
    std::vector<DartId> collapsed_word;
    for (DartId d : c.darts()) {
      if (dart_new[static_cast<std::size_t>(d)] >= 0) {
        ++non_forest;
        collapsed_word.push_back(dart_new[static_cast<std::size_t>(d)]);
      }
    }
    CyclicPath down = CyclicPath::canonical(collapsed.graph, collapsed_word);
    CHECK(down.length() == non_forest);
  }
}

TEST_CASE("expansion_exponent") {
  auto sapir = expansion_exponent(test::fixture_map("sapir"), 64);
  REQUIRE(sapir.has_value());
  CHECK(sapir->n_prime == 1);
  CHECK(sapir->forest_k == 1);
  CHECK(sapir->n == 1);
  CHECK(sapir->collapsed.forest_edges.empty());

  auto doubling = expansion_exponent(test::fixture_map("bs12"), 64);
  REQUIRE(doubling.has_value());
  CHECK(doubling->n == 1);

  CHECK(!expansion_exponent(identity_map(test::rose(2)), 64).has_value());

  auto fixed = expansion_exponent(fixed_edge_map(), 64);
  REQUIRE(fixed.has_value());
  CHECK(fixed->forest_k == 2);  // forest has one edge, so 2^k - 1 > 1 needs k = 2
}

TEST_CASE("expansion certificate scales to powers of two") {
  // l(f'^{m n'}(e)) >= 2^m for every collapsed edge
  for (const char* name : {"sapir", "bs12"}) {
    auto cert = expansion_exponent(test::fixture_map(name), 64);
    REQUIRE(cert.has_value());
    const GraphMap& fp = cert->collapsed.map;
    for (int mult = 1; mult <= 3; ++mult) {
      GraphMap it = iterate(fp, mult * cert->n_prime);
      for (EdgeId e = 0; e < cert->collapsed.graph.edge_count(); ++e) {
        CHECK(it.dart_image(forward_dart(e)).size() >= (std::size_t{1} << mult));
      }
    }
  }
}

TEST_CASE("sampled loops flare at scale n") {
  // with no fixed loop, every loop doubles between scales n and 2n
  std::mt19937 rng(31);
  for (const char* name : {"sapir"}) {
    GraphMap f = test::fixture_map(name);
    auto cert = expansion_exponent(f, 64);
    REQUIRE(cert.has_value());
    GraphMap fn = iterate(f, cert->n);
    for (int trial = 0; trial < 20; ++trial) {
      Word w = test::random_reduced_word(rng, 2, 6);
      auto c = CyclicPath::reduce(f.domain(),
                                  std::vector<DartId>(w.letters.begin(), w.letters.end()));
      if (!c.has_value()) continue;
      auto once = map_cyclic(fn, *c);
      REQUIRE(once.has_value());
      auto twice = map_cyclic(fn, *once);
      REQUIRE(twice.has_value());
      CHECK(2 * once->length() <= twice->length());
    }
  }
}

TEST_CASE("forest_k=1 needs 2^1-1 > forest size") {
  GraphMap fixed = fixed_edge_map();
  auto cert = expansion_exponent(fixed, 64);
  REQUIRE(cert.has_value());
  CHECK(cert->collapsed.forest_edges.size() == 1);
  CHECK(cert->forest_k == 2);  // 2^2 - 1 = 3 > 1
  CHECK(cert->n == 2 * cert->n_prime);
}
