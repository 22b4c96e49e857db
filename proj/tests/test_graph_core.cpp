#include <doctest.h>

#include <algorithm>
#include <random>

#include "core/graph.hpp"
#include "test_support.hpp"

using namespace mtor;

TEST_CASE("core of a loop with a tail is the loop alone") {
  // vertices 0..3: self-loop at 0, tail 0-1-2-3
  GraphBuilder b;
  for (int i = 0; i < 4; ++i) b.add_vertex();
  b.add_edge(0, 0);
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  b.add_edge(2, 3);
  Graph g = b.build();
  Subgraph core = core_subgraph(g);
  CHECK(core.vertex_count() == 1);
  CHECK(core.edge_count() == 1);
  CHECK(core.has_edge(0));
  CHECK(!core.has_edge(1));
}

TEST_CASE("core of a tree is empty") {
  Graph g = test::path_graph(5);
  Subgraph core = core_subgraph(g);
  CHECK(core.empty());
}

TEST_CASE("core of the theta graph is everything") {
  Graph g = test::theta_graph();
  Subgraph core = core_subgraph(g);
  CHECK(core.vertex_count() == 2);
  CHECK(core.edge_count() == 3);
}

TEST_CASE("core_subgraph is idempotent") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> nv(1, 7), ne(0, 9);
  for (int trial = 0; trial < 50; ++trial) {
    GraphBuilder b;
    int n = nv(rng);
    for (int i = 0; i < n; ++i) b.add_vertex();
    int m = ne(rng);
    std::uniform_int_distribution<int> pv(0, n - 1);
    for (int i = 0; i < m; ++i) b.add_edge(pv(rng), pv(rng));
    Graph g = b.build();
    Subgraph once = core_subgraph(g);
    Subgraph twice = core_subgraph(once);
    CHECK(once.same_extent(twice));
    CHECK(neg_euler(core_subgraph(g)) == neg_euler(g));
  }
}

TEST_CASE("components: loop plus theta") {
  GraphBuilder b;
  for (int i = 0; i < 3; ++i) b.add_vertex();
  b.add_edge(0, 0);       // loop on vertex 0
  b.add_edge(1, 2);
  b.add_edge(1, 2);
  b.add_edge(1, 2);       // theta on vertices 1, 2
  Graph g = b.build();
  auto comps = components(g);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].has_vertex(0));
  CHECK(comps[0].edge_count() == 1);
  CHECK(comps[1].has_vertex(1));
  CHECK(comps[1].edge_count() == 3);
}

TEST_CASE("components: connected rose and empty graph") {
  CHECK(components(test::rose(3)).size() == 1);
  CHECK(components(Graph()).empty());
}

TEST_CASE("components partition darts and respect reversal") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> nv(1, 8), ne(0, 10);
  for (int trial = 0; trial < 30; ++trial) {
    GraphBuilder b;
    int n = nv(rng);
    for (int i = 0; i < n; ++i) b.add_vertex();
    std::uniform_int_distribution<int> pv(0, n - 1);
    int m = ne(rng);
    for (int i = 0; i < m; ++i) b.add_edge(pv(rng), pv(rng));
    Graph g = b.build();
    auto comps = components(g);
    std::vector<int> owner(static_cast<std::size_t>(g.dart_count()), -1);
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      for (DartId d : comps[ci].darts()) {
        CHECK(owner[static_cast<std::size_t>(d)] == -1);
        owner[static_cast<std::size_t>(d)] = static_cast<int>(ci);
      }
    }
    for (DartId d = 0; d < g.dart_count(); ++d) {
      CHECK(owner[static_cast<std::size_t>(d)] >= 0);
      CHECK(owner[static_cast<std::size_t>(d)] ==
            owner[static_cast<std::size_t>(reverse_dart(d))]);
    }
  }
}

TEST_CASE("neg_euler of small graphs") {
  CHECK(neg_euler(test::rose(2)) == 1);

  GraphBuilder b;  // three disjoint circles
  for (int i = 0; i < 3; ++i) {
    VertexId v = b.add_vertex();
    b.add_edge(v, v);
  }
  CHECK(neg_euler(b.build()) == 0);

  CHECK(neg_euler(test::rose(3)) == 2);
  CHECK(neg_euler(test::path_graph(4)) == 0);
}

TEST_CASE("loop_component_word on circles") {
  Graph loop = test::rose(1);
  CyclicPath w = loop_component_word(Subgraph::full(loop));
  CHECK(w.length() == 1);
  CHECK(w.darts()[0] == 0);

  Graph square = test::cycle_graph(4);
  CyclicPath w4 = loop_component_word(Subgraph::full(square));
  CHECK(w4.length() == 4);
  CHECK(w4.darts()[0] == 0);

  CHECK_THROWS_AS(loop_component_word(Subgraph::full(test::theta_graph())),
                  std::invalid_argument);
}

TEST_CASE("least_rotation matches a naive scan") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> len(1, 12), val(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<DartId> seq(static_cast<std::size_t>(len(rng)));
    for (auto& x : seq) x = val(rng);
    std::size_t naive = 0;
    auto rotated = [&](std::size_t r) {
      std::vector<DartId> out(seq.begin() + static_cast<std::ptrdiff_t>(r), seq.end());
      out.insert(out.end(), seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(r));
      return out;
    };
    for (std::size_t r = 1; r < seq.size(); ++r) {
      if (rotated(r) < rotated(naive)) naive = r;
    }
    CHECK(rotated(least_rotation(seq)) == rotated(naive));
  }
}

TEST_CASE("cyclic path canonicalization and reduction") {
  Graph g = test::rose(2);
  // a b rotated
  CyclicPath c1 = CyclicPath::canonical(g, {2, 0});
  CyclicPath c2 = CyclicPath::canonical(g, {0, 2});
  CHECK(c1 == c2);

  // backtracking rejected
  CHECK_THROWS_AS(CyclicPath::canonical(g, {0, 1}), std::invalid_argument);

  // seam cancellation: a b b' a reduces to a a
  auto r = CyclicPath::reduce(g, {0, 2, 3, 0});
  REQUIRE(r.has_value());
  CHECK(r->length() == 2);

  // complete cancellation
  CHECK(!CyclicPath::reduce(g, {0, 2, 3, 1}).has_value());
}

TEST_CASE("tighten reduces paths") {
  Graph g = test::rose(2);
  EdgePath p = make_path(g, {0, 2, 3, 1, 0});
  EdgePath t = tighten(g, p);
  CHECK(t.darts == std::vector<DartId>{0});
  CHECK(is_tight(t));

  EdgePath everything = tighten(g, make_path(g, {0, 1}));
  CHECK(everything.empty());
  CHECK(everything.basepoint == 0);
}
