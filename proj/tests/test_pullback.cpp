#include <doctest.h>

#include <random>
#include <set>

#include "core/decision.hpp"
#include "core/pullback.hpp"
#include "test_support.hpp"

using namespace mtor;

TEST_CASE("pullback of the doubling map at depth 1") {
  GraphMap g = test::fixture_map("bs12");
  PullbackGraph p = pullback(g, 1);
  CHECK(p.graph().vertex_count() == 4);
  CHECK(p.graph().edge_count() == 4);
  Classified cls = classify_components(p);
  REQUIRE(cls.components.size() == 2);
  int old_count = 0;
  for (std::size_t i = 0; i < cls.components.size(); ++i) {
    CHECK(cls.components[i].is_circle());
    if (cls.is_old[i]) ++old_count;
  }
  CHECK(old_count == 1);
}

TEST_CASE("pullback of sapir at depth 1 is a copy of the rose plus two loops") {
  GraphMap h = test::fixture_map("sapir");
  PullbackGraph p = pullback(h, 1);
  Classified cls = classify_components(p);
  int old_count = 0, loops = 0, isolated = 0;
  for (std::size_t i = 0; i < cls.components.size(); ++i) {
    if (cls.is_old[i]) {
      ++old_count;
      CHECK(cls.components[i].edge_count() == 4);  // the subdivided rose
    } else if (cls.components[i].is_circle()) {
      ++loops;
    } else if (cls.components[i].edge_count() == 0) {
      ++isolated;
    }
  }
  CHECK(old_count == 1);
  CHECK(loops == 2);
  CHECK(isolated == 2);
}

TEST_CASE("pullback of the identity is the diagonal alone") {
  GraphMap id = identity_map(test::rose(2));
  for (int depth : {1, 2}) {
    PullbackGraph p = pullback(id, depth);
    CHECK(p.graph().vertex_count() == 1);
    CHECK(p.graph().edge_count() == 2);
    Classified cls = classify_components(p);
    REQUIRE(cls.components.size() == 1);
    CHECK(cls.is_old[0]);
  }
}

TEST_CASE("doubling at depth 2 separates old and new offsets") {
  GraphMap g = test::fixture_map("bs12");
  PullbackGraph p2 = pullback(g, 2);
  PullbackGraph p1 = pullback(g, 1);
  Classified cls = classify_components(p2, p1);  // includes the chain check
  int old_count = 0, new_count = 0;
  for (bool old_flag : cls.is_old) (old_flag ? old_count : new_count)++;
  CHECK(old_count == 2);
  CHECK(new_count == 2);
}

TEST_CASE("classify_components rejects depth mismatches") {
  GraphMap g = test::fixture_map("bs12");
  PullbackGraph p3 = pullback(g, 3);
  PullbackGraph p1 = pullback(g, 1);
  CHECK_THROWS_AS(classify_components(p3, p1), std::invalid_argument);
}

TEST_CASE("new core counts double for the doubling map") {
  GraphMap g = test::fixture_map("bs12");
  int expect = 1;
  for (int depth = 1; depth <= 5; ++depth) {
    NewCore nc = new_core(g, depth);
    CHECK(nc.cores.size() == static_cast<std::size_t>(expect));
    expect *= 2;
  }
}

TEST_CASE("new core of sapir vanishes at depth 2") {
  GraphMap h = test::fixture_map("sapir");
  CHECK(new_core(h, 1).cores.size() == 2);
  CHECK(new_core(h, 2).cores.empty());
  CHECK(new_core(h, 3).cores.empty());
  GraphMap id = identity_map(test::rose(2));
  CHECK(new_core(id, 1).cores.empty());
  CHECK(new_core(id, 2).cores.empty());
}

TEST_CASE("loop pairs") {
  GraphMap g = test::fixture_map("bs12");
  auto pairs = loop_pairs(g, 1);
  REQUIRE(pairs.size() == 1);
  CyclicPath circle = CyclicPath::canonical(g.domain(), {0});
  CHECK(pairs[0].c_minus == circle);
  CHECK(pairs[0].c_plus == circle);

  GraphMap h = test::fixture_map("sapir");
  auto hpairs = loop_pairs(h, 1);
  REQUIRE(hpairs.size() == 2);
  CyclicPath a = CyclicPath::canonical(h.domain(), {0});
  CyclicPath b = CyclicPath::canonical(h.domain(), {2});
  std::set<std::pair<std::size_t, std::size_t>> got;
  for (const LoopPair& pair : hpairs) {
    bool left_a = pair.c_minus == a, left_b = pair.c_minus == b;
    bool right_a = pair.c_plus == a, right_b = pair.c_plus == b;
    CHECK((left_a || left_b));
    CHECK((right_a || right_b));
    CHECK(pair.c_minus.length() == 1);
    CHECK(pair.c_plus.length() == 1);
    got.insert({left_a ? 0u : 1u, right_a ? 0u : 1u});
  }
  // the two loops pair the two petals in both orders
  CHECK(got == std::set<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}});

  CHECK(loop_pairs(h, 2).empty());
}

TEST_CASE("loop pair projections share their forward image") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    Endomorphism e = test::random_rose_immersion(rng, 2, 3);
    GraphMap f = rose_map(e);
    for (int depth = 1; depth <= 2; ++depth) {
      NewCore nc = new_core(f, depth);
      bool circles = true;
      for (const Subgraph& core : nc.cores) circles = circles && core.is_circle();
      if (!circles) continue;
      GraphMap fi = iterate(f, depth);
      for (const LoopPair& pair : loop_pairs(nc)) {
        auto left = map_cyclic(fi, pair.c_minus);
        auto right = map_cyclic(fi, pair.c_plus);
        REQUIRE(left.has_value());
        REQUIRE(right.has_value());
        CHECK(*left == *right);
      }
    }
  }
}

TEST_CASE("swap symmetry and the diagonal") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    Endomorphism e = test::random_rose_immersion(rng, 2, 3);
    GraphMap f = rose_map(e);
    PullbackGraph p = pullback(f, 2);
    const Graph& sub = p.system().graph();

    std::set<std::pair<VertexId, VertexId>> vertex_pairs;
    for (VertexId v = 0; v < p.graph().vertex_count(); ++v) {
      vertex_pairs.insert(p.vertex_pair(v));
    }
    CHECK(vertex_pairs.size() == static_cast<std::size_t>(p.graph().vertex_count()));
    for (auto [x, y] : vertex_pairs) {
      CHECK(vertex_pairs.contains({y, x}));
    }
    // diagonal vertices and darts are all present
    for (VertexId x = 0; x < sub.vertex_count(); ++x) {
      CHECK(vertex_pairs.contains({x, x}));
    }
    std::set<std::pair<DartId, DartId>> dart_pairs;
    for (DartId d = 0; d < p.graph().dart_count(); ++d) {
      dart_pairs.insert(p.dart_pair(d));
    }
    for (auto [l, r] : dart_pairs) {
      CHECK(dart_pairs.contains({r, l}));
    }
    for (DartId d = 0; d < sub.dart_count(); ++d) {
      CHECK(dart_pairs.contains({d, d}));
    }
  }
}

TEST_CASE("chain and vanishing lemmas on random immersions") {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    int rank = 2 + (trial % 2);
    Endomorphism e = test::random_rose_immersion(rng, rank, 2);
    GraphMap f = rose_map(e);
    std::optional<PullbackGraph> previous;
    bool seen_empty = false;
    for (int depth = 1; depth <= 3; ++depth) {
      PullbackGraph p = pullback(f, depth);
      if (previous.has_value()) {
        CHECK_NOTHROW(check_chain(*previous, p));
      }
      Classified cls = classify_components(p);
      bool empty = true;
      for (std::size_t i = 0; i < cls.components.size(); ++i) {
        if (!cls.is_old[i] && !core_subgraph(cls.components[i]).empty()) empty = false;
      }
      if (seen_empty) CHECK(empty);  // once gone, gone for good
      seen_empty = seen_empty || empty;
      previous = std::move(p);
    }
  }
}

TEST_CASE("rank bound on the pullback") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    Endomorphism e = test::random_rose_immersion(rng, 2, 3);
    GraphMap f = rose_map(e);
    std::int64_t bound = 2 * (graph_rank(f.domain()) - 1) * (graph_rank(f.domain()) - 1);
    for (int depth = 1; depth <= 3; ++depth) {
      CHECK(neg_euler(pullback(f, depth).graph()) <= bound);
    }
  }
}

TEST_CASE("dart-count estimate matches the built product") {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 6; ++trial) {
    Endomorphism e = test::random_rose_immersion(rng, 2, 3);
    GraphMap f = rose_map(e);
    for (int depth = 1; depth <= 2; ++depth) {
      SubdividedSystem sys = subdivide_for(f, depth);
      CHECK(pullback_dart_count(sys) == pullback(f, depth).graph().dart_count());
      CHECK(subdivision_dart_count(f, depth, 1 << 30) == sys.graph().dart_count());
    }
  }
}

TEST_CASE("negative euler characteristic of the sapir pullback") {
  GraphMap h = test::fixture_map("sapir");
  // a copy of the rose plus two loops: the rose contributes rank-1 = 1
  CHECK(neg_euler(pullback(h, 1).graph()) == 1);
}

TEST_CASE("loop_pairs rejects non-circle cores") {
  GraphMap h = test::fixture_map("sapir");
  NewCore nc = new_core(h, 1);
  // doctor one core into a non-circle by swapping in the whole pullback graph
  nc.cores[0] = core_subgraph(nc.pullback.graph());
  CHECK(!nc.cores[0].is_circle());
  CHECK_THROWS_AS(loop_pairs(nc), std::invalid_argument);
}

TEST_CASE("minimal_root") {
  Graph rose = test::rose(2);
  CyclicPath ab3 = CyclicPath::canonical(rose, {0, 2, 0, 2, 0, 2});
  auto [root, exponent] = minimal_root(rose, ab3);
  CHECK(root == CyclicPath::canonical(rose, {0, 2}));
  CHECK(exponent == 3);

  CyclicPath prim = CyclicPath::canonical(rose, {0, 0, 2});
  auto [root2, exp2] = minimal_root(rose, prim);
  CHECK(root2 == prim);
  CHECK(exp2 == 1);

  Graph bigon = test::cycle_graph(2);
  CyclicPath twice = CyclicPath::canonical(bigon, {0, 2, 0, 2});
  auto [root3, exp3] = minimal_root(bigon, twice);
  CHECK(root3.length() == 2);
  CHECK(exp3 == 2);
}

TEST_CASE("subloop_count") {
  Graph loop = test::rose(1);
  CHECK(subloop_count(loop, CyclicPath::canonical(loop, {0})) == 1);

  Graph rose = test::rose(2);
  CyclicPath len4 = CyclicPath::canonical(rose, {0, 0, 2, 2});
  CHECK(subloop_count(rose, len4) == 16);  // every start and length closes up

  Graph pentagon = test::cycle_graph(5);
  CyclicPath around = loop_component_word(Subgraph::full(pentagon));
  CHECK(subloop_count(pentagon, around) == 5);  // only full wraps

  CHECK_THROWS_AS(subloop_count(rose, CyclicPath::canonical(rose, {0, 2, 0, 2})),
                  std::invalid_argument);
}
