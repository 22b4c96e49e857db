#include <doctest.h>

#include <random>

#include "core/subdivision.hpp"
#include "test_support.hpp"

using namespace mtor;

TEST_CASE("exact points canonicalize orientation") {
  ExactPoint a = ExactPoint::on_edge(0, Rational(1, 4));
  ExactPoint b = ExactPoint::on_edge(1, Rational(3, 4));  // same point from the other side
  CHECK(a == b);
  CHECK(ExactPoint::at_vertex(0).is_vertex());
  CHECK_THROWS_AS(ExactPoint::on_edge(0, Rational(0)), std::invalid_argument);
}

TEST_CASE("map_point on the doubling map") {
  GraphMap doubling = test::fixture_map("bs12");
  ExactPoint quarter = ExactPoint::on_edge(0, Rational(1, 4));
  ExactPoint half = map_point(doubling, quarter);
  CHECK(half == ExactPoint::on_edge(0, Rational(1, 2)));
  ExactPoint vertex = map_point(doubling, half);
  CHECK(vertex == ExactPoint::at_vertex(0));
  CHECK(map_point_iter(doubling, quarter, 2) == vertex);
}

TEST_CASE("subdivide_for the doubling map") {
  GraphMap doubling = test::fixture_map("bs12");
  SubdividedSystem s1 = subdivide_for(doubling, 1);
  CHECK(s1.graph().edge_count() == 2);
  CHECK(s1.graph().vertex_count() == 2);
  CHECK(s1.vertex_point(1) == ExactPoint::on_edge(0, Rational(1, 2)));

  SubdividedSystem s2 = subdivide_for(doubling, 2);
  CHECK(s2.graph().edge_count() == 4);
  CHECK(s2.graph().vertex_count() == 4);
}

TEST_CASE("subdivide_for the identity adds nothing") {
  GraphMap id = identity_map(test::rose(2));
  for (int depth : {1, 2, 3}) {
    SubdividedSystem s = subdivide_for(id, depth);
    CHECK(s.graph() == id.domain());
  }
}

TEST_CASE("subdivided data agrees with exact point evaluation") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    Endomorphism e = test::random_rose_immersion(rng, 2, 3);
    GraphMap f = rose_map(e);
    for (int depth : {1, 2, 3}) {
      SubdividedSystem sys = subdivide_for(f, depth);
      const Graph& sub = sys.graph();
      for (VertexId v = 0; v < sub.vertex_count(); ++v) {
        ExactPoint image = map_point_iter(f, sys.vertex_point(v), depth);
        REQUIRE(image.is_vertex());
        CHECK(image.vertex() == sys.vertex_image(v));
      }
      // interior subdivision vertices have valence 2 and sit inside their
      // container dart in ascending offset order
      for (VertexId v = sys.base_map().domain().vertex_count(); v < sub.vertex_count(); ++v) {
        CHECK(sub.valence(v) == 2);
        CHECK(!sys.vertex_point(v).is_vertex());
      }
      // containment and image data respect reversal
      for (DartId d = 0; d < sub.dart_count(); ++d) {
        CHECK(sys.dart_container(reverse_dart(d)) == reverse_dart(sys.dart_container(d)));
        CHECK(sys.dart_image(reverse_dart(d)) == reverse_dart(sys.dart_image(d)));
        CHECK(edge_of_dart(sys.dart_image(d)) >= 0);
      }
    }
  }
}

TEST_CASE("sapir depth-1 subdivision halves both petals") {
  GraphMap h = test::fixture_map("sapir");
  SubdividedSystem s = subdivide_for(h, 1);
  CHECK(s.graph().vertex_count() == 3);  // rose vertex + one midpoint per petal
  CHECK(s.graph().edge_count() == 4);
  // images under f of the four forward sub-darts spell a b then b a
  CHECK(s.dart_image(0) == 0);
  CHECK(s.dart_image(2) == 2);
  CHECK(s.dart_image(4) == 2);
  CHECK(s.dart_image(6) == 0);
}

TEST_CASE("collapse_cyclic rebuilds original loops") {
  GraphMap doubling = test::fixture_map("bs12");
  SubdividedSystem s = subdivide_for(doubling, 1);
  // the two sub-darts of the circle, traversed in order
  CyclicPath c = s.collapse_cyclic(std::vector<DartId>{0, 2});
  CHECK(c == CyclicPath::canonical(doubling.domain(), {0}));

  // a self-loop crossed twice collapses to two crossings, not one
  GraphMap sapir = test::fixture_map("sapir");
  SubdividedSystem ss = subdivide_for(sapir, 1);
  // petal a splits into sub-edges 0 (v,m_a) and 1 (m_a,v); full crossing twice
  CyclicPath cc = ss.collapse_cyclic(std::vector<DartId>{0, 2, 0, 2});
  CHECK(cc.length() == 2);
}
