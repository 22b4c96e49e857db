#ifndef MTOR_TESTS_TEST_SUPPORT_HPP
#define MTOR_TESTS_TEST_SUPPORT_HPP

#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "core/fixtures.hpp"
#include "core/words.hpp"

namespace mtor::test {

// --- small handmade graphs ---------------------------------------------------

// n-petal rose: one vertex, n self-loops.
inline Graph rose(int petals) {
  GraphBuilder b;
  VertexId v = b.add_vertex();
  for (int i = 0; i < petals; ++i) b.add_edge(v, v);
  return b.build();
}

// circle subdivided into n edges: vertices 0..n-1, edge i from i to (i+1)%n.
inline Graph cycle_graph(int n) {
  GraphBuilder b;
  for (int i = 0; i < n; ++i) b.add_vertex();
  for (int i = 0; i < n; ++i) b.add_edge(i, (i + 1) % n);
  return b.build();
}

// path on n vertices (a tree).
inline Graph path_graph(int n) {
  GraphBuilder b;
  for (int i = 0; i < n; ++i) b.add_vertex();
  for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
  return b.build();
}

// two vertices joined by three parallel edges.
inline Graph theta_graph() {
  GraphBuilder b;
  VertexId u = b.add_vertex();
  VertexId v = b.add_vertex();
  b.add_edge(u, v);
  b.add_edge(u, v);
  b.add_edge(u, v);
  return b.build();
}

inline GraphMap fixture_map(const std::string& name) {
  auto doc = builtin_fixture(name);
  if (!doc.has_value()) throw std::runtime_error("unknown fixture: " + name);
  return doc->realize_map();
}

// --- seeded random rose immersions -------------------------------------------

// Random reduced word of the exact given length.
inline Word random_reduced_word(std::mt19937& rng, int rank, int len) {
  std::uniform_int_distribution<int> pick(0, 2 * rank - 1);
  std::vector<Letter> letters;
  while (static_cast<int>(letters.size()) < len) {
    Letter x = pick(rng);
    if (!letters.empty() && letters.back() == inverse_letter(x)) continue;
    letters.push_back(x);
  }
  return Word{letters};
}

// Rejection-samples an endomorphism whose rose map is an immersion.
inline Endomorphism random_rose_immersion(std::mt19937& rng, int rank, int max_image_len) {
  std::uniform_int_distribution<int> len_pick(1, max_image_len);
  for (;;) {
    Endomorphism e;
    e.rank = rank;
    for (int g = 0; g < rank; ++g) {
      e.images.push_back(random_reduced_word(rng, rank, len_pick(rng)));
    }
    GraphMap f = rose_map(e);
    if (check_immersion(f).ok()) return e;
  }
}

}  // namespace mtor::test

#endif  // MTOR_TESTS_TEST_SUPPORT_HPP
