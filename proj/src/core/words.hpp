#ifndef MTOR_CORE_WORDS_HPP
#define MTOR_CORE_WORDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/graph_map.hpp"

namespace mtor {

// Letters use dart-style codes: generator g is 2g, its inverse 2g+1, so
// inversion is the same xor-with-1 as dart reversal and words over the rank-n
// alphabet line up with darts of the n-petal rose.
using Letter = std::int32_t;

inline Letter inverse_letter(Letter x) { return x ^ 1; }
inline Letter generator_letter(int g) { return 2 * g; }
inline int generator_of(Letter x) { return x >> 1; }
inline bool is_positive_letter(Letter x) { return (x & 1) == 0; }

/** A freely reduced word in a free group. The empty word is the identity. */
struct Word {
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  std::size_t length() const { return letters.size(); }
  bool operator==(const Word&) const = default;
  bool operator<(const Word& other) const { return letters < other.letters; }
};

// Free reduction of an arbitrary letter sequence.
Word reduce(std::vector<Letter> letters);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);  // reduced concatenation
Word power(const Word& w, int d);

// Removes conjugation: strips matching first/last letters.
Word cyclic_reduce(Word w);

// Lexicographically least rotation of a cyclically reduced word.
Word least_cyclic_rotation(const Word& w);

/**
 * A free-group endomorphism given by generator images. Injectivity is not
 * assumed; images must be freely reduced and nonempty.
 */
struct Endomorphism {
  int rank = 0;
  std::vector<Word> images;  // images[g] = image of generator g

  bool operator==(const Endomorphism&) const = default;
};

Endomorphism identity_endomorphism(int rank);
void validate(const Endomorphism& e);

// k-fold substitution, freely reduced.
Word apply(const Endomorphism& e, Word w, int k);

// Equality of conjugacy classes: cyclic reductions agree up to rotation.
bool conjugate_eq(const Word& u, const Word& v);

// The rose with one petal per generator; petal g traverses the word
// images[g]. May or may not be an immersion; callers check.
GraphMap rose_map(const Endomorphism& e);

// Word spelled by a cyclic path on the rose (dart ids are letter codes).
Word word_of_rose_loop(const CyclicPath& c);
std::optional<CyclicPath> rose_loop_of_word(const Graph& rose, const Word& w);

struct OracleWitness {
  Word w;
  int k = 0;
  int d = 0;
};

// Brute-force search for a word with apply(e, w, k) conjugate to w^d.
// Enumerates cyclically reduced words by length then lexicographically, one
// representative per cyclic-and-inverse class, k ascending per word; the
// first hit wins. Independent of the graph machinery.
std::optional<OracleWitness> oracle_search(const Endomorphism& e, int max_len, int max_k,
                                           std::int64_t max_d);

// "a b' c" style rendering with letters a..z and ' for inverses.
std::string word_to_string(const Word& w);

}  // namespace mtor

#endif  // MTOR_CORE_WORDS_HPP
