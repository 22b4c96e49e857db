#include "core/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace mtor {

Word reduce(std::vector<Letter> letters) {
  std::vector<Letter> stack;
  stack.reserve(letters.size());
  for (Letter x : letters) {
    if (!stack.empty() && stack.back() == inverse_letter(x)) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  }
  return Word{std::move(stack)};
}

Word inverse(const Word& w) {
  Word out;
  out.letters.reserve(w.length());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    out.letters.push_back(inverse_letter(*it));
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  std::vector<Letter> all = a.letters;
  all.insert(all.end(), b.letters.begin(), b.letters.end());
  return reduce(std::move(all));
}

Word power(const Word& w, int d) {
  if (d < 0) throw std::invalid_argument("power: negative exponent");
  Word out;
  for (int i = 0; i < d; ++i) out = concat(out, w);
  return out;
}

Word cyclic_reduce(Word w) {
  std::size_t lo = 0, hi = w.letters.size();
  while (hi - lo >= 2 && w.letters[lo] == inverse_letter(w.letters[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word{std::vector<Letter>(w.letters.begin() + static_cast<std::ptrdiff_t>(lo),
                                  w.letters.begin() + static_cast<std::ptrdiff_t>(hi))};
}

Word least_cyclic_rotation(const Word& w) {
  if (w.length() <= 1) return w;
  std::size_t r = least_rotation(std::span<const Letter>(w.letters));
  Word out = w;
  std::rotate(out.letters.begin(), out.letters.begin() + static_cast<std::ptrdiff_t>(r),
              out.letters.end());
  return out;
}

Endomorphism identity_endomorphism(int rank) {
  Endomorphism e;
  e.rank = rank;
  for (int g = 0; g < rank; ++g) {
    e.images.push_back(Word{{generator_letter(g)}});
  }
  return e;
}

void validate(const Endomorphism& e) {
  if (e.rank < 1) throw std::invalid_argument("Endomorphism: rank must be positive");
  if (e.images.size() != static_cast<std::size_t>(e.rank)) {
    throw std::invalid_argument("Endomorphism: one image per generator required");
  }
  for (const Word& w : e.images) {
    if (w.empty()) throw std::invalid_argument("Endomorphism: images must be nonempty");
    for (Letter x : w.letters) {
      if (x < 0 || generator_of(x) >= e.rank) {
        throw std::invalid_argument("Endomorphism: image letter out of range");
      }
    }
    if (!(reduce(w.letters) == w)) {
      throw std::invalid_argument("Endomorphism: images must be freely reduced");
    }
  }
}

Word apply(const Endomorphism& e, Word w, int k) {
  for (int round = 0; round < k; ++round) {
    std::vector<Letter> out;
    for (Letter x : w.letters) {
      const Word& image = e.images[static_cast<std::size_t>(generator_of(x))];
      if (is_positive_letter(x)) {
        out.insert(out.end(), image.letters.begin(), image.letters.end());
      } else {
        for (auto it = image.letters.rbegin(); it != image.letters.rend(); ++it) {
          out.push_back(inverse_letter(*it));
        }
      }
    }
    w = reduce(std::move(out));
  }
  return w;
}

bool conjugate_eq(const Word& u, const Word& v) {
  Word cu = cyclic_reduce(u);
  Word cv = cyclic_reduce(v);
  if (cu.length() != cv.length()) return false;
  return least_cyclic_rotation(cu) == least_cyclic_rotation(cv);
}

GraphMap rose_map(const Endomorphism& e) {
  validate(e);
  GraphBuilder builder;
  VertexId v = builder.add_vertex();
  for (int g = 0; g < e.rank; ++g) builder.add_edge(v, v);
  Graph rose = builder.build();
  std::vector<std::vector<DartId>> forward;
  for (int g = 0; g < e.rank; ++g) {
    // letter codes are dart ids on the rose
    forward.emplace_back(e.images[static_cast<std::size_t>(g)].letters.begin(),
                         e.images[static_cast<std::size_t>(g)].letters.end());
  }
  return GraphMap::from_forward_images(rose, rose, {v}, forward);
}

Word word_of_rose_loop(const CyclicPath& c) {
  Word w;
  w.letters.assign(c.darts().begin(), c.darts().end());
  return w;
}

std::optional<CyclicPath> rose_loop_of_word(const Graph& rose, const Word& w) {
  Word c = cyclic_reduce(w);
  if (c.empty()) return std::nullopt;
  return CyclicPath::canonical(rose, std::vector<DartId>(c.letters.begin(), c.letters.end()));
}

namespace {

// Enumerates cyclically reduced words of a fixed length in lexicographic
// order, invoking fn on each representative of a cyclic+inverse class.
template <typename Fn>
bool enumerate_representatives(int rank, int len, Fn&& fn) {
  std::vector<Letter> word(static_cast<std::size_t>(len));
  const Letter max_letter = static_cast<Letter>(2 * rank - 1);

  auto is_representative = [&]() {
    Word w{word};
    Word least = least_cyclic_rotation(w);
    if (least < w) return false;
    Word inv = least_cyclic_rotation(inverse(w));
    return !(inv < w);
  };

  // depth-first fill, letters ascending
  std::vector<Letter> choice(static_cast<std::size_t>(len), -1);
  int pos = 0;
  while (pos >= 0) {
    Letter next = ++choice[static_cast<std::size_t>(pos)];
    if (next > max_letter) {
      choice[static_cast<std::size_t>(pos)] = -1;
      --pos;
      continue;
    }
    word[static_cast<std::size_t>(pos)] = next;
    if (pos > 0 && word[static_cast<std::size_t>(pos - 1)] == inverse_letter(next)) continue;
    if (pos == len - 1 && word.back() == inverse_letter(word.front())) continue;
    if (pos == len - 1) {
      if (is_representative() && fn(Word{word})) return true;
    } else {
      ++pos;
    }
  }
  return false;
}

}  // namespace

std::optional<OracleWitness> oracle_search(const Endomorphism& e, int max_len, int max_k,
                                           std::int64_t max_d) {
  validate(e);
  std::optional<OracleWitness> found;
  for (int len = 1; len <= max_len && !found; ++len) {
    enumerate_representatives(e.rank, len, [&](const Word& w) {
      Word u = w;
      for (int k = 1; k <= max_k; ++k) {
        u = apply(e, std::move(u), 1);
        Word cu = cyclic_reduce(u);
        if (cu.empty()) continue;
        if (cu.length() % w.length() != 0) continue;
        auto d = static_cast<std::int64_t>(cu.length() / w.length());
        if (d > max_d) continue;
        if (conjugate_eq(cu, power(w, static_cast<int>(d)))) {
          found = OracleWitness{w, k, static_cast<int>(d)};
          return true;
        }
      }
      return false;
    });
  }
  return found;
}

std::string word_to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i > 0) out += ' ';
    out += static_cast<char>('a' + generator_of(w.letters[i]));
    if (!is_positive_letter(w.letters[i])) out += '\'';
  }
  return out;
}

}  // namespace mtor
