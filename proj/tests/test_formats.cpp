#include <doctest.h>

#include <cctype>

#include "core/dot.hpp"
#include "core/textio.hpp"
#include "test_support.hpp"

using namespace mtor;

namespace {

// Minimal Graphviz grammar checker for the subset the library emits:
//   graph ID { stmt* } with node, edge and graph-attribute statements.
class DotChecker {
 public:
  explicit DotChecker(const std::string& text) : text_(text) {}

  bool valid() {
    skip_space();
    if (!word("graph")) return false;
    if (!identifier()) return false;
    if (!token('{')) return false;
    while (!peek('}')) {
      if (!statement()) return false;
    }
    return token('}') && (skip_space(), pos_ == text_.size());
  }

 private:
  bool statement() {
    if (word("graph")) {
      return attr_block() && token(';');
    }
    if (!identifier()) return false;
    if (peek('-')) {
      if (!token('-') || !token('-')) return false;
      if (!identifier()) return false;
      if (peek('[') && !attr_block()) return false;
      return token(';');
    }
    if (peek('[') && !attr_block()) return false;
    return token(';');
  }

  bool attr_block() {
    if (!token('[')) return false;
    for (;;) {
      if (!identifier()) return false;
      if (!token('=')) return false;
      if (!value()) return false;
      if (peek(',')) {
        token(',');
        continue;
      }
      break;
    }
    return token(']');
  }

  bool value() {
    skip_space();
    if (peek('"')) return quoted();
    return identifier();
  }

  bool quoted() {
    if (!token('"')) return false;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      ++pos_;
    }
    return pos_ < text_.size() && text_[pos_++] == '"';
  }

  bool identifier() {
    skip_space();
    if (peek('"')) return quoted();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
            text_[pos_] == '.')) {
      ++pos_;
    }
    return pos_ > start;
  }

  bool word(const std::string& w) {
    skip_space();
    if (text_.compare(pos_, w.size(), w) == 0) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  bool token(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

TEST_CASE("text round trip on every builtin fixture") {
  for (const char* name : {"bs12", "sapir", "identity", "deg1", "phi2", "phi3", "phi4", "psi:3"}) {
    auto doc = builtin_fixture(name);
    REQUIRE(doc.has_value());
    std::string text = render_input(*doc);
    InputDocument back = parse_input(text);
    CHECK(render_input(back) == text);
    CHECK(back.realize_map() == doc->realize_map());
  }
}

TEST_CASE("json mirror round trip") {
  for (const char* name : {"bs12", "sapir", "phi4"}) {
    auto doc = builtin_fixture(name);
    REQUIRE(doc.has_value());
    Json j = input_to_json(*doc);
    CHECK(j.at("schema") == 1);
    InputDocument back = input_from_json(j);
    CHECK(back.name == doc->name);
    CHECK(back.realize_map() == doc->realize_map());
    // dispatch through the generic entry point too
    InputDocument again = parse_input(j.dump());
    CHECK(again.realize_map() == doc->realize_map());
  }
}

TEST_CASE("graph map text format") {
  std::string text =
      "# a circle mapping over itself twice\n"
      "vertex v0\n"
      "edge e0: v0 -> v0\n"
      "map: v0 -> v0; e0 -> e0 e0\n";
  InputDocument doc = parse_input(text);
  GraphMap f = doc.realize_map();
  CHECK(f.domain().edge_count() == 1);
  CHECK(f.dart_image(0).size() == 2);
  CHECK(f == test::fixture_map("bs12"));
}

TEST_CASE("reversed darts in images") {
  std::string text =
      "vertex v0\n"
      "vertex v1\n"
      "edge e0: v0 -> v1\n"
      "edge e1: v1 -> v1\n"
      "edge e2: v0 -> v0\n"
      "map: v0 -> v0; v1 -> v1; e0 -> e0; e1 -> e1 e0' e2 e0 e1; e2 -> e2 e2\n";
  InputDocument doc = parse_input(text);
  GraphMap f = doc.realize_map();
  CHECK(check_immersion(f).ok());
  CHECK(f.dart_image(2).size() == 5);
  CHECK(f.dart_image(2)[1] == 1);  // e0'
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_input("vertex v0\nedge e0: v0 -> v9\n");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.line() == 2);
    CHECK(err.column() == 16);
  }

  try {
    parse_input("rank=2; a -> a b; b -> q;\n");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.line() == 1);
    CHECK(err.column() == 24);
  }

  CHECK_THROWS_AS(parse_input("rank=2; a -> a b;\n"), ParseError);  // missing image
  CHECK_THROWS_AS(parse_input("vertex v0\nedge e0: v0 -> v0\nmap: v0 -> v0\n"), ParseError);
  CHECK_THROWS_AS(parse_input(""), ParseError);
  CHECK_THROWS_AS(parse_input("{not json"), ParseError);
  CHECK_THROWS_AS(parse_input("rank=2; a -> a a'; b -> b;"), ParseError); // unreduced image
}

TEST_CASE("verdict json shapes stay put") {
  auto doc = builtin_fixture("bs12");
  GraphMap f = doc->realize_map();
  Verdict v = decide(f);
  Json j = verdict_to_json(*doc, v);
  CHECK(j.at("schema") == 1);
  CHECK(j.at("verdict") == "not_hyperbolic");
  CHECK(j.at("certificate").at("type") == "invariant_loop");
  CHECK(j.at("certificate").at("loop") == "e0");
  CHECK(j.at("certificate").at("k") == 1);
  CHECK(j.at("certificate").at("d") == 2);
  CHECK(j.at("certificate").at("loop_darts") == Json::array({0}));

  auto sdoc = builtin_fixture("sapir");
  GraphMap h = sdoc->realize_map();
  Verdict hv = decide(h);
  Json hj = verdict_to_json(*sdoc, hv);
  CHECK(hj.at("verdict") == "hyperbolic");
  const Json& cert = hj.at("certificate");
  CHECK(cert.at("lambda") == 2);
  CHECK(cert.at("n") == 1);
  CHECK(cert.at("stabilization_depth") == 2);
  CHECK(cert.at("expansion").at("n_prime") == 1);
  CHECK(cert.at("expansion").at("forest_k") == 1);
  CHECK(cert.at("expansion").at("forest_edges") == Json::array());
  CHECK(cert.at("flare").at("k") == 2);
  CHECK(cert.at("flare").at("r") == 5);
  CHECK(cert.at("flare").at("m") == 18);
  CHECK(cert.at("flare").at("h_coefficient") == "72057594036879360");
}

TEST_CASE("verdict json round trips through the independent checker") {
  for (const char* name : {"bs12", "sapir", "psi:4"}) {
    auto doc = builtin_fixture(name);
    GraphMap f = doc->realize_map();
    Verdict v = decide(f);
    Json j = verdict_to_json(*doc, v);
    Verdict back = verdict_from_json(f, j);
    CHECK(verify(f, back));

    // corrupt one field and the checker must say no
    if (v.kind == Verdict::Kind::not_hyperbolic) {
      Json bad = j;
      bad["certificate"]["d"] = bad["certificate"]["d"].get<int>() + 1;
      CHECK(!verify(f, verdict_from_json(f, bad)));
    } else {
      Json bad = j;
      bad["certificate"]["flare"]["m"] = 99;
      CHECK(!verify(f, verdict_from_json(f, bad)));
    }
  }
}

TEST_CASE("budgets json") {
  DecideBudgets defaults = budgets_from_json(Json(nullptr));
  CHECK(defaults.max_depth == 6);
  DecideBudgets custom = budgets_from_json(Json::parse(R"({"max_depth":3,"d_cap":17})"));
  CHECK(custom.max_depth == 3);
  CHECK(custom.d_cap == 17);
  CHECK_THROWS_AS(budgets_from_json(Json::parse("[1,2]")), std::invalid_argument);
}

TEST_CASE("reports carry the schema tag") {
  auto doc = builtin_fixture("sapir");
  CHECK(check_report(*doc).at("schema") == 1);
  PullbackReportOptions options;
  options.max_depth = 2;
  Json pr = pullback_report(*doc, options);
  CHECK(pr.at("schema") == 1);
  REQUIRE(pr.at("depths").size() == 2);
  CHECK(pr.at("depths")[0].at("new_core_components") == 2);
  CHECK(pr.at("depths")[1].at("new_core_components") == 0);
  CHECK(pr.at("depths")[1].at("chain_ok") == true);
  CHECK(oracle_report(*doc, 4, 2, 8).at("schema") == 1);
}

TEST_CASE("emitted dot is grammatical") {
  for (const char* name : {"bs12", "sapir"}) {
    auto doc = builtin_fixture(name);
    GraphMap f = doc->realize_map();
    for (int depth : {1, 2}) {
      PullbackGraph p = pullback(f, depth);
      Classified cls = classify_components(p);
      std::string dot = pullback_dot(*doc, p, cls);
      DotChecker checker(dot);
      CHECK(checker.valid());
    }
  }
  CHECK(!DotChecker("graph oops { n0 -- ; }").valid());
}
