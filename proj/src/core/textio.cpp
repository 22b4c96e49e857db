#include "core/textio.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "core/dot.hpp"

namespace mtor {

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

// Splits into identifiers, punctuation (-> ; : =) and primes attached to
// identifiers. '#' starts a comment running to end of line.
std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') {
        advance(text[i]);
        ++i;
      }
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(c);
      ++i;
      continue;
    }
    int tline = line, tcol = col;
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({"->", tline, tcol});
      advance('-');
      advance('>');
      i += 2;
      continue;
    }
    if (c == ';' || c == ':' || c == '=') {
      out.push_back({std::string(1, c), tline, tcol});
      advance(c);
      ++i;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        word += text[i];
        advance(text[i]);
        ++i;
      }
      if (i < text.size() && text[i] == '\'') {
        word += '\'';
        advance('\'');
        ++i;
      }
      out.push_back({std::move(word), tline, tcol});
      continue;
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek() const {
    if (done()) throw ParseError(last_line(), last_col(), "unexpected end of input");
    return tokens_[pos_];
  }
  Token next() {
    const Token& t = peek();
    ++pos_;
    return t;
  }
  void expect(const std::string& text) {
    const Token& t = peek();
    if (t.text != text) {
      throw ParseError(t.line, t.column, "expected '" + text + "', found '" + t.text + "'");
    }
    ++pos_;
  }
  bool accept(const std::string& text) {
    if (!done() && tokens_[pos_].text == text) {
      ++pos_;
      return true;
    }
    return false;
  }
  int last_line() const { return tokens_.empty() ? 1 : tokens_.back().line; }
  int last_col() const {
    return tokens_.empty() ? 1 : tokens_.back().column + static_cast<int>(tokens_.back().text.size());
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

int parse_number(const Token& t) {
  if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    throw ParseError(t.line, t.column, "expected a number, found '" + t.text + "'");
  }
  try {
    return std::stoi(t.text);
  } catch (const std::exception&) {
    throw ParseError(t.line, t.column, "number out of range");
  }
}

InputDocument parse_endomorphism(TokenStream& stream) {
  stream.expect("rank");
  stream.expect("=");
  Token rank_token = stream.next();
  int rank = parse_number(rank_token);
  if (rank < 1 || rank > 26) {
    throw ParseError(rank_token.line, rank_token.column, "rank must be between 1 and 26");
  }
  stream.expect(";");

  auto letter_of = [&](const Token& t) -> Letter {
    bool inv = t.text.ends_with("'");
    std::string base = inv ? t.text.substr(0, t.text.size() - 1) : t.text;
    if (base.size() != 1 || base[0] < 'a' || base[0] >= 'a' + rank) {
      throw ParseError(t.line, t.column, "unknown generator '" + t.text + "'");
    }
    Letter x = generator_letter(base[0] - 'a');
    return inv ? inverse_letter(x) : x;
  };

  std::vector<std::optional<Word>> images(static_cast<std::size_t>(rank));
  while (!stream.done()) {
    Token gen = stream.next();
    if (gen.text.size() != 1 || gen.text[0] < 'a' || gen.text[0] >= 'a' + rank) {
      throw ParseError(gen.line, gen.column, "unknown generator '" + gen.text + "'");
    }
    auto slot = static_cast<std::size_t>(gen.text[0] - 'a');
    if (images[slot].has_value()) {
      throw ParseError(gen.line, gen.column, "generator '" + gen.text + "' assigned twice");
    }
    stream.expect("->");
    Word image;
    while (!stream.done() && stream.peek().text != ";") {
      image.letters.push_back(letter_of(stream.next()));
    }
    if (image.empty()) {
      throw ParseError(gen.line, gen.column, "image of '" + gen.text + "' is empty");
    }
    if (!(reduce(image.letters) == image)) {
      throw ParseError(gen.line, gen.column, "image of '" + gen.text + "' is not freely reduced");
    }
    images[slot] = std::move(image);
    if (!stream.done()) stream.expect(";");
  }
  Endomorphism endo;
  endo.rank = rank;
  for (int g = 0; g < rank; ++g) {
    if (!images[static_cast<std::size_t>(g)].has_value()) {
      throw ParseError(stream.last_line(), stream.last_col(),
                       std::string("generator '") + static_cast<char>('a' + g) + "' has no image");
    }
    endo.images.push_back(std::move(*images[static_cast<std::size_t>(g)]));
  }
  validate(endo);
  InputDocument doc;
  doc.payload = EndoInput{std::move(endo)};
  return doc;
}

InputDocument parse_graph_map(TokenStream& stream) {
  std::vector<std::string> vertex_names;
  std::vector<std::string> edge_names;
  std::map<std::string, VertexId> vertex_ids;
  std::map<std::string, EdgeId> edge_ids;
  struct EdgeDecl {
    VertexId from, to;
  };
  std::vector<EdgeDecl> edges;
  struct Assignment {
    Token token;
    std::vector<Token> images;
  };
  std::vector<std::pair<Token, Token>> vertex_assignments;
  std::vector<Assignment> edge_assignments;

  auto is_ident = [](const std::string& s) {
    return !s.empty() && !s.ends_with("'") &&
           !std::isdigit(static_cast<unsigned char>(s[0]));
  };

  while (!stream.done()) {
    Token head = stream.next();
    if (head.text == "vertex") {
      Token name = stream.next();
      if (!is_ident(name.text)) {
        throw ParseError(name.line, name.column, "bad vertex name '" + name.text + "'");
      }
      if (vertex_ids.contains(name.text)) {
        throw ParseError(name.line, name.column, "vertex '" + name.text + "' declared twice");
      }
      vertex_ids[name.text] = static_cast<VertexId>(vertex_names.size());
      vertex_names.push_back(name.text);
    } else if (head.text == "edge") {
      Token name = stream.next();
      if (!is_ident(name.text)) {
        throw ParseError(name.line, name.column, "bad edge name '" + name.text + "'");
      }
      if (edge_ids.contains(name.text)) {
        throw ParseError(name.line, name.column, "edge '" + name.text + "' declared twice");
      }
      stream.expect(":");
      Token from = stream.next();
      stream.expect("->");
      Token to = stream.next();
      auto fit = vertex_ids.find(from.text);
      if (fit == vertex_ids.end()) {
        throw ParseError(from.line, from.column, "unknown vertex '" + from.text + "'");
      }
      auto tit = vertex_ids.find(to.text);
      if (tit == vertex_ids.end()) {
        throw ParseError(to.line, to.column, "unknown vertex '" + to.text + "'");
      }
      edge_ids[name.text] = static_cast<EdgeId>(edge_names.size());
      edge_names.push_back(name.text);
      edges.push_back({fit->second, tit->second});
    } else if (head.text == "map") {
      stream.expect(":");
      while (true) {
        Token lhs = stream.next();
        stream.expect("->");
        if (vertex_ids.contains(lhs.text)) {
          Token rhs = stream.next();
          if (!vertex_ids.contains(rhs.text)) {
            throw ParseError(rhs.line, rhs.column, "unknown vertex '" + rhs.text + "'");
          }
          vertex_assignments.emplace_back(lhs, rhs);
        } else if (edge_ids.contains(lhs.text)) {
          Assignment assign{lhs, {}};
          while (!stream.done() && stream.peek().text != ";") {
            assign.images.push_back(stream.next());
          }
          if (assign.images.empty()) {
            throw ParseError(lhs.line, lhs.column, "image of edge '" + lhs.text + "' is empty");
          }
          edge_assignments.push_back(std::move(assign));
        } else {
          throw ParseError(lhs.line, lhs.column, "unknown vertex or edge '" + lhs.text + "'");
        }
        if (stream.done()) break;
        stream.expect(";");
        if (stream.done()) break;
        const std::string& ahead = stream.peek().text;
        if (ahead == "vertex" || ahead == "edge" || ahead == "map") break;
      }
    } else {
      throw ParseError(head.line, head.column,
                       "expected 'vertex', 'edge' or 'map', found '" + head.text + "'");
    }
  }

  GraphBuilder builder;
  for (std::size_t i = 0; i < vertex_names.size(); ++i) builder.add_vertex();
  for (const EdgeDecl& e : edges) builder.add_edge(e.from, e.to);
  Graph graph = builder.build();

  std::vector<VertexId> vmap(vertex_names.size(), -1);
  for (auto& [lhs, rhs] : vertex_assignments) {
    VertexId v = vertex_ids.at(lhs.text);
    if (vmap[static_cast<std::size_t>(v)] >= 0) {
      throw ParseError(lhs.line, lhs.column, "vertex '" + lhs.text + "' mapped twice");
    }
    vmap[static_cast<std::size_t>(v)] = vertex_ids.at(rhs.text);
  }
  for (std::size_t v = 0; v < vertex_names.size(); ++v) {
    if (vmap[v] < 0) {
      throw ParseError(stream.last_line(), stream.last_col(),
                       "vertex '" + vertex_names[v] + "' has no image");
    }
  }

  std::vector<std::vector<DartId>> forward(edge_names.size());
  std::vector<bool> assigned(edge_names.size(), false);
  for (const Assignment& assign : edge_assignments) {
    EdgeId e = edge_ids.at(assign.token.text);
    if (assigned[static_cast<std::size_t>(e)]) {
      throw ParseError(assign.token.line, assign.token.column,
                       "edge '" + assign.token.text + "' mapped twice");
    }
    assigned[static_cast<std::size_t>(e)] = true;
    for (const Token& t : assign.images) {
      bool inv = t.text.ends_with("'");
      std::string base = inv ? t.text.substr(0, t.text.size() - 1) : t.text;
      auto it = edge_ids.find(base);
      if (it == edge_ids.end()) {
        throw ParseError(t.line, t.column, "unknown edge '" + t.text + "'");
      }
      DartId d = forward_dart(it->second);
      forward[static_cast<std::size_t>(e)].push_back(inv ? reverse_dart(d) : d);
    }
  }
  for (std::size_t e = 0; e < edge_names.size(); ++e) {
    if (!assigned[e]) {
      throw ParseError(stream.last_line(), stream.last_col(),
                       "edge '" + edge_names[e] + "' has no image");
    }
  }

  InputDocument doc;
  try {
    GraphMap map = GraphMap::from_forward_images(graph, graph, std::move(vmap), forward);
    doc.payload = GraphMapInput{std::move(vertex_names), std::move(edge_names), std::move(map)};
  } catch (const std::invalid_argument& err) {
    throw ParseError(stream.last_line(), stream.last_col(), err.what());
  }
  return doc;
}

}  // namespace

InputDocument parse_input(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError(1, 1, "malformed JSON document");
    return input_from_json(j);
  }
  TokenStream stream(tokenize(text));
  if (stream.done()) throw ParseError(1, 1, "empty input");
  if (stream.peek().text == "rank") return parse_endomorphism(stream);
  return parse_graph_map(stream);
}

namespace {

std::string render_word(const Word& w) { return word_to_string(w); }

}  // namespace

std::string render_input(const InputDocument& doc) {
  std::ostringstream out;
  if (const auto* endo = std::get_if<EndoInput>(&doc.payload)) {
    out << "rank=" << endo->endo.rank << ";";
    for (int g = 0; g < endo->endo.rank; ++g) {
      out << " " << static_cast<char>('a' + g) << " -> "
          << render_word(endo->endo.images[static_cast<std::size_t>(g)]) << ";";
    }
    out << "\n";
    return out.str();
  }
  const auto& gm = std::get<GraphMapInput>(doc.payload);
  const Graph& g = gm.map.domain();
  for (const std::string& name : gm.vertex_names) out << "vertex " << name << "\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [from, to] = g.endpoints(e);
    out << "edge " << gm.edge_names[static_cast<std::size_t>(e)] << ": "
        << gm.vertex_names[static_cast<std::size_t>(from)] << " -> "
        << gm.vertex_names[static_cast<std::size_t>(to)] << "\n";
  }
  out << "map:";
  bool first = true;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out << (first ? " " : "; ") << gm.vertex_names[static_cast<std::size_t>(v)] << " -> "
        << gm.vertex_names[static_cast<std::size_t>(gm.map.vertex_image(v))];
    first = false;
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out << "; " << gm.edge_names[static_cast<std::size_t>(e)] << " ->";
    for (DartId d : gm.map.dart_image(forward_dart(e))) {
      out << " " << doc.dart_name(d);
    }
  }
  out << "\n";
  return out.str();
}

Json input_to_json(const InputDocument& doc) {
  Json j;
  j["schema"] = 1;
  if (!doc.name.empty()) j["name"] = doc.name;
  if (const auto* endo = std::get_if<EndoInput>(&doc.payload)) {
    j["kind"] = "endomorphism";
    j["rank"] = endo->endo.rank;
    Json images = Json::object();
    for (int g = 0; g < endo->endo.rank; ++g) {
      images[std::string(1, static_cast<char>('a' + g))] =
          render_word(endo->endo.images[static_cast<std::size_t>(g)]);
    }
    j["images"] = images;
    return j;
  }
  const auto& gm = std::get<GraphMapInput>(doc.payload);
  const Graph& g = gm.map.domain();
  j["kind"] = "graph_map";
  j["vertices"] = gm.vertex_names;
  Json edges = Json::array();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [from, to] = g.endpoints(e);
    edges.push_back({{"name", gm.edge_names[static_cast<std::size_t>(e)]},
                     {"from", gm.vertex_names[static_cast<std::size_t>(from)]},
                     {"to", gm.vertex_names[static_cast<std::size_t>(to)]}});
  }
  j["edges"] = edges;
  Json vmap = Json::object();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    vmap[gm.vertex_names[static_cast<std::size_t>(v)]] =
        gm.vertex_names[static_cast<std::size_t>(gm.map.vertex_image(v))];
  }
  Json emap = Json::object();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    emap[gm.edge_names[static_cast<std::size_t>(e)]] =
        doc.path_name(gm.map.dart_image(forward_dart(e)));
  }
  j["map"] = {{"vertices", vmap}, {"edges", emap}};
  return j;
}

InputDocument input_from_json(const Json& j) {
  // reuse the text parsers by re-rendering; keeps one source of validation
  if (!j.is_object() || !j.contains("kind")) {
    throw ParseError(1, 1, "JSON input needs a \"kind\" field");
  }
  std::ostringstream text;
  std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "endomorphism") {
      int rank = j.at("rank").get<int>();
      text << "rank=" << rank << ";";
      const Json& images = j.at("images");
      for (int g = 0; g < rank; ++g) {
        std::string gen(1, static_cast<char>('a' + g));
        text << " " << gen << " -> " << images.at(gen).get<std::string>() << ";";
      }
    } else if (kind == "graph_map") {
      for (const auto& v : j.at("vertices")) {
        text << "vertex " << v.get<std::string>() << "\n";
      }
      for (const auto& e : j.at("edges")) {
        text << "edge " << e.at("name").get<std::string>() << ": "
             << e.at("from").get<std::string>() << " -> " << e.at("to").get<std::string>() << "\n";
      }
      const Json& m = j.at("map");
      text << "map:";
      bool first = true;
      for (const auto& [key, value] : m.at("vertices").items()) {
        text << (first ? " " : "; ") << key << " -> " << value.get<std::string>();
        first = false;
      }
      for (const auto& [key, value] : m.at("edges").items()) {
        text << "; " << key << " -> " << value.get<std::string>();
      }
    } else {
      throw ParseError(1, 1, "unknown input kind '" + kind + "'");
    }
  } catch (const Json::exception& err) {
    throw ParseError(1, 1, std::string("malformed JSON input: ") + err.what());
  }
  InputDocument doc = parse_input(text.str());
  if (j.contains("name")) doc.name = j.at("name").get<std::string>();
  return doc;
}

// --- reports -----------------------------------------------------------------

Json check_report(const InputDocument& doc) {
  GraphMap f = doc.realize_map();
  ImmersionCheck check = check_immersion(f);
  Json j;
  j["schema"] = 1;
  if (!doc.name.empty()) j["input"] = doc.name;
  j["kind"] = doc.is_endomorphism() ? "endomorphism" : "graph_map";
  j["immersion"] = check.ok();
  if (check.ok()) {
    j["summary"] = "immersion: yes";
  } else {
    const ImmersionViolation& v = *check.violation;
    j["violation"] = {{"vertex", doc.vertex_name(v.vertex)},
                      {"dart1", doc.dart_name(v.dart1)},
                      {"dart2", doc.dart_name(v.dart2)},
                      {"dart1_id", v.dart1},
                      {"dart2_id", v.dart2},
                      {"vertex_id", v.vertex}};
    j["summary"] = "immersion: no; darts " + doc.dart_name(v.dart1) + ", " +
                   doc.dart_name(v.dart2) + " collide at " + doc.vertex_name(v.vertex);
  }
  return j;
}

Json pullback_report(const InputDocument& doc, const PullbackReportOptions& options) {
  GraphMap f = doc.realize_map();
  ImmersionCheck check = check_immersion(f);
  if (!check.ok()) {
    const ImmersionViolation& v = *check.violation;
    throw std::invalid_argument("input is not an immersion: darts " + doc.dart_name(v.dart1) +
                                ", " + doc.dart_name(v.dart2) + " collide at " +
                                doc.vertex_name(v.vertex));
  }
  Json j;
  j["schema"] = 1;
  if (!doc.name.empty()) j["input"] = doc.name;
  Json depths = Json::array();
  std::optional<PullbackGraph> previous;
  for (int depth = 1; depth <= options.max_depth; ++depth) {
    if (subdivision_dart_count(f, depth, options.max_subdivision_darts) >
        options.max_subdivision_darts) {
      j["truncated"] = "subdivision size guard tripped at depth " + std::to_string(depth);
      break;
    }
    SubdividedSystem sys = subdivide_for(f, depth);
    if (pullback_dart_count(sys) > options.max_pullback_darts) {
      j["truncated"] = "pullback size guard tripped at depth " + std::to_string(depth);
      break;
    }
    PullbackGraph p = pullback(f, depth);
    Classified cls = classify_components(p);
    Json entry;
    entry["depth"] = depth;
    entry["vertices"] = p.graph().vertex_count();
    entry["edges"] = p.graph().edge_count();
    entry["components"] = cls.components.size();
    int old_count = static_cast<int>(std::count(cls.is_old.begin(), cls.is_old.end(), true));
    entry["old_components"] = old_count;
    entry["new_components"] = static_cast<int>(cls.components.size()) - old_count;
    Json cores = Json::array();
    int core_count = 0;
    for (std::size_t ci = 0; ci < cls.components.size(); ++ci) {
      if (cls.is_old[ci]) continue;
      Subgraph core = core_subgraph(cls.components[ci]);
      if (core.empty()) continue;
      ++core_count;
      Json centry;
      centry["vertices"] = core.vertex_count();
      centry["edges"] = core.edge_count();
      centry["is_circle"] = core.is_circle();
      if (core.is_circle()) {
        CyclicPath word = loop_component_word(core);
        std::vector<DartId> left, right;
        for (DartId d : word.darts()) {
          auto [l, r] = p.dart_pair(d);
          left.push_back(l);
          right.push_back(r);
        }
        CyclicPath cminus = p.system().collapse_cyclic(left);
        CyclicPath cplus = p.system().collapse_cyclic(right);
        centry["loop_left"] = doc.path_name(cminus.darts());
        centry["loop_right"] = doc.path_name(cplus.darts());
      }
      cores.push_back(std::move(centry));
    }
    entry["new_core_components"] = core_count;
    entry["new_core"] = std::move(cores);
    if (previous.has_value()) {
      try {
        check_chain(*previous, p);
        entry["chain_ok"] = true;
      } catch (const std::logic_error& err) {
        entry["chain_ok"] = false;
        entry["chain_error"] = err.what();
      }
    }
    if (options.with_dot) {
      entry["dot"] = pullback_dot(doc, p, cls);
    }
    depths.push_back(std::move(entry));
    previous = std::move(p);
  }
  j["depths"] = std::move(depths);
  return j;
}

Json oracle_report(const InputDocument& doc, int max_len, int max_k, std::int64_t max_d) {
  const Endomorphism* endo = doc.endomorphism();
  if (endo == nullptr) {
    throw std::invalid_argument("the word oracle needs an endomorphism input");
  }
  Json j;
  j["schema"] = 1;
  if (!doc.name.empty()) j["input"] = doc.name;
  j["bounds"] = {{"max_len", max_len}, {"max_k", max_k}, {"max_d", max_d}};
  auto witness = oracle_search(*endo, max_len, max_k, max_d);
  j["found"] = witness.has_value();
  if (witness.has_value()) {
    j["witness"] = {{"word", word_to_string(witness->w)}, {"k", witness->k}, {"d", witness->d}};
    j["summary"] = "invariant word: " + word_to_string(witness->w) + " with k=" +
                   std::to_string(witness->k) + ", d=" + std::to_string(witness->d);
  } else {
    j["summary"] = "none within bounds";
  }
  return j;
}

Json verdict_to_json(const InputDocument& doc, const Verdict& v) {
  Json j;
  j["schema"] = 1;
  if (!doc.name.empty()) j["input"] = doc.name;
  switch (v.kind) {
    case Verdict::Kind::hyperbolic: {
      j["verdict"] = "hyperbolic";
      const HyperbolicityCertificate& cert = *v.hyperbolic;
      Json c;
      c["type"] = "hyperbolic";
      c["lambda"] = 2;
      c["n"] = cert.expansion.n;
      c["stabilization_depth"] = cert.stabilization_depth;
      c["expansion"] = {{"n_prime", cert.expansion.n_prime},
                        {"forest_k", cert.expansion.forest_k},
                        {"forest_edges", cert.expansion.collapsed.forest_edges},
                        {"collapsed_edges", cert.expansion.collapsed.graph.edge_count()},
                        {"notes",
                         "forest chosen greedily by ascending edge id; exponent search is "
                         "capped and cap exhaustion is reported as inconclusive, never as a "
                         "verdict"}};
      if (cert.flare.has_value()) {
        c["flare"] = {{"lambda_f", cert.flare->lambda_f},
                      {"k", cert.flare->k},
                      {"r", cert.flare->r},
                      {"m", cert.flare->m},
                      {"h_coefficient", cert.flare->h_coefficient.str()}};
      } else {
        c["flare"] = nullptr;
      }
      j["certificate"] = std::move(c);
      break;
    }
    case Verdict::Kind::not_hyperbolic: {
      j["verdict"] = "not_hyperbolic";
      const InvariantLoopCertificate& cert = *v.invariant_loop;
      std::vector<DartId> darts(cert.loop.darts().begin(), cert.loop.darts().end());
      j["certificate"] = {{"type", "invariant_loop"},
                          {"loop", doc.path_name(cert.loop.darts())},
                          {"loop_darts", darts},
                          {"k", cert.k},
                          {"d", cert.d}};
      break;
    }
    case Verdict::Kind::inconclusive: {
      j["verdict"] = "inconclusive";
      const BudgetReport& b = *v.budget;
      Json budget;
      budget["max_depth"] = b.max_depth;
      budget["reached_depth"] = b.reached_depth;
      if (b.stabilization_bound.has_value()) {
        budget["stabilization_bound"] = *b.stabilization_bound;
      } else {
        budget["stabilization_bound"] = nullptr;
      }
      budget["reason"] = b.reason;
      j["budget"] = std::move(budget);
      break;
    }
  }
  return j;
}

Verdict verdict_from_json(const GraphMap& f, const Json& j) {
  try {
    std::string kind = j.at("verdict").get<std::string>();
    Verdict v;
    if (kind == "not_hyperbolic") {
      v.kind = Verdict::Kind::not_hyperbolic;
      const Json& c = j.at("certificate");
      auto darts = c.at("loop_darts").get<std::vector<DartId>>();
      InvariantLoopCertificate cert{CyclicPath::canonical(f.domain(), std::move(darts)),
                                    c.at("k").get<int>(), c.at("d").get<int>()};
      v.invariant_loop = std::move(cert);
      return v;
    }
    if (kind == "hyperbolic") {
      v.kind = Verdict::Kind::hyperbolic;
      const Json& c = j.at("certificate");
      HyperbolicityCertificate cert;
      cert.stabilization_depth = c.at("stabilization_depth").get<std::int64_t>();
      const Json& e = c.at("expansion");
      auto forest_edges = e.at("forest_edges").get<std::vector<EdgeId>>();
      const Graph& g = f.domain();
      std::vector<bool> vmask(static_cast<std::size_t>(g.vertex_count()), false);
      std::vector<bool> dmask(static_cast<std::size_t>(g.dart_count()), false);
      for (EdgeId edge : forest_edges) {
        if (edge < 0 || edge >= g.edge_count()) {
          throw std::invalid_argument("forest edge out of range");
        }
        DartId d = forward_dart(edge);
        dmask[static_cast<std::size_t>(d)] = true;
        dmask[static_cast<std::size_t>(reverse_dart(d))] = true;
        vmask[static_cast<std::size_t>(g.origin(d))] = true;
        vmask[static_cast<std::size_t>(g.terminus(d))] = true;
      }
      cert.expansion.collapsed = collapse_forest(f, Subgraph::of(g, vmask, dmask));
      cert.expansion.n_prime = e.at("n_prime").get<int>();
      cert.expansion.forest_k = e.at("forest_k").get<int>();
      cert.expansion.n = c.at("n").get<int>();
      if (!c.at("flare").is_null()) {
        const Json& fl = c.at("flare");
        FlareConstants flare;
        flare.lambda_f = fl.at("lambda_f").get<int>();
        flare.n = cert.expansion.n;
        flare.stabilization_depth = cert.stabilization_depth;
        flare.k = fl.at("k").get<int>();
        flare.r = fl.at("r").get<int>();
        flare.m = fl.at("m").get<std::int64_t>();
        flare.h_coefficient = BigInt(fl.at("h_coefficient").get<std::string>());
        cert.flare = std::move(flare);
      }
      v.hyperbolic = std::move(cert);
      return v;
    }
    if (kind == "inconclusive") {
      v.kind = Verdict::Kind::inconclusive;
      return v;
    }
    throw std::invalid_argument("unknown verdict kind '" + kind + "'");
  } catch (const Json::exception& err) {
    throw std::invalid_argument(std::string("malformed verdict JSON: ") + err.what());
  }
}

DecideBudgets budgets_from_json(const Json& j) {
  DecideBudgets b;
  if (j.is_null()) return b;
  if (!j.is_object()) throw std::invalid_argument("budgets must be a JSON object");
  try {
    if (j.contains("max_depth")) b.max_depth = j.at("max_depth").get<int>();
    if (j.contains("k_budget")) b.k_budget = j.at("k_budget").get<int>();
    if (j.contains("d_cap")) b.d_cap = j.at("d_cap").get<std::int64_t>();
    if (j.contains("expansion_cap")) b.expansion_cap = j.at("expansion_cap").get<std::int64_t>();
    if (j.contains("max_subdivision_darts")) {
      b.max_subdivision_darts = j.at("max_subdivision_darts").get<std::int64_t>();
    }
    if (j.contains("max_pullback_darts")) {
      b.max_pullback_darts = j.at("max_pullback_darts").get<std::int64_t>();
    }
  } catch (const Json::exception& err) {
    throw std::invalid_argument(std::string("malformed budgets: ") + err.what());
  }
  return b;
}

}  // namespace mtor
