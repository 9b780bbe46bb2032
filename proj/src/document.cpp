#include "sskg/document.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "sskg/error.hpp"

namespace sskg {

namespace {

struct Token {
  std::string text;
  int col = 1;
};

bool is_special(char c) { return c == '{' || c == '}' || c == '(' || c == ')' || c == ',' || c == '=' || c == ':'; }

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    const int col = static_cast<int>(i) + 1;
    if (is_special(c)) {
      out.push_back({std::string(1, c), col});
      ++i;
    } else if (line.substr(i, 2) == "->") {
      out.push_back({"->", col});
      i += 2;
    } else {
      std::size_t j = i;
      while (j < line.size() && !is_special(line[j]) && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' &&
             line[j] != '#' && line.substr(j, 2) != "->")
        ++j;
      out.push_back({std::string(line.substr(i, j - i)), col});
      i = j;
    }
  }
  return out;
}

enum class Section { None, Vertices, Edges, Squares, Group, Action, Query };

class Parser {
 public:
  GraphDocument run(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t end = std::min(text.find('\n', pos), text.size());
      ++line_;
      tokens_ = tokenize(text.substr(pos, end - pos));
      at_ = 0;
      if (!tokens_.empty()) handle_line();
      pos = end + 1;
    }
    if (!have_k_) throw ParseError(ErrorKind::SyntaxError, 1, 1, "missing k");
    finish_group();
    finish_query();
    finish_action();
    return std::move(doc_);
  }

 private:
  [[noreturn]] void fail(ErrorKind kind, const std::string& msg) const {
    const int col = at_ < tokens_.size() ? tokens_[at_].col : (tokens_.empty() ? 1 : tokens_.back().col);
    throw ParseError(kind, line_, col, msg);
  }
  [[noreturn]] void fail_at(std::size_t token, ErrorKind kind, const std::string& msg) {
    at_ = token;
    fail(kind, msg);
  }

  bool done() const { return at_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[at_]; }
  std::string next(const std::string& what) {
    if (done()) fail(ErrorKind::SyntaxError, "expected " + what);
    return tokens_[at_++].text;
  }
  void expect(const std::string& text) {
    if (done() || peek().text != text) fail(ErrorKind::SyntaxError, "expected '" + text + "'");
    ++at_;
  }
  void expect_end() {
    if (!done()) fail(ErrorKind::SyntaxError, "unexpected '" + peek().text + "'");
  }
  std::string name(const std::string& what) {
    if (done() || is_special(peek().text[0]) || peek().text == "->") fail(ErrorKind::SyntaxError, "expected " + what);
    return tokens_[at_++].text;
  }
  long integer(const std::string& what) {
    const std::size_t here = at_;
    const std::string t = next(what);
    long v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) fail_at(here, ErrorKind::SyntaxError, "expected " + what);
    return v;
  }

  template <class Map>
  auto lookup(const Map& m, const std::string& what) {
    const std::size_t here = at_;
    const std::string n = name(what);
    const auto it = m.find(n);
    if (it == m.end()) fail_at(here, ErrorKind::DanglingReference, "unknown " + what + " '" + n + "'");
    return it->second;
  }

  void handle_line() {
    const std::string& head = tokens_[0].text;
    if (!have_k_) {
      if (head != "k") fail(ErrorKind::SyntaxError, "missing k");
      ++at_;
      const long k = integer("k");
      if (k < 1 || k > 16) fail_at(1, ErrorKind::SyntaxError, "k must be between 1 and 16");
      expect_end();
      doc_.skeleton.k = static_cast<int>(k);
      have_k_ = true;
      return;
    }
    if (head.front() == '[') {
      section_header();
      return;
    }
    switch (section_) {
      case Section::None: fail(ErrorKind::SyntaxError, "content outside a section");
      case Section::Vertices: vertices_line(); break;
      case Section::Edges: edges_line(); break;
      case Section::Squares: squares_line(); break;
      case Section::Group: group_line(); break;
      case Section::Action: action_line(); break;
      case Section::Query: query_line(); break;
    }
  }

  void section_header() {
    const std::string& t = tokens_[0].text;
    if (t.size() < 3 || t.back() != ']' || tokens_.size() != 1) fail(ErrorKind::SyntaxError, "malformed section header");
    const std::string s = t.substr(1, t.size() - 2);
    if (section_ == Section::Group) finish_group();
    if (section_ == Section::Query) finish_query();
    if (s == "vertices") section_ = Section::Vertices;
    else if (s == "edges") section_ = Section::Edges;
    else if (s == "squares") section_ = Section::Squares;
    else if (s == "group") {
      if (doc_.group) fail(ErrorKind::DuplicateId, "second [group] section");
      doc_.group.emplace();
      section_ = Section::Group;
    } else if (s == "action") {
      if (!doc_.group) fail(ErrorKind::SyntaxError, "[action] before [group]");
      section_ = Section::Action;
    } else if (s == "query") {
      query_.emplace();
      query_line_ = line_;
      section_ = Section::Query;
    } else {
      fail(ErrorKind::SyntaxError, "unknown section '" + s + "'");
    }
  }

  void vertices_line() {
    while (!done()) {
      const std::size_t here = at_;
      const std::string n = name("vertex name");
      if (!vertex_ids_.emplace(n, static_cast<VertexId>(doc_.skeleton.vertices.size())).second)
        fail_at(here, ErrorKind::DuplicateId, "duplicate vertex '" + n + "'");
      doc_.skeleton.vertices.push_back(n);
    }
  }

  void edges_line() {
    const std::string n = name("edge name");
    if (edge_ids_.contains(n)) fail_at(0, ErrorKind::DuplicateId, "duplicate edge '" + n + "'");
    const std::size_t color_at = at_;
    const long color = integer("color");
    if (color < 1 || color > doc_.skeleton.k)
      fail_at(color_at, ErrorKind::SyntaxError, "color must be between 1 and " + std::to_string(doc_.skeleton.k));
    const VertexId range = lookup(vertex_ids_, "vertex");
    const VertexId source = lookup(vertex_ids_, "vertex");
    expect_end();
    edge_ids_.emplace(n, static_cast<EdgeId>(doc_.skeleton.edges.size()));
    doc_.skeleton.edges.push_back({n, static_cast<Color>(color - 1), range, source});
  }

  void squares_line() {
    Square sq;
    sq.e = lookup(edge_ids_, "edge");
    sq.f = lookup(edge_ids_, "edge");
    expect("=");
    sq.f2 = lookup(edge_ids_, "edge");
    sq.e2 = lookup(edge_ids_, "edge");
    expect_end();
    doc_.squares.push_back(sq);
  }

  void group_line() {
    GroupSpec& g = *doc_.group;
    const std::string kw = next("keyword");
    if (kw == "elements") {
      if (!g.names.empty()) fail_at(0, ErrorKind::DuplicateId, "group elements listed twice");
      while (!done()) {
        const std::size_t here = at_;
        const std::string n = name("group element");
        if (!group_ids_.emplace(n, static_cast<GroupElem>(g.names.size())).second)
          fail_at(here, ErrorKind::DuplicateId, "duplicate group element '" + n + "'");
        g.names.push_back(n);
      }
      if (g.names.empty()) fail(ErrorKind::SyntaxError, "expected group elements");
      g.table.assign(g.names.size(), {});
    } else if (kw == "identity") {
      if (have_identity_) fail_at(0, ErrorKind::DuplicateId, "identity given twice");
      g.identity = lookup(group_ids_, "group element");
      have_identity_ = true;
      expect_end();
    } else if (kw == "table") {
      const GroupElem row = lookup(group_ids_, "group element");
      expect(":");
      if (!g.table[row].empty()) fail_at(1, ErrorKind::DuplicateId, "table row for '" + g.names[row] + "' given twice");
      std::vector<GroupElem> products;
      for (std::size_t i = 0; i < g.names.size(); ++i) products.push_back(lookup(group_ids_, "group element"));
      expect_end();
      g.table[row] = std::move(products);
    } else {
      fail_at(0, ErrorKind::SyntaxError, "unknown group keyword '" + kw + "'");
    }
  }

  void finish_group() {
    if (!doc_.group || group_done_) return;
    group_done_ = true;
    GroupSpec& g = *doc_.group;
    if (g.names.empty()) throw ParseError(ErrorKind::SyntaxError, line_, 1, "[group] without elements");
    if (!have_identity_) throw ParseError(ErrorKind::SyntaxError, line_, 1, "[group] without identity");
    for (std::size_t r = 0; r < g.names.size(); ++r)
      if (g.table[r].empty())
        throw ParseError(ErrorKind::SyntaxError, line_, 1, "missing table row for '" + g.names[r] + "'");
  }

  void action_line() {
    const GroupElem g = lookup(group_ids_, "group element");
    const std::size_t edge_at = at_;
    const EdgeId e = lookup(edge_ids_, "edge");
    expect("->");
    const EdgeId e2 = lookup(edge_ids_, "edge");
    const GroupElem g2 = lookup(group_ids_, "group element");
    expect_end();
    if (!action_rows_.emplace(std::pair{g, e}, std::pair{e2, g2}).second)
      fail_at(edge_at, ErrorKind::DuplicateId, "second action row for this element and edge");
  }

  VertexSet vertex_set_token() {
    expect("{");
    VertexSet s(doc_.skeleton.vertices.size(), false);
    if (!done() && peek().text == "}") {
      ++at_;
      return s;
    }
    while (true) {
      s[lookup(vertex_ids_, "vertex")] = true;
      if (!done() && peek().text == ",") {
        ++at_;
        continue;
      }
      expect("}");
      return s;
    }
  }

  RationalCharacter character() {
    expect("(");
    RationalCharacter f;
    if (!done() && peek().text == ")") {
      ++at_;
      return f;
    }
    while (true) {
      const std::size_t here = at_;
      const std::string t = next("angle");
      try {
        f.angles.push_back(Angle::parse(t));
      } catch (const Error&) {
        fail_at(here, ErrorKind::SyntaxError, "expected an angle p/q, got '" + t + "'");
      }
      if (!done() && peek().text == ",") {
        ++at_;
        continue;
      }
      expect(")");
      return f;
    }
  }

  void query_line() {
    QuerySpec& q = *query_;
    const std::string kw = next("keyword");
    if (kw == "point") {
      if (have_point_) fail_at(0, ErrorKind::DuplicateId, "second point in query");
      q.point = vertex_set_token();
      if (!done()) q.f0 = character();
      have_point_ = true;
    } else if (kw == "W") {
      do q.w.push_back(vertex_set_token());
      while (!done());
    } else if (kw == "Y") {
      VertexSet t = vertex_set_token();
      const std::string kind = next("FULL, finite or subgroup");
      CharacterSet d;
      if (kind == "FULL") {
        d = CharacterSet::full();
      } else if (kind == "finite" || kind == "subgroup") {
        std::vector<RationalCharacter> xs;
        while (!done()) xs.push_back(character());
        d = kind == "finite" ? CharacterSet::finite(std::move(xs)) : CharacterSet::subgroup(std::move(xs));
      } else {
        fail_at(at_ - 1, ErrorKind::SyntaxError, "expected FULL, finite or subgroup");
      }
      q.y.emplace_back(std::move(t), std::move(d));
    } else {
      fail_at(0, ErrorKind::SyntaxError, "unknown query keyword '" + kw + "'");
    }
    expect_end();
  }

  void finish_query() {
    if (!query_) return;
    if (!have_point_) throw ParseError(ErrorKind::SyntaxError, query_line_, 1, "query without point");
    doc_.queries.push_back(std::move(*query_));
    query_.reset();
    have_point_ = false;
  }

  void finish_action() {
    if (!doc_.group) return;
    GroupSpec& g = *doc_.group;
    const std::size_t ne = doc_.skeleton.edges.size();
    g.action.act.assign(g.names.size(), std::vector<EdgeId>(ne, -1));
    g.action.restriction.assign(g.names.size(), std::vector<GroupElem>(ne, -1));
    for (EdgeId e = 0; e < static_cast<EdgeId>(ne); ++e) {
      g.action.act[g.identity][e] = e;
      g.action.restriction[g.identity][e] = g.identity;
    }
    for (const auto& [key, value] : action_rows_) {
      g.action.act[key.first][key.second] = value.first;
      g.action.restriction[key.first][key.second] = value.second;
    }
    for (GroupElem h = 0; h < static_cast<GroupElem>(g.names.size()); ++h)
      for (EdgeId e = 0; e < static_cast<EdgeId>(ne); ++e)
        if (g.action.act[h][e] < 0)
          throw ParseError(ErrorKind::SyntaxError, line_, 1,
                           "missing action row for '" + g.names[h] + "' on '" + doc_.skeleton.edges[e].name + "'");
  }

  GraphDocument doc_;
  Section section_ = Section::None;
  int line_ = 0;
  std::vector<Token> tokens_;
  std::size_t at_ = 0;
  bool have_k_ = false;
  bool have_identity_ = false;
  bool group_done_ = false;
  bool have_point_ = false;
  int query_line_ = 0;
  std::optional<QuerySpec> query_;
  std::map<std::string, VertexId> vertex_ids_;
  std::map<std::string, EdgeId> edge_ids_;
  std::map<std::string, GroupElem> group_ids_;
  std::map<std::pair<GroupElem, EdgeId>, std::pair<EdgeId, GroupElem>> action_rows_;
};

std::string set_text(const Skeleton& s, const VertexSet& v) {
  std::string out = "{";
  bool first = true;
  for (VertexId x : members(v)) {
    if (!first) out += ",";
    out += s.vertices[x];
    first = false;
  }
  return out + "}";
}

std::string character_text(const RationalCharacter& f) {
  std::string out = "(";
  for (std::size_t i = 0; i < f.angles.size(); ++i) out += (i ? "," : "") + f.angles[i].to_string();
  return out + ")";
}

}  // namespace

GraphDocument parse_document(std::string_view text) {
  return Parser().run(text);
}

std::string serialize(const GraphDocument& doc) {
  const Skeleton& s = doc.skeleton;
  std::ostringstream os;
  os << "k " << s.k << "\n[vertices]\n";
  for (std::size_t i = 0; i < s.vertices.size(); ++i) os << (i ? " " : "") << s.vertices[i];
  os << "\n[edges]\n";
  for (const auto& e : s.edges)
    os << e.name << " " << e.color + 1 << " " << s.vertices[e.range] << " " << s.vertices[e.source] << "\n";
  if (!doc.squares.empty()) {
    os << "[squares]\n";
    for (const auto& q : doc.squares)
      os << s.edges[q.e].name << " " << s.edges[q.f].name << " = " << s.edges[q.f2].name << " "
         << s.edges[q.e2].name << "\n";
  }
  if (doc.group) {
    const GroupSpec& g = *doc.group;
    os << "[group]\nelements";
    for (const auto& n : g.names) os << " " << n;
    os << "\nidentity " << g.names[g.identity] << "\n";
    for (std::size_t r = 0; r < g.names.size(); ++r) {
      os << "table " << g.names[r] << " :";
      for (GroupElem x : g.table[r]) os << " " << g.names[x];
      os << "\n";
    }
    os << "[action]\n";
    for (GroupElem h = 0; h < static_cast<GroupElem>(g.names.size()); ++h) {
      if (h == g.identity) continue;
      for (std::size_t e = 0; e < s.edges.size(); ++e)
        os << g.names[h] << " " << s.edges[e].name << " -> " << s.edges[g.action.act[h][e]].name << " "
           << g.names[g.action.restriction[h][e]] << "\n";
    }
  }
  for (const auto& q : doc.queries) {
    os << "[query]\npoint " << set_text(s, q.point) << " " << character_text(q.f0) << "\n";
    if (!q.w.empty()) {
      os << "W";
      for (const auto& t : q.w) os << " " << set_text(s, t);
      os << "\n";
    }
    for (const auto& [t, d] : q.y) {
      os << "Y " << set_text(s, t) << " ";
      switch (d.kind) {
        case CharacterSet::Kind::Full: os << "FULL"; break;
        case CharacterSet::Kind::Finite: os << "finite"; break;
        case CharacterSet::Kind::Subgroup: os << "subgroup"; break;
      }
      for (const auto& f : d.elements) os << " " << character_text(f);
      os << "\n";
    }
  }
  return os.str();
}

SelfSimilarKGraph build(const GraphDocument& doc) {
  KGraph g = validate_kgraph(doc.skeleton, doc.squares);
  if (!doc.group) return trivial_action(std::move(g));
  const GroupSpec& spec = *doc.group;
  FiniteGroup group = FiniteGroup::from_table(spec.names, spec.table, spec.identity);
  return validate_action(std::move(g), std::move(group), spec.action);
}

}  // namespace sskg
