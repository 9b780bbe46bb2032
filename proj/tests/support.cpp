#include "support.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "sskg/error.hpp"

using namespace sskg;

namespace fixtures {

std::string read_graph_text(const std::string& name) {
  std::ifstream in(std::string(SSKG_GRAPHS_DIR) + "/" + name + ".sskg");
  if (!in) throw std::runtime_error("missing graph " + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

GraphDocument load_document(const std::string& name) { return parse_document(read_graph_text(name)); }

SelfSimilarKGraph load(const std::string& name) { return build(load_document(name)); }

SelfSimilarKGraph from_text(const std::string& text) { return build(parse_document(text)); }

VertexId vertex(const KGraph& g, const std::string& name) {
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v)
    if (g.vertex_name(v) == name) return v;
  throw std::runtime_error("no vertex " + name);
}

EdgeId edge(const KGraph& g, const std::string& name) {
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e)
    if (g.edge(e).name == name) return e;
  throw std::runtime_error("no edge " + name);
}

VertexSet set(const KGraph& g, std::initializer_list<const char*> names) {
  VertexSet s(g.num_vertices(), false);
  for (const char* n : names) s[vertex(g, n)] = true;
  return s;
}

Path path(const KGraph& g, std::initializer_list<const char*> edges) {
  std::vector<EdgeId> word;
  for (const char* e : edges) word.push_back(edge(g, e));
  return g.from_edges(word);
}

GroupElem element(const FiniteGroup& grp, const std::string& name) {
  for (GroupElem a = 0; a < static_cast<GroupElem>(grp.order()); ++a)
    if (grp.name(a) == name) return a;
  throw std::runtime_error("no group element " + name);
}

namespace {

std::vector<EdgeSpec> random_color(std::mt19937& rng, Color c, const std::string& prefix) {
  std::vector<EdgeSpec> out;
  std::uniform_int_distribution<int> vert(0, 2);
  std::bernoulli_distribution two(0.4);
  const VertexId branching = vert(rng);
  for (VertexId v = 0; v < 3; ++v) {
    const int n = (v == branching || two(rng)) ? 2 : 1;
    for (int i = 0; i < n; ++i)
      out.push_back({prefix + std::to_string(out.size()), c, v, vert(rng)});
  }
  return out;
}

}  // namespace

SelfSimilarKGraph random_1graph(std::mt19937& rng) {
  Skeleton sk{1, {"p0", "p1", "p2"}, random_color(rng, 0, "e")};
  return trivial_action(validate_kgraph(sk, {}));
}

SelfSimilarKGraph random_2graph(std::mt19937& rng) {
  Skeleton sk{2, {"p0", "p1", "p2"}, random_color(rng, 0, "e")};
  const std::size_t n1 = sk.edges.size();
  for (std::size_t i = 0; i < n1; ++i) {
    EdgeSpec f = sk.edges[i];
    f.name = "f" + std::to_string(i);
    f.color = 1;
    sk.edges.push_back(f);
  }
  const auto& E = sk.edges;
  std::vector<Square> squares;
  for (VertexId r = 0; r < 3; ++r)
    for (VertexId s = 0; s < 3; ++s) {
      std::vector<std::pair<EdgeId, EdgeId>> left, right;
      for (EdgeId a = 0; a < static_cast<EdgeId>(E.size()); ++a)
        for (EdgeId b = 0; b < static_cast<EdgeId>(E.size()); ++b) {
          if (E[a].range != r || E[b].source != s || E[a].source != E[b].range) continue;
          if (E[a].color == 0 && E[b].color == 1) left.emplace_back(a, b);
          if (E[a].color == 1 && E[b].color == 0) right.emplace_back(a, b);
        }
      std::shuffle(right.begin(), right.end(), rng);
      for (std::size_t i = 0; i < left.size(); ++i)
        squares.push_back({left[i].first, left[i].second, right[i].first, right[i].second});
    }
  return trivial_action(validate_kgraph(sk, squares));
}

Angle angle(std::int64_t num, std::int64_t den) { return Angle(num, den); }

RationalCharacter chr(std::initializer_list<Angle> angles) { return RationalCharacter{std::vector<Angle>(angles)}; }

}  // namespace fixtures

namespace oracle {

namespace {

bool sorted_colors(const Skeleton& sk, const std::vector<EdgeId>& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (sk.edges[w[i]].color > sk.edges[w[i + 1]].color) return false;
  return true;
}

std::vector<std::vector<bool>> reach(const Skeleton& sk) {
  const std::size_t n = sk.vertices.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t v = 0; v < n; ++v) r[v][v] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : sk.edges)
      for (std::size_t w = 0; w < n; ++w)
        if (r[e.source][w] && !r[e.range][w]) r[e.range][w] = changed = true;
  }
  return r;
}

std::vector<Degree> nonzero_degrees(int k, int bound) {
  std::vector<Degree> out;
  for (const Degree& d : degrees_up_to(Degree::uniform(static_cast<std::size_t>(k), bound)))
    if (!d.is_zero()) out.push_back(d);
  return out;
}

VertexId word_source(const Skeleton& sk, VertexId range, const std::vector<EdgeId>& w) {
  return w.empty() ? range : sk.edges[w.back()].source;
}

}  // namespace

std::vector<EdgeId> rewrite_normal_form(const Skeleton& sk, const std::vector<Square>& squares,
                                        const std::vector<EdgeId>& word) {
  std::map<std::pair<EdgeId, EdgeId>, std::pair<EdgeId, EdgeId>> moves;
  for (const Square& s : squares) {
    moves[{s.e, s.f}] = {s.f2, s.e2};
    moves[{s.f2, s.e2}] = {s.e, s.f};
  }
  std::set<std::vector<EdgeId>> seen{word};
  std::deque<std::vector<EdgeId>> queue{word};
  std::set<std::vector<EdgeId>> sorted;
  while (!queue.empty()) {
    auto w = queue.front();
    queue.pop_front();
    if (sorted_colors(sk, w)) sorted.insert(w);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      auto it = moves.find({w[i], w[i + 1]});
      if (it == moves.end()) continue;
      auto next = w;
      next[i] = it->second.first;
      next[i + 1] = it->second.second;
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  if (sorted.size() != 1) throw std::runtime_error("rewriting oracle: no unique sorted word");
  return *sorted.begin();
}

std::vector<std::vector<EdgeId>> words_of_degree(const Skeleton& sk, VertexId v, const Degree& p) {
  std::vector<Color> colors;
  for (std::size_t c = 0; c < p.size(); ++c)
    for (int i = 0; i < p[c]; ++i) colors.push_back(static_cast<Color>(c));
  std::vector<std::vector<EdgeId>> out;
  std::vector<EdgeId> cur;
  auto rec = [&](auto& self, VertexId at) -> void {
    if (cur.size() == colors.size()) {
      out.push_back(cur);
      return;
    }
    for (EdgeId e = 0; e < static_cast<EdgeId>(sk.edges.size()); ++e) {
      if (sk.edges[e].range != at || sk.edges[e].color != colors[cur.size()]) continue;
      cur.push_back(e);
      self(self, sk.edges[e].source);
      cur.pop_back();
    }
  };
  rec(rec, v);
  return out;
}

std::pair<std::vector<EdgeId>, GroupElem> fold_action(const SelfSimilarKGraph& ss, GroupElem g,
                                                      const std::vector<EdgeId>& word) {
  std::vector<EdgeId> out;
  for (EdgeId e : word) {
    out.push_back(ss.table().act[g][e]);
    g = ss.table().restriction[g][e];
  }
  return {out, g};
}

bool cycline_prefix(const SelfSimilarKGraph& ss, const Path& mu, GroupElem g, const Path& nu, int depth,
                    const VertexSet* within) {
  const KGraph& G = ss.graph();
  if (mu.range() != nu.range() || mu.source() != nu.source()) return false;
  const Skeleton& sk = G.skeleton();
  const Degree D = Degree::uniform(static_cast<std::size_t>(G.k()), depth);
  const Degree m = D + meet(mu.degree(), nu.degree());
  for (const auto& lam : words_of_degree(sk, nu.source(), D)) {
    if (within && !(*within)[word_source(sk, nu.source(), lam)]) continue;
    const auto [glam, h] = fold_action(ss, g, lam);
    const Path a = G.compose(mu, G.from_edges(glam));
    const Path b = G.compose(nu, G.from_edges(lam));
    if (G.segment(a, Degree(D.size()), m) != G.segment(b, Degree(D.size()), m)) return false;
  }
  return true;
}

bool tail_conditions(const KGraph& g, const VertexSet& t, int bound) {
  const Skeleton& sk = g.skeleton();
  const std::size_t n = sk.vertices.size();
  if (std::none_of(t.begin(), t.end(), [](bool b) { return b; })) return false;
  const auto r = reach(sk);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      if (t[w] && r[v][w] && !t[v]) return false;
  for (std::size_t v = 0; v < n; ++v) {
    if (!t[v]) continue;
    for (const Degree& p : nonzero_degrees(g.k(), bound)) {
      const auto ws = words_of_degree(sk, static_cast<VertexId>(v), p);
      if (std::none_of(ws.begin(), ws.end(),
                       [&](const auto& w) { return t[word_source(sk, static_cast<VertexId>(v), w)]; }))
        return false;
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w) {
      if (!t[v] || !t[w]) continue;
      bool meet_found = false;
      for (std::size_t y = 0; y < n; ++y) meet_found |= t[y] && r[v][y] && r[w][y];
      if (!meet_found) return false;
    }
  return true;
}

std::vector<VertexSet> maximal_tails_by_subsets(const KGraph& g, int bound) {
  const std::size_t n = g.num_vertices();
  std::vector<VertexSet> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    VertexSet t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = (mask >> i) & 1u;
    if (tail_conditions(g, t, bound)) out.push_back(t);
  }
  return out;
}

VertexSet sigma_by_subsets(const KGraph& g, const VertexSet& a, int bound) {
  const Skeleton& sk = g.skeleton();
  const std::size_t n = g.num_vertices();
  VertexSet out(n, true);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    VertexSet h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = (mask >> i) & 1u;
    if (!is_subset(a, h)) continue;
    bool ok = std::all_of(sk.edges.begin(), sk.edges.end(), [&](const EdgeSpec& e) { return !h[e.range] || h[e.source]; });
    for (std::size_t v = 0; v < n && ok; ++v) {
      if (h[v]) continue;
      for (const Degree& p : nonzero_degrees(g.k(), bound)) {
        const auto ws = words_of_degree(sk, static_cast<VertexId>(v), p);
        if (std::all_of(ws.begin(), ws.end(),
                        [&](const auto& w) { return h[word_source(sk, static_cast<VertexId>(v), w)]; })) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    for (std::size_t i = 0; i < n; ++i) out[i] = out[i] && h[i];
  }
  return out;
}

namespace {

__int128 det(std::vector<std::vector<__int128>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  __int128 total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<__int128>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<__int128> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(std::move(row));
    }
    const __int128 term = m[0][j] * det(std::move(minor));
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

__int128 abs128(__int128 x) { return x < 0 ? -x : x; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

void combinations(std::size_t n, std::size_t r, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto& self, std::size_t start) -> void {
    if (cur.size() == r) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<std::int64_t> determinantal_invariants(const IntMatrix& m, std::size_t columns) {
  std::vector<std::int64_t> out;
  __int128 previous = 1;
  for (std::size_t r = 1; r <= std::min(m.size(), columns); ++r) {
    std::vector<std::vector<std::size_t>> rows, cols;
    combinations(m.size(), r, rows);
    combinations(columns, r, cols);
    __int128 g = 0;
    for (const auto& rs : rows)
      for (const auto& cs : cols) {
        std::vector<std::vector<__int128>> sub;
        for (std::size_t i : rs) {
          std::vector<__int128> row;
          for (std::size_t j : cs) row.push_back(m[i][j]);
          sub.push_back(std::move(row));
        }
        g = gcd128(g, det(std::move(sub)));
      }
    if (g == 0) break;
    out.push_back(static_cast<std::int64_t>(g / previous));
    previous = g;
  }
  return out;
}

VertexSet h_by_uniqueness(const SelfSimilarKGraph& ss, const VertexSet& t, const PerLattice& per, int bound,
                          int depth) {
  const KGraph& g = ss.graph();
  const auto k = static_cast<std::size_t>(g.k());
  const auto degrees = degrees_up_to(Degree::uniform(k, bound));
  VertexSet h(g.num_vertices(), false);
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    if (!t[v]) continue;
    auto in_t = [&](const Degree& p) {
      std::vector<Path> out;
      for (Path& mu : g.paths_of_degree(v, p))
        if (t[mu.source()]) out.push_back(std::move(mu));
      return out;
    };
    bool ok = true;
    for (const Degree& p : degrees) {
      for (const Degree& q : degrees) {
        if (!per.contains(difference(p, q))) continue;
        const auto nus = in_t(q);
        for (const Path& mu : in_t(p)) {
          int partners = 0;
          for (const Path& nu : nus) partners += cycline_prefix(ss, mu, 0, nu, depth, &t) ? 1 : 0;
          ok = ok && partners == 1;
        }
      }
    }
    h[v] = ok;
  }
  return h;
}

std::vector<EdgeId> window_word(const KGraph& g, const InfinitePath& x, int window) {
  const Path p = g.segment(x, Degree(static_cast<std::size_t>(g.k())),
                           Degree::uniform(static_cast<std::size_t>(g.k()), window));
  std::vector<EdgeId> out{p.range()};
  out.insert(out.end(), p.edges().begin(), p.edges().end());
  return out;
}

std::vector<std::vector<EdgeId>> move_closure(const SelfSimilarKGraph& ss, const InfinitePath& x, int n,
                                              int window) {
  const KGraph& g = ss.graph();
  std::set<std::vector<EdgeId>> seen{window_word(g, x, window)};
  std::vector<InfinitePath> layer{x};
  for (int step = 0; step < n; ++step) {
    std::vector<InfinitePath> next;
    auto visit = [&](InfinitePath y) {
      if (seen.insert(window_word(g, y, window)).second) next.push_back(std::move(y));
    };
    for (const InfinitePath& y : layer) {
      for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e)
        if (g.edge(e).source == y.prefix.range()) visit(g.prepend(g.edge_path(e), y));
      for (Color c = 0; c < g.k(); ++c) visit(g.shift(y, Degree::unit(static_cast<std::size_t>(g.k()), c)));
      for (GroupElem h = 0; h < static_cast<GroupElem>(ss.group().order()); ++h)
        if (h != ss.group().identity()) visit(ss.act(h, y));
    }
    layer = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

bool subgroup_contains(const std::vector<RationalCharacter>& gens, const RationalCharacter& f0) {
  std::vector<std::int64_t> orders;
  for (const auto& f : gens) {
    std::int64_t o = 1;
    for (const Angle& a : f.angles) o = std::lcm(o, a.den());
    orders.push_back(o);
  }
  std::vector<std::int64_t> n(gens.size(), 0);
  while (true) {
    std::vector<Angle> sum(f0.angles.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = sum[j] + n[i] * gens[i].angles[j];
    if (sum == f0.angles) return true;
    std::size_t i = 0;
    while (i < n.size() && ++n[i] == orders[i]) n[i++] = 0;
    if (i == n.size()) return false;
  }
}

namespace {

bool d_contains(const CharacterSet& d, const RationalCharacter& f0) {
  switch (d.kind) {
    case CharacterSet::Kind::Full: return true;
    case CharacterSet::Kind::Finite: return std::find(d.elements.begin(), d.elements.end(), f0) != d.elements.end();
    case CharacterSet::Kind::Subgroup: return subgroup_contains(d.elements, f0);
  }
  return false;
}

}  // namespace

bool theorem_closure(const std::vector<TailPoint>& universe, const ClosureQuery& q) {
  const VertexSet& t0 = universe[q.t0].vertices;
  auto covered = [&](const std::vector<std::size_t>& tails) {
    for (std::size_t v = 0; v < t0.size(); ++v) {
      if (!t0[v]) continue;
      bool hit = false;
      for (std::size_t i : tails) hit |= static_cast<bool>(universe[i].vertices[v]);
      if (!hit) return false;
    }
    return true;
  };
  bool result = false;
  if (!q.w.empty()) result |= covered(q.w);
  if (!q.y.empty()) {
    std::vector<std::size_t> ys;
    for (const auto& [i, d] : q.y) ys.push_back(i);
    if (!universe[q.t0].tau) {
      result |= covered(ys);
    } else {
      bool strict = false;
      for (std::size_t i : ys) strict |= i != q.t0 && is_subset(t0, universe[i].vertices);
      bool second = false;
      if (!strict)
        for (const auto& [i, d] : q.y) second |= i == q.t0 && d_contains(d, q.f0);
      result |= strict || second;
    }
  }
  return result;
}

}  // namespace oracle
