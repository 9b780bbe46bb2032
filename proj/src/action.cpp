#include "sskg/action.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "sskg/error.hpp"

namespace sskg {

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup FiniteGroup::trivial() { return from_table({"1"}, {{0}}, 0); }

FiniteGroup FiniteGroup::from_table(std::vector<std::string> names,
                                    std::vector<std::vector<GroupElem>> table, GroupElem identity) {
  const auto n = static_cast<GroupElem>(names.size());
  if (n == 0) throw Error(ErrorKind::Malformed, "group has no elements");
  if (identity < 0 || identity >= n) throw Error(ErrorKind::Malformed, "identity is not an element");
  if (table.size() != names.size())
    throw Error(ErrorKind::Malformed, "multiplication table has wrong number of rows");
  for (const auto& row : table) {
    if (row.size() != names.size())
      throw Error(ErrorKind::Malformed, "multiplication table row has wrong length");
    for (GroupElem x : row)
      if (x < 0 || x >= n) throw Error(ErrorKind::Malformed, "multiplication table entry out of range");
  }
  for (GroupElem a = 0; a < n; ++a)
    if (table[identity][a] != a || table[a][identity] != a)
      throw Error(ErrorKind::Malformed, names[identity] + " is not an identity for " + names[a]);
  for (GroupElem a = 0; a < n; ++a)
    for (GroupElem b = 0; b < n; ++b)
      for (GroupElem c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error(ErrorKind::Malformed,
                      "multiplication is not associative on (" + names[a] + "," + names[b] + "," + names[c] + ")");
  FiniteGroup g;
  g.inverse_.assign(n, -1);
  for (GroupElem a = 0; a < n; ++a) {
    for (GroupElem b = 0; b < n; ++b)
      if (table[a][b] == identity && table[b][a] == identity) g.inverse_[a] = b;
    if (g.inverse_[a] < 0) throw Error(ErrorKind::Malformed, names[a] + " has no inverse");
  }
  g.names_ = std::move(names);
  g.table_ = std::move(table);
  g.identity_ = identity;
  return g;
}

// ---------------------------------------------------------------------------
// Action on paths

Path SelfSimilarKGraph::act(GroupElem g, const Path& mu) const {
  if (mu.is_vertex()) return mu;
  // Colors are preserved edge by edge, so the image word is already normal.
  std::vector<EdgeId> word;
  word.reserve(mu.length());
  for (EdgeId e : mu.edges()) {
    word.push_back(act(g, e));
    g = restriction(g, e);
  }
  return graph_.from_edges(word);
}

GroupElem SelfSimilarKGraph::restriction(GroupElem g, const Path& mu) const {
  for (EdgeId e : mu.edges()) g = restriction(g, e);
  return g;
}

InfinitePath SelfSimilarKGraph::act(GroupElem g, const InfinitePath& x) const {
  Path prefix = act(g, x.prefix);
  GroupElem h = restriction(g, x.prefix);
  // h·b^∞ = (h_0·b)(h_1·b)... with h_{i+1} = h_i|_b, eventually periodic.
  std::vector<GroupElem> seq;
  std::map<GroupElem, std::size_t> first;
  while (!first.contains(h)) {
    first[h] = seq.size();
    seq.push_back(h);
    h = restriction(h, x.block);
  }
  const std::size_t start = first[h];
  for (std::size_t i = 0; i < start; ++i) prefix = graph_.compose(prefix, act(seq[i], x.block));
  Path block = graph_.vertex(x.block.range());
  for (std::size_t i = start; i < seq.size(); ++i) block = graph_.compose(block, act(seq[i], x.block));
  return graph_.compact({std::move(prefix), std::move(block)});
}

// ---------------------------------------------------------------------------
// Validation

SelfSimilarKGraph validate_action(KGraph graph, FiniteGroup group, ActionTable table) {
  const auto ng = static_cast<GroupElem>(group.order());
  const auto ne = static_cast<EdgeId>(graph.num_edges());
  if (table.act.size() != group.order() || table.restriction.size() != group.order())
    throw Error(ErrorKind::Malformed, "action table does not cover every group element");
  for (GroupElem g = 0; g < ng; ++g) {
    if (table.act[g].size() != graph.num_edges() || table.restriction[g].size() != graph.num_edges())
      throw Error(ErrorKind::Malformed, "action of " + group.name(g) + " is not total on edges");
    for (EdgeId e = 0; e < ne; ++e)
      if (table.act[g][e] < 0 || table.act[g][e] >= ne || table.restriction[g][e] < 0 ||
          table.restriction[g][e] >= ng)
        throw Error(ErrorKind::Malformed, "action table entry out of range");
  }
  const auto& A = table.act;
  const auto& R = table.restriction;
  const GroupElem one = group.identity();
  auto at = [&](GroupElem g, EdgeId e) {
    return "g=" + group.name(g) + ", e=" + graph.edge(e).name;
  };

  for (GroupElem g = 0; g < ng; ++g)
    for (EdgeId e = 0; e < ne; ++e) {
      if (g == one && A[g][e] != e) throw AxiomError(0, "identity moves " + graph.edge(e).name);
      for (GroupElem h = 0; h < ng; ++h)
        if (A[group.mul(g, h)][e] != A[g][A[h][e]])
          throw AxiomError(0, "(gh)·e != g·(h·e) at " + at(g, e) + ", h=" + group.name(h));
    }
  for (GroupElem g = 0; g < ng; ++g)
    for (EdgeId e = 0; e < ne; ++e) {
      const EdgeId ge = A[g][e];
      if (graph.color(ge) != graph.color(e)) throw AxiomError(1, "degree changes at " + at(g, e));
      if (graph.edge(ge).source != graph.edge(e).source || graph.edge(ge).range != graph.edge(e).range)
        throw AxiomError(2, "range or source not fixed at " + at(g, e));
    }
  for (EdgeId e = 0; e < ne; ++e)
    if (R[one][e] != one) throw AxiomError(6, "1|_e != 1 at e=" + graph.edge(e).name);
  for (GroupElem g = 0; g < ng; ++g)
    for (GroupElem h = 0; h < ng; ++h)
      for (EdgeId e = 0; e < ne; ++e)
        if (R[group.mul(g, h)][e] != group.mul(R[g][A[h][e]], R[h][e]))
          throw AxiomError(7, "(gh)|_e != g|_{h·e} h|_e at " + at(g, e) + ", h=" + group.name(h));
  for (const Square& sq : graph.squares())
    for (GroupElem g = 0; g < ng; ++g) {
      // g·(ef) computed through both factorizations ef = f2 e2.
      const EdgeId left1 = A[g][sq.e];
      const EdgeId left2 = A[R[g][sq.e]][sq.f];
      const EdgeId right1 = A[g][sq.f2];
      const EdgeId right2 = A[R[g][sq.f2]][sq.e2];
      if (graph.swap(left1, left2) != std::pair{right1, right2})
        throw AxiomError(3, "g·(ef) depends on the factorization, " + at(g, sq.e) +
                                ", f=" + graph.edge(sq.f).name);
      if (R[R[g][sq.e]][sq.f] != R[R[g][sq.f2]][sq.e2])
        throw AxiomError(5, "g|_(ef) depends on the factorization, " + at(g, sq.e) +
                                ", f=" + graph.edge(sq.f).name);
    }
  return SelfSimilarKGraph(std::move(graph), std::move(group), std::move(table));
}

SelfSimilarKGraph trivial_action(KGraph graph) {
  ActionTable t;
  t.act.resize(1);
  t.restriction.assign(1, std::vector<GroupElem>(graph.num_edges(), 0));
  for (EdgeId e = 0; e < static_cast<EdgeId>(graph.num_edges()); ++e) t.act[0].push_back(e);
  return validate_action(std::move(graph), FiniteGroup::trivial(), std::move(t));
}

// ---------------------------------------------------------------------------
// Pseudo-freeness

PseudoFreeResult pseudo_free_check(const SelfSimilarKGraph& ss) {
  const KGraph& g = ss.graph();
  const FiniteGroup& G = ss.group();
  const auto ng = static_cast<GroupElem>(G.order());
  const auto nv = static_cast<VertexId>(g.num_vertices());
  auto index = [&](GroupElem h, VertexId v) { return static_cast<std::size_t>(h) * nv + v; };

  for (GroupElem start = 0; start < ng; ++start) {
    if (start == G.identity()) continue;
    for (VertexId v0 = 0; v0 < nv; ++v0) {
      // parent[state] = (previous state, edge); kStart marks the first move
      // out of (start, v0), so a witness always has at least one edge.
      constexpr std::size_t kStart = SIZE_MAX;
      std::vector<std::pair<std::size_t, EdgeId>> parent(static_cast<std::size_t>(ng) * nv, {kStart, -1});
      std::deque<std::pair<GroupElem, VertexId>> queue{{start, v0}};
      bool first = true;
      while (!queue.empty()) {
        auto [h, v] = queue.front();
        queue.pop_front();
        const std::size_t from = first ? kStart : index(h, v);
        first = false;
        for (Color c = 0; c < g.k(); ++c)
          for (EdgeId e : g.in_edges(v, c)) {
            if (ss.act(h, e) != e) continue;
            const GroupElem h2 = ss.restriction(h, e);
            const VertexId v2 = g.edge(e).source;
            const std::size_t s2 = index(h2, v2);
            if (parent[s2].second >= 0) continue;
            parent[s2] = {from, e};
            if (h2 == G.identity()) {
              std::vector<EdgeId> word;
              for (std::size_t s = s2; s != kStart; s = parent[s].first) word.push_back(parent[s].second);
              std::reverse(word.begin(), word.end());
              return {false, start, g.from_edges(word)};
            }
            queue.emplace_back(h2, v2);
          }
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Cycline decision

bool cycline_check(const SelfSimilarKGraph& ss, const Path& mu, GroupElem g, const Path& nu) {
  const KGraph& G = ss.graph();
  if (mu.source() != nu.source() || mu.range() != nu.range()) return false;
  if (g == ss.group().identity() && mu == nu) return true;

  // Obligation (a, h, b): a (h·x) = b x for every x in s(b)Λ^∞.
  using Key = std::tuple<VertexId, std::vector<EdgeId>, GroupElem, std::vector<EdgeId>>;
  std::set<Key> seen;
  std::deque<std::tuple<Path, GroupElem, Path>> work;
  auto push = [&](Path a, GroupElem h, Path b) {
    if (seen.emplace(a.range(), a.edges(), h, b.edges()).second) work.emplace_back(std::move(a), h, std::move(b));
  };
  push(mu, g, nu);
  const Degree ones = Degree::uniform(static_cast<std::size_t>(G.k()), 1);
  while (!work.empty()) {
    auto [a, h, b] = std::move(work.front());
    work.pop_front();
    const Degree step = join(join(a.degree(), b.degree()), ones);
    const Degree ext = step - meet(a.degree(), b.degree());
    for (const Path& lambda : G.paths_of_degree(b.source(), ext)) {
      auto [left_head, left_tail] = G.factor(G.compose(a, ss.act(h, lambda)), step);
      auto [right_head, right_tail] = G.factor(G.compose(b, lambda), step);
      if (left_head != right_head) return false;
      push(std::move(left_tail), ss.restriction(h, lambda), std::move(right_tail));
    }
  }
  return true;
}

std::vector<CyclineTriple> cycline_triples_up_to(const SelfSimilarKGraph& ss, const Degree& bound) {
  const KGraph& G = ss.graph();
  std::vector<CyclineTriple> out;
  for (VertexId v = 0; v < static_cast<VertexId>(G.num_vertices()); ++v) {
    const auto paths = G.paths_up_to(v, bound);
    for (const Path& mu : paths)
      for (const Path& nu : paths) {
        if (mu.source() != nu.source()) continue;
        for (GroupElem g = 0; g < static_cast<GroupElem>(ss.group().order()); ++g)
          if (cycline_check(ss, mu, g, nu)) out.push_back({mu, g, nu});
      }
  }
  std::sort(out.begin(), out.end(), [](const CyclineTriple& x, const CyclineTriple& y) {
    if (auto c = x.mu <=> y.mu; c != 0) return c < 0;
    if (x.g != y.g) return x.g < y.g;
    return x.nu < y.nu;
  });
  return out;
}

std::vector<CyclineTriple> cycline_pairs_up_to(const SelfSimilarKGraph& ss, const Degree& bound) {
  auto all = cycline_triples_up_to(ss, bound);
  std::erase_if(all, [&](const CyclineTriple& t) { return t.g != ss.group().identity(); });
  return all;
}

TriplesReport verify_triples_are_pairs(const SelfSimilarKGraph& ss, const Degree& bound) {
  TriplesReport report{true, bound, std::nullopt};
  if (ss.trivial_group()) return report;
  for (auto& t : cycline_triples_up_to(ss, bound))
    if (t.g != ss.group().identity()) {
      report.pass = false;
      report.witness = std::move(t);
      break;
    }
  return report;
}

std::string triple_name(const SelfSimilarKGraph& ss, const CyclineTriple& t) {
  return "(" + ss.graph().path_name(t.mu) + ", " + ss.group().name(t.g) + ", " + ss.graph().path_name(t.nu) + ")";
}

}  // namespace sskg
