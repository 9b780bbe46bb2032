#include "sskg/tails.hpp"

#include <algorithm>
#include <map>

#include "sskg/error.hpp"

namespace sskg {

VertexSet vertex_set(std::size_t n, std::initializer_list<VertexId> ms) {
  VertexSet s(n, false);
  for (VertexId v : ms) s.at(static_cast<std::size_t>(v)) = true;
  return s;
}

std::vector<VertexId> members(const VertexSet& s) {
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < s.size(); ++v)
    if (s[v]) out.push_back(static_cast<VertexId>(v));
  return out;
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
  for (std::size_t v = 0; v < a.size(); ++v)
    if (a[v] && !b[v]) return false;
  return true;
}

std::string set_name(const KGraph& g, const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (VertexId v : members(s)) {
    if (!first) out += ",";
    out += g.vertex_name(v);
    first = false;
  }
  return out + "}";
}

bool is_hereditary(const KGraph& g, const VertexSet& h) {
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e)
    if (h[g.edge(e).range] && !h[g.edge(e).source]) return false;
  return true;
}

namespace {

bool saturates(const KGraph& g, const VertexSet& h, VertexId v) {
  for (Color c = 0; c < g.k(); ++c) {
    const auto& in = g.in_edges(v, c);
    if (std::all_of(in.begin(), in.end(), [&](EdgeId e) { return h[g.edge(e).source]; })) return true;
  }
  return false;
}

}  // namespace

bool is_saturated(const KGraph& g, const VertexSet& h) {
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v)
    if (!h[v] && saturates(g, h, v)) return false;
  return true;
}

VertexSet hereditary_saturated_closure(const KGraph& g, const VertexSet& a) {
  VertexSet h = a;
  bool changed = true;
  while (changed) {
    changed = false;
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
      const auto& spec = g.edge(e);
      if (h[spec.range] && !h[spec.source]) {
        h[spec.source] = true;
        changed = true;
      }
    }
    for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v)
      if (!h[v] && saturates(g, h, v)) {
        h[v] = true;
        changed = true;
      }
  }
  return h;
}

bool is_maximal_tail(const KGraph& g, const VertexSet& t) {
  const auto n = static_cast<VertexId>(g.num_vertices());
  const auto& reach = g.reachability();
  if (std::none_of(t.begin(), t.end(), [](bool b) { return b; })) return false;
  for (VertexId w = 0; w < n; ++w) {
    if (!t[w]) continue;
    for (VertexId v = 0; v < n; ++v)
      if (reach[v][w] && !t[v]) return false;
    for (Color c = 0; c < g.k(); ++c) {
      const auto& in = g.in_edges(w, c);
      if (std::none_of(in.begin(), in.end(), [&](EdgeId e) { return t[g.edge(e).source]; })) return false;
    }
  }
  for (VertexId v = 0; v < n; ++v)
    for (VertexId w = v + 1; w < n; ++w) {
      if (!t[v] || !t[w]) continue;
      bool meet = false;
      for (VertexId y = 0; y < n && !meet; ++y) meet = t[y] && reach[v][y] && reach[w][y];
      if (!meet) return false;
    }
  return true;
}

std::vector<VertexSet> maximal_tails(const KGraph& g, std::size_t max_vertices) {
  const std::size_t n = g.num_vertices();
  if (n > max_vertices)
    throw Error(ErrorKind::TooManyVertices, std::to_string(n) + " vertices exceed the subset enumeration limit of " +
                                                std::to_string(max_vertices));
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet t(n);
    for (std::size_t v = 0; v < n; ++v) t[v] = (mask >> v) & 1;
    if (is_maximal_tail(g, t)) out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
    const auto ca = std::count(a.begin(), a.end(), true);
    const auto cb = std::count(b.begin(), b.end(), true);
    if (ca != cb) return ca > cb;
    return members(a) < members(b);
  });
  return out;
}

bool strongly_connected(const KGraph& g, const VertexSet& h) {
  const auto ms = members(h);
  for (VertexId v : ms)
    for (VertexId w : ms)
      if (!g.has_path(v, w)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Restriction

Path Restriction::lift(const KGraph& parent, const Path& p) const {
  if (p.is_vertex()) return parent.vertex(vertex_to_parent[p.range()]);
  std::vector<EdgeId> word;
  for (EdgeId e : p.edges()) word.push_back(edge_to_parent[e]);
  return parent.from_edges(word);
}

CyclineTriple Restriction::lift(const KGraph& parent, const CyclineTriple& t) const {
  return {lift(parent, t.mu), t.g, lift(parent, t.nu)};
}

Restriction restrict_to(const SelfSimilarKGraph& ss, const VertexSet& subset) {
  const KGraph& g = ss.graph();
  Restriction r{ss, {}, {}, std::vector<VertexId>(g.num_vertices(), -1),
                std::vector<EdgeId>(g.num_edges(), -1)};
  Skeleton sk;
  sk.k = g.k();
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v)
    if (subset[v]) {
      r.vertex_from_parent[v] = static_cast<VertexId>(sk.vertices.size());
      r.vertex_to_parent.push_back(v);
      sk.vertices.push_back(g.vertex_name(v));
    }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    const EdgeSpec& spec = g.edge(e);
    if (!subset[spec.source] || !subset[spec.range]) continue;
    r.edge_from_parent[e] = static_cast<EdgeId>(sk.edges.size());
    r.edge_to_parent.push_back(e);
    sk.edges.push_back({spec.name, spec.color, r.vertex_from_parent[spec.range], r.vertex_from_parent[spec.source]});
  }
  std::vector<Square> squares;
  for (const Square& sq : g.squares()) {
    const int kept = (r.edge_from_parent[sq.e] >= 0) + (r.edge_from_parent[sq.f] >= 0) +
                     (r.edge_from_parent[sq.f2] >= 0) + (r.edge_from_parent[sq.e2] >= 0);
    if (kept == 0) continue;
    const bool lhs = r.edge_from_parent[sq.e] >= 0 && r.edge_from_parent[sq.f] >= 0;
    const bool rhs = r.edge_from_parent[sq.f2] >= 0 && r.edge_from_parent[sq.e2] >= 0;
    if (lhs != rhs)
      throw Error(ErrorKind::Malformed, "subset " + set_name(g, subset) + " is not closed under factorization");
    if (lhs)
      squares.push_back({r.edge_from_parent[sq.e], r.edge_from_parent[sq.f], r.edge_from_parent[sq.f2],
                         r.edge_from_parent[sq.e2]});
  }
  KGraph sub = validate_kgraph(std::move(sk), std::move(squares));

  ActionTable t;
  const auto ng = ss.group().order();
  t.act.assign(ng, {});
  t.restriction.assign(ng, {});
  for (GroupElem h = 0; h < static_cast<GroupElem>(ng); ++h)
    for (EdgeId e : r.edge_to_parent) {
      t.act[h].push_back(r.edge_from_parent[ss.act(h, e)]);
      t.restriction[h].push_back(ss.restriction(h, e));
    }
  r.graph = validate_action(std::move(sub), ss.group(), std::move(t));
  return r;
}

// ---------------------------------------------------------------------------
// Classification

std::string to_string(TailClass c) {
  switch (c) {
    case TailClass::Gamma: return "gamma";
    case TailClass::Tau: return "tau";
    case TailClass::GammaUpToBound: return "gamma-up-to-bound";
  }
  return {};
}

VertexSet cycle_without_entrances(const KGraph& g, const VertexSet& t) {
  const auto n = static_cast<VertexId>(g.num_vertices());
  // Unique in-edge from inside T, or -1.
  std::vector<EdgeId> sole(n, -1);
  for (VertexId v = 0; v < n; ++v) {
    if (!t[v]) continue;
    int count = 0;
    for (EdgeId e : g.in_edges(v, 0))
      if (t[g.edge(e).source]) {
        ++count;
        sole[v] = e;
      }
    if (count != 1) sole[v] = -1;
  }
  VertexSet out(n, false);
  for (VertexId v = 0; v < n; ++v) {
    if (sole[v] < 0) continue;
    VertexId at = v;
    for (VertexId step = 0; step < n; ++step) {
      at = g.edge(sole[at]).source;
      if (sole[at] < 0 || at == v) break;
    }
    if (at == v) out[v] = true;
  }
  return out;
}

VertexSet bounded_h(const Restriction& rt, const PerLattice& per, const Degree& bound) {
  const SelfSimilarKGraph& ss = rt.graph;
  const KGraph& g = ss.graph();
  const std::vector<Degree> degrees = degrees_up_to(bound);

  VertexSet h(g.num_vertices(), false);
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    std::map<Degree, std::vector<Path>> by_degree;
    for (const Degree& p : degrees) by_degree[p] = g.paths_of_degree(v, p);
    bool ok = true;
    for (const Degree& p : degrees) {
      for (const Degree& q : degrees) {
        if (!per.contains(difference(p, q))) continue;
        for (const Path& mu : by_degree[p]) {
          int partners = 0;
          for (const Path& nu : by_degree[q])
            if (cycline_check(ss, mu, ss.group().identity(), nu)) ++partners;
          if (partners != 1) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (!ok) break;
    }
    h[v] = ok;
  }
  return h;
}

TailAnalysis analyze_tail(const SelfSimilarKGraph& ss, const VertexSet& t, const Degree& bound,
                          bool allow_empty) {
  const KGraph& g = ss.graph();
  TailAnalysis a;
  a.tail = t;
  a.bound = bound;
  const auto k = static_cast<std::size_t>(g.k());

  if (k == 1) {
    a.exact = true;
    a.h_exact = true;
    const VertexSet cycle = cycle_without_entrances(g, t);
    const auto cyc = members(cycle);
    if (cyc.empty()) {
      a.cls = TailClass::Gamma;
      a.per = PerLattice::from_generators(1, {});
      a.h = t;
    } else {
      a.cls = TailClass::Tau;
      a.per = PerLattice::from_generators(1, {ZVector{static_cast<std::int64_t>(cyc.size())}});
      const VertexId c = cyc.front();
      std::vector<EdgeId> word;
      VertexId at = c;
      do {
        for (EdgeId e : g.in_edges(at, 0))
          if (t[g.edge(e).source]) {
            word.push_back(e);
            at = g.edge(e).source;
            break;
          }
      } while (at != c);
      a.witness = CyclineTriple{g.from_edges(word), ss.group().identity(), g.vertex(c)};
      a.h = cycle;
    }
    return a;
  }

  const Restriction rt = restrict_to(ss, t);
  std::vector<ZVector> diffs;
  for (const auto& pair : cycline_pairs_up_to(rt.graph, bound)) {
    if (pair.mu.degree() == pair.nu.degree()) continue;
    if (!a.witness) a.witness = rt.lift(g, pair);
    diffs.push_back(difference(pair.mu.degree(), pair.nu.degree()));
  }
  a.per = PerLattice::from_generators(k, std::move(diffs));
  a.cls = a.per.is_zero() ? TailClass::GammaUpToBound : TailClass::Tau;
  a.exact = a.cls == TailClass::Tau;

  const VertexSet hs = bounded_h(rt, a.per, bound);
  a.h.assign(g.num_vertices(), false);
  for (VertexId v = 0; v < static_cast<VertexId>(hs.size()); ++v)
    if (hs[v]) a.h[rt.vertex_to_parent[v]] = true;
  if (!allow_empty && std::none_of(a.h.begin(), a.h.end(), [](bool b) { return b; }))
    throw Error(ErrorKind::EmptyResult, "H_T for tail " + set_name(g, t) + " is empty up to bound " +
                                            bound.to_string() + "; inconclusive");
  a.h_hereditary = is_hereditary(rt.graph.graph(), hs);
  return a;
}

}  // namespace sskg
