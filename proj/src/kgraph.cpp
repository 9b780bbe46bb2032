#include "sskg/kgraph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "sskg/error.hpp"

namespace sskg {

// ---------------------------------------------------------------------------
// Degree

Degree Degree::unit(std::size_t k, Color i) {
  Degree d(k);
  d.c_[i] = 1;
  return d;
}

Degree Degree::uniform(std::size_t k, int value) {
  return Degree(std::vector<int>(k, value));
}

int Degree::total() const {
  int t = 0;
  for (int x : c_) t += x;
  return t;
}

bool Degree::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](int x) { return x == 0; });
}

bool Degree::all_positive() const {
  return std::all_of(c_.begin(), c_.end(), [](int x) { return x > 0; });
}

Degree& Degree::operator+=(const Degree& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Degree& Degree::operator-=(const Degree& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Degree& Degree::operator*=(int s) {
  for (int& x : c_) x *= s;
  return *this;
}

std::string Degree::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c_[i]);
  }
  return out + ")";
}

bool leq(const Degree& a, const Degree& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Degree join(const Degree& a, const Degree& b) {
  Degree out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

Degree meet(const Degree& a, const Degree& b) {
  Degree out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::min(a[i], b[i]);
  return out;
}

ZVector difference(const Degree& a, const Degree& b) {
  ZVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::int64_t{a[i]} - b[i];
  return out;
}

// ---------------------------------------------------------------------------
// Path

std::vector<Degree> degrees_up_to(const Degree& bound) {
  std::vector<Degree> out;
  Degree q(bound.size());
  while (true) {
    out.push_back(q);
    std::size_t i = q.size();
    while (i > 0 && q[i - 1] == bound[i - 1]) q[--i] = 0;
    if (i == 0) break;
    ++q[i - 1];
  }
  return out;
}

std::strong_ordering operator<=>(const Path& a, const Path& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  if (auto c = a.edges_ <=> b.edges_; c != 0) return c;
  return a.range_ <=> b.range_;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string pair_label(const Skeleton& s, EdgeId a, EdgeId b) {
  return "(" + s.edges[a].name + "," + s.edges[b].name + ")";
}

}  // namespace

KGraph validate_kgraph(Skeleton skeleton, std::vector<Square> squares) {
  const int k = skeleton.k;
  if (k < 1) throw Error(ErrorKind::Malformed, "k must be positive");
  const auto nv = static_cast<VertexId>(skeleton.vertices.size());
  const auto ne = static_cast<EdgeId>(skeleton.edges.size());
  if (nv == 0) throw Error(ErrorKind::Malformed, "graph has no vertices");
  for (const auto& e : skeleton.edges) {
    if (e.color < 0 || e.color >= k)
      throw Error(ErrorKind::Malformed, "edge " + e.name + " has color outside 1.." + std::to_string(k));
    if (e.range < 0 || e.range >= nv || e.source < 0 || e.source >= nv)
      throw Error(ErrorKind::Malformed, "edge " + e.name + " has an unknown endpoint");
  }

  KGraph g;
  g.k_ = k;
  g.vertex_names_ = skeleton.vertices;
  g.edges_ = skeleton.edges;
  g.in_edges_.assign(static_cast<std::size_t>(nv) * k, {});
  g.out_edges_.assign(static_cast<std::size_t>(nv) * k, {});
  for (EdgeId e = 0; e < ne; ++e) {
    const auto& spec = skeleton.edges[e];
    g.in_edges_[static_cast<std::size_t>(spec.range) * k + spec.color].push_back(e);
    g.out_edges_[static_cast<std::size_t>(spec.source) * k + spec.color].push_back(e);
  }
  for (VertexId v = 0; v < nv; ++v)
    for (Color c = 0; c < k; ++c)
      if (g.in_edges(v, c).empty())
        throw Error(ErrorKind::NotSourceFree, "vertex " + skeleton.vertices[v] +
                                                  " receives no edge of color " +
                                                  std::to_string(c + 1));

  const auto& E = skeleton.edges;
  const std::pair<EdgeId, EdgeId> none{-1, -1};
  g.forward_.assign(static_cast<std::size_t>(ne) * ne, none);
  g.backward_.assign(static_cast<std::size_t>(ne) * ne, none);
  for (const auto& sq : squares) {
    for (EdgeId id : {sq.e, sq.f, sq.f2, sq.e2})
      if (id < 0 || id >= ne) throw Error(ErrorKind::Malformed, "square references unknown edge");
    const std::string label = pair_label(skeleton, sq.e, sq.f);
    if (!(E[sq.e].color < E[sq.f].color) || E[sq.e].source != E[sq.f].range)
      throw Error(ErrorKind::SquareNotBijective,
                  "square " + label + " is not defined on a composable ascending-color pair");
    const bool image_ok = E[sq.f2].color == E[sq.f].color && E[sq.e2].color == E[sq.e].color &&
                          E[sq.f2].source == E[sq.e2].range && E[sq.f2].range == E[sq.e].range &&
                          E[sq.e2].source == E[sq.f].source;
    if (!image_ok)
      throw Error(ErrorKind::SquareNotBijective,
                  "square " + label + " maps to " + pair_label(skeleton, sq.f2, sq.e2) +
                      ", which is not a composable pair with the same endpoints");
    auto& fwd = g.forward_[g.pair_index(sq.e, sq.f)];
    if (fwd != none)
      throw Error(ErrorKind::SquareNotBijective, "square " + label + " defined twice");
    auto& bwd = g.backward_[g.pair_index(sq.f2, sq.e2)];
    if (bwd != none)
      throw Error(ErrorKind::SquareNotBijective,
                  "pair " + pair_label(skeleton, sq.f2, sq.e2) + " is the image of two squares");
    fwd = {sq.f2, sq.e2};
    bwd = {sq.e, sq.f};
  }
  for (EdgeId a = 0; a < ne; ++a)
    for (EdgeId b = 0; b < ne; ++b) {
      if (E[a].source != E[b].range || E[a].color == E[b].color) continue;
      if (E[a].color < E[b].color && g.forward_[g.pair_index(a, b)] == none)
        throw Error(ErrorKind::MissingSquare, "no square for composable pair " + pair_label(skeleton, a, b));
      if (E[a].color > E[b].color && g.backward_[g.pair_index(a, b)] == none)
        throw Error(ErrorKind::SquareNotBijective,
                    "pair " + pair_label(skeleton, a, b) + " is not the image of any square");
    }

  if (k >= 3) {
    // Three-colored words e f h with colors i < j < l must reach the same
    // reversed word along both reduced braid routes.
    for (EdgeId e = 0; e < ne; ++e)
      for (EdgeId f = 0; f < ne; ++f) {
        if (E[e].source != E[f].range || E[e].color >= E[f].color) continue;
        for (EdgeId h = 0; h < ne; ++h) {
          if (E[f].source != E[h].range || E[f].color >= E[h].color) continue;
          // Route A: swap(1,2), swap(2,3), swap(1,2).
          auto [a1, a2] = g.swap(e, f);
          auto [a3, a4] = g.swap(a2, h);
          auto [a5, a6] = g.swap(a1, a3);
          // Route B: swap(2,3), swap(1,2), swap(2,3).
          auto [b2, b3] = g.swap(f, h);
          auto [b1, b4] = g.swap(e, b2);
          auto [b5, b6] = g.swap(b4, b3);
          if (a5 != b1 || a6 != b5 || a4 != b6)
            throw Error(ErrorKind::CubeConditionFailed,
                        "cube condition fails on (" + E[e].name + "," + E[f].name + "," + E[h].name + ")");
        }
      }
  }

  g.reach_.assign(nv, std::vector<bool>(nv, false));
  for (VertexId w = 0; w < nv; ++w) {
    // Paths out of w travel from sources to ranges.
    std::deque<VertexId> queue{w};
    g.reach_[w][w] = true;
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop_front();
      for (EdgeId e = 0; e < ne; ++e)
        if (E[e].source == u && !g.reach_[E[e].range][w]) {
          g.reach_[E[e].range][w] = true;
          queue.push_back(E[e].range);
        }
    }
  }
  g.squares_ = std::move(squares);
  g.skeleton_ = std::move(skeleton);
  return g;
}

// ---------------------------------------------------------------------------
// Finite paths

std::pair<EdgeId, EdgeId> KGraph::swap(EdgeId a, EdgeId b) const {
  if (color(a) < color(b)) return forward_[pair_index(a, b)];
  return backward_[pair_index(a, b)];
}

Path KGraph::make(VertexId range, std::vector<EdgeId> normal) const {
  Degree d(static_cast<std::size_t>(k_));
  for (EdgeId e : normal) d[color(e)] += 1;
  VertexId source = normal.empty() ? range : edges_[normal.back()].source;
  return Path(range, source, std::move(normal), std::move(d));
}

std::vector<EdgeId> KGraph::normalize(std::vector<EdgeId> word) const {
  for (std::size_t i = 1; i < word.size(); ++i)
    for (std::size_t j = i; j > 0 && color(word[j - 1]) > color(word[j]); --j) {
      auto [lo, hi] = swap(word[j - 1], word[j]);
      word[j - 1] = lo;
      word[j] = hi;
    }
  return word;
}

Path KGraph::vertex(VertexId v) const { return make(v, {}); }

Path KGraph::edge_path(EdgeId e) const { return make(edges_[e].range, {e}); }

Path KGraph::from_edges(std::span<const EdgeId> word) const {
  if (word.empty()) throw Error(ErrorKind::Malformed, "empty edge word has no range");
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (edges_[word[i]].source != edges_[word[i + 1]].range)
      throw Error(ErrorKind::NotComposable,
                  "edges " + edges_[word[i]].name + " and " + edges_[word[i + 1]].name + " do not compose");
  VertexId range = edges_[word.front()].range;
  return make(range, normalize({word.begin(), word.end()}));
}

Path KGraph::compose(const Path& mu, const Path& nu) const {
  if (mu.source() != nu.range())
    throw Error(ErrorKind::NotComposable,
                "cannot compose " + path_name(mu) + " with " + path_name(nu));
  if (mu.is_vertex()) return nu;
  if (nu.is_vertex()) return mu;
  std::vector<EdgeId> word = mu.edges();
  word.insert(word.end(), nu.edges().begin(), nu.edges().end());
  return make(mu.range(), normalize(std::move(word)));
}

std::vector<EdgeId> KGraph::rearrange(std::vector<EdgeId> word,
                                      std::span<const Color> target) const {
  for (std::size_t i = 0; i < word.size(); ++i) {
    std::size_t j = i;
    while (color(word[j]) != target[i]) ++j;
    for (; j > i; --j) {
      auto [lo, hi] = swap(word[j - 1], word[j]);
      word[j - 1] = lo;
      word[j] = hi;
    }
  }
  return word;
}

std::pair<Path, Path> KGraph::factor(const Path& mu, const Degree& p) const {
  const Degree rest = mu.degree() - p;
  std::vector<Color> target;
  target.reserve(mu.length());
  for (const Degree* part : {&p, &rest})
    for (Color c = 0; c < k_; ++c) target.insert(target.end(), (*part)[c], c);
  auto word = rearrange(mu.edges(), target);
  const auto cut = word.begin() + p.total();
  Path alpha = make(mu.range(), {word.begin(), cut});
  Path beta = make(alpha.source(), {cut, word.end()});
  return {std::move(alpha), std::move(beta)};
}

Path KGraph::segment(const Path& mu, const Degree& p, const Degree& q) const {
  return factor(factor(mu, q).first, p).second;
}

std::vector<Path> KGraph::paths_of_degree(VertexId v, const Degree& p) const {
  std::vector<Path> out;
  std::vector<EdgeId> word;
  std::vector<Color> colors;
  for (Color c = 0; c < k_; ++c) colors.insert(colors.end(), p[c], c);
  auto rec = [&](auto&& self, VertexId at) -> void {
    if (word.size() == colors.size()) {
      out.push_back(make(v, word));
      return;
    }
    for (EdgeId e : in_edges(at, colors[word.size()])) {
      word.push_back(e);
      self(self, edges_[e].source);
      word.pop_back();
    }
  };
  rec(rec, v);
  return out;
}

std::vector<Path> KGraph::paths_up_to(VertexId v, const Degree& bound) const {
  std::vector<Path> out;
  for (const Degree& q : degrees_up_to(bound)) {
    auto layer = paths_of_degree(v, q);
    out.insert(out.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string KGraph::path_name(const Path& p) const {
  if (p.is_vertex()) return vertex_names_[p.range()];
  std::string out;
  for (EdgeId e : p.edges()) {
    if (!out.empty()) out += ' ';
    out += edges_[e].name;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Infinite paths

Path KGraph::materialize(const InfinitePath& x, const Degree& at_least) const {
  Path out = x.prefix;
  while (!leq(at_least, out.degree())) out = compose(out, x.block);
  return out;
}

Path KGraph::segment(const InfinitePath& x, const Degree& p, const Degree& q) const {
  return segment(materialize(x, q), p, q);
}

InfinitePath KGraph::shift(const InfinitePath& x, const Degree& n) const {
  const Degree& L = x.prefix.degree();
  Degree rest(static_cast<std::size_t>(k_));
  for (int i = 0; i < k_; ++i) rest[i] = std::max(L[i] - n[i], 0);
  const Degree start = n + rest;
  const Path window = materialize(x, start + x.block.degree());
  return {segment(window, n, start), segment(window, start, start + x.block.degree())};
}

InfinitePath KGraph::prepend(const Path& mu, const InfinitePath& x) const {
  return {compose(mu, x.prefix), x.block};
}

bool KGraph::equal(const InfinitePath& x, const InfinitePath& y) const {
  if (x.prefix.range() != y.prefix.range()) return false;
  // Two paths agree iff every grid edge x(m, m + e_i) agrees. The pairs of
  // shifts (σ^m x, σ^m y) range over a finite set of representations since
  // shifting never lengthens a prefix.
  auto key = [](const InfinitePath& a, const InfinitePath& b) {
    std::vector<EdgeId> out;
    for (const InfinitePath* z : {&a, &b}) {
      out.push_back(z->prefix.range());
      out.push_back(static_cast<EdgeId>(z->prefix.length()));
      out.insert(out.end(), z->prefix.edges().begin(), z->prefix.edges().end());
      out.push_back(-1);
      out.insert(out.end(), z->block.edges().begin(), z->block.edges().end());
      out.push_back(-2);
    }
    return out;
  };
  std::set<std::vector<EdgeId>> seen{key(x, y)};
  std::deque<std::pair<InfinitePath, InfinitePath>> queue{{x, y}};
  while (!queue.empty()) {
    auto [a, b] = std::move(queue.front());
    queue.pop_front();
    for (Color c = 0; c < k_; ++c) {
      const Degree unit = Degree::unit(k_, c);
      if (factor(materialize(a, unit), unit).first != factor(materialize(b, unit), unit).first)
        return false;
      InfinitePath a2 = shift(a, unit);
      InfinitePath b2 = shift(b, unit);
      if (seen.insert(key(a2, b2)).second) queue.emplace_back(std::move(a2), std::move(b2));
    }
  }
  return true;
}

InfinitePath KGraph::compact(const InfinitePath& x) const {
  InfinitePath best = x;
  bool changed = true;
  while (changed) {
    changed = false;
    const Degree& L = best.prefix.degree();
    for (Color c = 0; c < k_ && !changed; ++c) {
      if (L[c] == 0) continue;
      const Degree shorter = L - Degree::unit(k_, c);
      const Degree D = best.block.degree();
      InfinitePath cand{segment(best, Degree(static_cast<std::size_t>(k_)), shorter),
                        segment(best, shorter, shorter + D)};
      if (cand.block.range() == cand.block.source() && equal(cand, best)) {
        best = std::move(cand);
        changed = true;
      }
    }
  }
  // Shortest block of the form block(0, D/m).
  const Degree D = best.block.degree();
  int g = 0;
  for (int i = 0; i < k_; ++i) g = std::gcd(g, D[i]);
  for (int m = g; m > 1; --m) {
    if (g % m) continue;
    Degree part = D;
    for (int i = 0; i < k_; ++i) part[i] /= m;
    const Degree& L = best.prefix.degree();
    InfinitePath cand{best.prefix, segment(best, L, L + part)};
    if (cand.block.range() == cand.block.source() && equal(cand, best)) return cand;
  }
  return best;
}

std::string KGraph::path_name(const InfinitePath& x) const {
  std::string out = x.prefix.is_vertex() ? "" : path_name(x.prefix) + " ";
  return out + "(" + path_name(x.block) + ")^inf";
}

// ---------------------------------------------------------------------------

InfinitePath cofinal_infinite_path(const KGraph& g, const std::vector<bool>& tail) {
  const auto n = static_cast<VertexId>(g.num_vertices());
  VertexId base = -1;
  for (VertexId w = 0; w < n && base < 0; ++w) {
    if (!tail[w]) continue;
    bool below_all = true;
    for (VertexId v = 0; v < n; ++v)
      if (tail[v] && !g.has_path(v, w)) below_all = false;
    if (below_all) base = w;
  }
  if (base < 0)
    throw Error(ErrorKind::ConstructionFailed, "tail has no vertex reachable from every tail vertex");

  const Degree ones = Degree::uniform(static_cast<std::size_t>(g.k()), 1);
  std::vector<Path> steps;
  std::vector<int> first_visit(n, -1);
  VertexId at = base;
  while (first_visit[at] < 0) {
    first_visit[at] = static_cast<int>(steps.size());
    bool found = false;
    for (auto& p : g.paths_of_degree(at, ones))
      if (tail[p.source()]) {
        at = p.source();
        steps.push_back(std::move(p));
        found = true;
        break;
      }
    if (!found)
      throw Error(ErrorKind::ConstructionFailed,
                  "vertex " + g.vertex_name(at) + " has no unit-degree path into the tail");
  }
  const auto cycle_start = static_cast<std::size_t>(first_visit[at]);
  Path prefix = g.vertex(base);
  for (std::size_t i = 0; i < cycle_start; ++i) prefix = g.compose(prefix, steps[i]);
  Path block = g.vertex(at);
  for (std::size_t i = cycle_start; i < steps.size(); ++i) block = g.compose(block, steps[i]);
  InfinitePath x{std::move(prefix), std::move(block)};

  for (VertexId v = 0; v < n; ++v)
    if (tail[v] && !g.has_path(v, x.prefix.range()))
      throw Error(ErrorKind::ConstructionFailed, "constructed path is not cofinal");
  return x;
}

}  // namespace sskg
