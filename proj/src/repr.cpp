#include "sskg/repr.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "sskg/error.hpp"

namespace sskg {

namespace {

ZVector to_z(const Degree& d) {
  ZVector out;
  for (std::size_t i = 0; i < d.size(); ++i) out.push_back(d[i]);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Orbit

std::vector<EdgeId> OrbitBasis::bucket_key(const KGraph& g, const InfinitePath& y) const {
  const Path window = g.segment(y, Degree(key_degree_.size()), key_degree_);
  std::vector<EdgeId> key{window.range()};
  key.insert(key.end(), window.edges().begin(), window.edges().end());
  return key;
}

std::size_t OrbitBasis::find(const KGraph& g, const InfinitePath& y) const {
  const auto it = buckets_.find(bucket_key(g, y));
  if (it == buckets_.end()) return npos;
  for (std::size_t i : it->second)
    if (g.equal(elements_[i].y, y)) return i;
  return npos;
}

OrbitBasis build_orbit(const SelfSimilarKGraph& ss, const InfinitePath& x, int depth, std::size_t budget) {
  const KGraph& g = ss.graph();
  const FiniteGroup& G = ss.group();
  const auto k = static_cast<std::size_t>(g.k());
  OrbitBasis b;
  b.max_depth_ = depth;
  b.key_degree_ = Degree::uniform(k, 2);

  auto add = [&](InfinitePath y, int d, Degree p, Degree q, GroupElem h) {
    if (b.find(g, y) != OrbitBasis::npos) return;
    if (b.elements_.size() >= budget)
      throw Error(ErrorKind::BudgetExceeded, "orbit truncation exceeds " + std::to_string(budget) + " elements");
    b.buckets_[b.bucket_key(g, y)].push_back(b.elements_.size());
    b.elements_.push_back({std::move(y), d, std::move(p), std::move(q), h});
  };
  add(g.compact(x), 0, Degree(k), Degree(k), G.identity());

  for (std::size_t i = 0; i < b.elements_.size(); ++i) {
    const OrbitElement cur = b.elements_[i];
    if (cur.depth >= depth) continue;
    const int d = cur.depth + 1;
    const VertexId r = cur.y.prefix.range();
    for (Color c = 0; c < g.k(); ++c) {
      const Degree unit = Degree::unit(k, c);
      for (EdgeId e : g.out_edges(r, c))
        add(g.compact(g.prepend(g.edge_path(e), cur.y)), d, cur.p, cur.q + unit, cur.g);
      const Path step = g.segment(cur.y, cur.q, cur.q + unit);
      add(g.compact(g.shift(cur.y, unit)), d, cur.p + unit, cur.q, ss.restriction(cur.g, step));
    }
    const Path head = g.segment(cur.y, Degree(k), cur.q);
    for (GroupElem h = 0; h < static_cast<GroupElem>(G.order()); ++h) {
      if (h == G.identity()) continue;
      add(ss.act(h, cur.y), d, cur.p, cur.q, G.mul(cur.g, G.inverse(ss.restriction(h, head))));
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// Matrices

bool ExactMatrix::is_zero() const {
  return std::none_of(columns.begin(), columns.end(), [](const auto& c) { return c.has_value(); });
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out;
  out.columns.resize(b.columns.size());
  for (std::size_t j = 0; j < b.columns.size(); ++j) {
    const auto& col = b.columns[j];
    if (!col) continue;
    if (col->row == ExactMatrix::outside) {
      out.columns[j] = col;
      continue;
    }
    const auto& next = a.columns[col->row];
    if (next) out.columns[j] = MatrixEntry{next->row, next->angle + col->angle};
  }
  return out;
}

ExactMatrix identity_matrix(std::size_t n) {
  ExactMatrix out;
  for (std::size_t j = 0; j < n; ++j) out.columns.push_back(MatrixEntry{j, Angle()});
  return out;
}

ExactMatrix represent_s(const SelfSimilarKGraph& ss, const OrbitBasis& b, const Path& mu,
                        const ExtendedCharacter& ft) {
  const KGraph& g = ss.graph();
  const Angle phase = evaluate(ft, to_z(mu.degree()));
  ExactMatrix out;
  out.columns.resize(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    const InfinitePath& y = b[j].y;
    if (y.prefix.range() != mu.source()) continue;
    out.columns[j] = MatrixEntry{b.find(g, g.prepend(mu, y)), phase};
  }
  return out;
}

ExactMatrix represent_s_adjoint(const SelfSimilarKGraph& ss, const OrbitBasis& b, const Path& mu,
                                const ExtendedCharacter& ft) {
  const KGraph& g = ss.graph();
  const Angle phase = -evaluate(ft, to_z(mu.degree()));
  const Degree zero(mu.degree().size());
  ExactMatrix out;
  out.columns.resize(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    const InfinitePath& y = b[j].y;
    if (g.segment(y, zero, mu.degree()) != mu) continue;
    out.columns[j] = MatrixEntry{b.find(g, g.shift(y, mu.degree())), phase};
  }
  return out;
}

ExactMatrix represent_u(const SelfSimilarKGraph& ss, const OrbitBasis& b, GroupElem h) {
  ExactMatrix out;
  out.columns.resize(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) out.columns[j] = MatrixEntry{b.find(ss.graph(), ss.act(h, b[j].y)), Angle()};
  return out;
}

SparseVector SparseVector::basis(std::size_t i) {
  SparseVector v;
  v.add(i, Angle(), 1);
  return v;
}

void SparseVector::add(std::size_t row, const Angle& a, std::int64_t n) {
  Coefficient& c = entries[row];
  if ((c[a] += n) == 0) c.erase(a);
  if (c.empty()) entries.erase(row);
}

SparseVector& SparseVector::operator+=(const SparseVector& o) {
  escaped |= o.escaped;
  for (const auto& [row, coef] : o.entries)
    for (const auto& [a, n] : coef) add(row, a, n);
  return *this;
}

SparseVector SparseVector::scaled(const Angle& a, std::int64_t n) const {
  SparseVector out;
  out.escaped = escaped;
  for (const auto& [row, coef] : entries)
    for (const auto& [b, m] : coef) out.add(row, a + b, n * m);
  return out;
}

SparseVector apply(const ExactMatrix& m, const SparseVector& v) {
  SparseVector out;
  out.escaped = v.escaped;
  for (const auto& [j, coef] : v.entries) {
    const auto& col = m.columns[j];
    if (!col) continue;
    if (col->row == ExactMatrix::outside) {
      out.escaped = true;
      continue;
    }
    for (const auto& [a, n] : coef) out.add(col->row, a + col->angle, n);
  }
  return out;
}

bool RelationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.violations == 0; });
}

// ---------------------------------------------------------------------------
// Relation checks

namespace {

using Ops = std::vector<const ExactMatrix*>;

// Applies ops in order (first element acts first).
SparseVector run(const Ops& ops, std::size_t j) {
  SparseVector v = SparseVector::basis(j);
  for (const ExactMatrix* m : ops) v = apply(*m, v);
  return v;
}

struct Checker {
  Checker(const KGraph& graph, const OrbitBasis& basis, std::string name) : g(graph), b(basis) {
    check.name = std::move(name);
  }

  const KGraph& g;
  const OrbitBasis& b;
  RelationCheck check;

  void instance(const std::string& what, int radius, const std::function<bool(std::size_t)>& holds,
                const std::function<bool(std::size_t)>& applies = nullptr) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (applies && !applies(j)) continue;
      if (!b.interior(j, radius)) {
        ++check.excluded;
        continue;
      }
      ++check.checked;
      if (!holds(j) && check.violations++ == 0)
        check.first_violation = what + " at " + g.path_name(b[j].y);
    }
  }
};

bool same(const SparseVector& a, const SparseVector& b) { return !a.escaped && !b.escaped && a == b; }

}  // namespace

RelationReport check_relations(const SelfSimilarKGraph& ss, const OrbitBasis& b, const ExtendedCharacter& ft,
                               const Degree& paths) {
  const KGraph& g = ss.graph();
  const FiniteGroup& G = ss.group();
  const auto k = static_cast<std::size_t>(g.k());
  const auto nv = static_cast<VertexId>(g.num_vertices());
  RelationReport report;
  report.basis_size = b.size();
  report.depth = b.max_depth();

  std::vector<Path> P;
  for (VertexId v = 0; v < nv; ++v) {
    auto ps = g.paths_up_to(v, paths);
    P.insert(P.end(), ps.begin(), ps.end());
  }
  std::map<Path, ExactMatrix> S;
  std::map<Path, ExactMatrix> Sstar;
  auto s_of = [&](const Path& mu) -> const ExactMatrix& {
    auto it = S.find(mu);
    if (it == S.end()) it = S.emplace(mu, represent_s(ss, b, mu, ft)).first;
    return it->second;
  };
  auto sstar_of = [&](const Path& mu) -> const ExactMatrix& {
    auto it = Sstar.find(mu);
    if (it == Sstar.end()) it = Sstar.emplace(mu, represent_s_adjoint(ss, b, mu, ft)).first;
    return it->second;
  };
  std::vector<ExactMatrix> U;
  for (GroupElem h = 0; h < static_cast<GroupElem>(G.order()); ++h) U.push_back(represent_u(ss, b, h));

  {
    Checker c(g, b, "s_v s_w = delta_vw s_v");
    for (VertexId v = 0; v < nv; ++v)
      for (VertexId w = 0; w < nv; ++w) {
        const ExactMatrix& sv = s_of(g.vertex(v));
        const ExactMatrix& sw = s_of(g.vertex(w));
        c.instance(g.vertex_name(v) + "," + g.vertex_name(w), 0, [&](std::size_t j) {
          const SparseVector lhs = run({&sw, &sv}, j);
          return same(lhs, v == w ? run({&sv}, j) : SparseVector{});
        });
      }
    report.checks.push_back(std::move(c.check));
  }
  {
    Checker c(g, b, "s_mu s_nu = s_(mu nu)");
    for (const Path& mu : P)
      for (const Path& nu : P) {
        if (mu.source() != nu.range()) continue;
        const Path munu = g.compose(mu, nu);
        c.instance(g.path_name(mu) + "," + g.path_name(nu), mu.degree().total() + nu.degree().total(),
                   [&](std::size_t j) { return same(run({&s_of(nu), &s_of(mu)}, j), run({&s_of(munu)}, j)); });
      }
    report.checks.push_back(std::move(c.check));
  }
  {
    Checker c(g, b, "s_mu* s_mu = s_s(mu)");
    for (const Path& mu : P)
      c.instance(g.path_name(mu), mu.degree().total(), [&](std::size_t j) {
        return same(run({&s_of(mu), &sstar_of(mu)}, j), run({&s_of(g.vertex(mu.source()))}, j));
      });
    report.checks.push_back(std::move(c.check));
  }
  {
    Checker c(g, b, "s_v = sum s_mu s_mu*");
    std::vector<Degree> degrees;
    for (Color i = 0; i < g.k(); ++i) degrees.push_back(Degree::unit(k, i));
    if (std::find(degrees.begin(), degrees.end(), paths) == degrees.end() && !paths.is_zero())
      degrees.push_back(paths);
    for (VertexId v = 0; v < nv; ++v)
      for (const Degree& p : degrees) {
        const auto mus = g.paths_of_degree(v, p);
        c.instance(g.vertex_name(v) + " at degree " + p.to_string(), p.total(), [&](std::size_t j) {
          SparseVector sum;
          for (const Path& mu : mus) sum += run({&sstar_of(mu), &s_of(mu)}, j);
          return same(sum, run({&s_of(g.vertex(v))}, j));
        });
      }
    report.checks.push_back(std::move(c.check));
  }
  {
    Checker c(g, b, "u_g u_h = u_gh");
    for (GroupElem x = 0; x < static_cast<GroupElem>(G.order()); ++x)
      for (GroupElem y = 0; y < static_cast<GroupElem>(G.order()); ++y)
        c.instance(G.name(x) + "," + G.name(y), 2,
                   [&](std::size_t j) { return same(run({&U[y], &U[x]}, j), run({&U[G.mul(x, y)]}, j)); });
    c.instance("u_1 = 1", 0, [&](std::size_t j) { return same(run({&U[G.identity()]}, j), SparseVector::basis(j)); });
    report.checks.push_back(std::move(c.check));
  }
  {
    Checker c(g, b, "u_g s_mu = s_(g.mu) u_(g|mu)");
    for (GroupElem x = 0; x < static_cast<GroupElem>(G.order()); ++x)
      for (const Path& mu : P) {
        const Path gmu = ss.act(x, mu);
        const GroupElem rest = ss.restriction(x, mu);
        c.instance(G.name(x) + "," + g.path_name(mu), mu.degree().total() + 1, [&](std::size_t j) {
          return same(run({&s_of(mu), &U[x]}, j), run({&U[rest], &s_of(gmu)}, j));
        });
      }
    report.checks.push_back(std::move(c.check));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Tail representations

TailRepresentation represent_tail(const SelfSimilarKGraph& ss, const TailAnalysis& t, const RationalCharacter& f,
                                  int depth) {
  InfinitePath x = cofinal_infinite_path(ss.graph(), t.tail);
  OrbitBasis basis = build_orbit(ss, x, depth);
  return {std::move(x), extend_character(f, t.per), std::move(basis)};
}

bool vertex_kernel_probe(const SelfSimilarKGraph& ss, const TailRepresentation& r, VertexId v) {
  return represent_s(ss, r.basis, ss.graph().vertex(v), r.ft).is_zero();
}

RelationReport check_ideal(const SelfSimilarKGraph& ss, const TailRepresentation& r, const TailAnalysis& t,
                           const IdealPresentation& ideal) {
  const KGraph& g = ss.graph();
  const OrbitBasis& b = r.basis;
  RelationReport report;
  report.basis_size = b.size();
  report.depth = b.max_depth();
  {
    Checker c(g, b, "s_v = 0 outside T");
    for (VertexId v : ideal.vertex_generators) {
      const ExactMatrix sv = represent_s(ss, b, g.vertex(v), r.ft);
      c.instance(g.vertex_name(v), 0, [&](std::size_t j) { return run({&sv}, j).is_zero(); });
    }
    report.checks.push_back(std::move(c.check));
  }
  {
    Checker c(g, b, "s_mu = f(d(mu)-d(nu)) s_nu on H_T");
    for (const IdealRelation& rel : ideal.relations) {
      const ExactMatrix smu = represent_s(ss, b, rel.mu, r.ft);
      const ExactMatrix snu = represent_s(ss, b, rel.nu, r.ft);
      const int radius = std::max(rel.mu.degree().total(), rel.nu.degree().total());
      c.instance(
          g.path_name(rel.mu) + " vs " + g.path_name(rel.nu), radius,
          [&](std::size_t j) {
            SparseVector v = run({&smu}, j);
            v += run({&snu}, j).scaled(rel.scalar, -1);
            return !v.escaped && v.is_zero();
          },
          [&](std::size_t j) { return static_cast<bool>(t.h[b[j].y.prefix.range()]); });
    }
    report.checks.push_back(std::move(c.check));
  }
  return report;
}

}  // namespace sskg
