#include "sskg/primtop.hpp"

#include <algorithm>
#include <sstream>

#include "sskg/error.hpp"

namespace sskg {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Auto: return "AUTO";
    case Verdict::Assumed: return "ASSUMED";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    case Verdict::Vacuous: return "VACUOUS";
  }
  return {};
}

bool HypothesisReport::prim_ready() const {
  return vertex_fixing == Verdict::Pass && pseudo_free == Verdict::Pass && triples_are_pairs == Verdict::Pass;
}

std::vector<std::string> HypothesisReport::failures() const {
  std::vector<std::string> out;
  if (vertex_fixing != Verdict::Pass) out.push_back("vertex-fixing");
  if (pseudo_free != Verdict::Pass) out.push_back("pseudo-free");
  if (triples_are_pairs != Verdict::Pass) out.push_back("triples-are-pairs");
  return out;
}

const PrimStratum* PrimAnalysis::find(const VertexSet& t) const {
  for (const auto& s : strata)
    if (s.tail.tail == t) return &s;
  return nullptr;
}

std::size_t PrimAnalysis::index_of(const VertexSet& t) const {
  for (std::size_t i = 0; i < strata.size(); ++i)
    if (strata[i].tail.tail == t) return i;
  return strata.size();
}

PrimAnalysis analyze(const SelfSimilarKGraph& ss, const Degree& bound) {
  const KGraph& g = ss.graph();
  if (bound.size() != static_cast<std::size_t>(g.k()))
    throw Error(ErrorKind::Malformed, "bound has " + std::to_string(bound.size()) + " components, expected " +
                                          std::to_string(g.k()));
  PrimAnalysis a;
  a.bound = bound;
  HypothesisReport& h = a.hypotheses;
  h.bound = bound;
  h.pseudo_free_detail = pseudo_free_check(ss);
  h.pseudo_free = h.pseudo_free_detail.pseudo_free ? Verdict::Pass : Verdict::Fail;
  h.ideal_generation = g.k() == 1 ? Verdict::Auto : Verdict::Assumed;
  if (g.k() >= 2) h.caveats.push_back("hypothesis (4) assumed");

  bool any_tau = false;
  bool any_inconclusive = false;
  bool any_fail = false;
  for (VertexSet& t : maximal_tails(g)) {
    TailHypotheses th;
    th.tail = t;
    const Restriction rt = restrict_to(ss, t);
    th.triples = verify_triples_are_pairs(rt.graph, bound);
    if (th.triples.witness) th.triples.witness = rt.lift(g, *th.triples.witness);
    if (!th.triples.pass) h.triples_are_pairs = Verdict::Fail;

    PrimStratum stratum;
    stratum.tail = analyze_tail(ss, t, bound, true);
    const bool h_empty = std::none_of(stratum.tail.h.begin(), stratum.tail.h.end(), [](bool b) { return b; });
    if (stratum.tail.cls == TailClass::Tau) {
      any_tau = true;
      if (h_empty) {
        th.strongly_connected = Verdict::Inconclusive;
        th.note = "H_T is empty up to bound " + bound.to_string();
        any_inconclusive = true;
      } else {
        const bool sc = strongly_connected(g, stratum.tail.h);
        if (g.k() == 1) {
          th.strongly_connected = sc ? Verdict::Auto : Verdict::Fail;
          th.note = "unique cycle without entrances";
        } else {
          th.strongly_connected = sc ? Verdict::Pass : Verdict::Fail;
        }
        any_fail |= !sc;
      }
    }
    a.strata.push_back(std::move(stratum));
    h.tails.push_back(std::move(th));
  }
  if (any_fail)
    h.strongly_connected = Verdict::Fail;
  else if (any_inconclusive)
    h.strongly_connected = Verdict::Inconclusive;
  else if (any_tau)
    h.strongly_connected = g.k() == 1 ? Verdict::Auto : Verdict::Pass;
  if (g.k() >= 2) h.caveats.push_back("cycline enumeration complete up to bound " + bound.to_string());
  return a;
}

HypothesisReport check_hypotheses(const SelfSimilarKGraph& ss, const Degree& bound) {
  return analyze(ss, bound).hypotheses;
}

std::vector<PrimStratum> enumerate_prim(const SelfSimilarKGraph& ss, const Degree& bound) {
  PrimAnalysis a = analyze(ss, bound);
  if (!a.hypotheses.prim_ready()) {
    std::string list;
    for (const auto& f : a.hypotheses.failures()) list += (list.empty() ? "" : ", ") + f;
    throw Error(ErrorKind::HypothesisUnverified, "unverified hypotheses: " + list);
  }
  return std::move(a.strata);
}

// ---------------------------------------------------------------------------
// Closure

namespace {

void check_rank(const RationalCharacter& f, std::size_t rank, const std::string& what) {
  if (f.angles.size() != rank)
    throw Error(ErrorKind::InvalidQuery, what + " has " + std::to_string(f.angles.size()) +
                                             " angles but the Per lattice has rank " + std::to_string(rank));
}

// T0 ⊆ ∪ sets; witness = members meeting T0.
ClosureAnswer cover(const std::vector<TailPoint>& u, std::size_t t0, const std::vector<std::size_t>& sets,
                    std::string case_id) {
  ClosureAnswer out;
  out.case_id = std::move(case_id);
  const VertexSet& target = u[t0].vertices;
  for (VertexId v : members(target)) {
    const bool covered = std::any_of(sets.begin(), sets.end(), [&](std::size_t i) { return u[i].vertices[v]; });
    if (!covered) {
      out.uncovered = v;
      return out;
    }
  }
  out.verdict = true;
  for (std::size_t i : sets) {
    const auto& vs = u[i].vertices;
    bool meets = false;
    for (std::size_t v = 0; v < vs.size(); ++v) meets |= vs[v] && target[v];
    if (meets && std::find(out.witness_tails.begin(), out.witness_tails.end(), i) == out.witness_tails.end())
      out.witness_tails.push_back(i);
  }
  return out;
}

ClosureAnswer case_four(const std::vector<TailPoint>& u, const ClosureQuery& q) {
  ClosureAnswer out;
  for (const auto& [i, d] : q.y)
    if (i != q.t0 && is_subset(u[q.t0].vertices, u[i].vertices)) {
      out.verdict = true;
      out.case_id = "4a";
      out.witness_tails = {i};
      return out;
    }
  out.case_id = "4b";
  for (const auto& [i, d] : q.y)
    if (i == q.t0 && closure_contains(d, q.f0)) {
      out.verdict = true;
      out.witness_tails = {i};
      return out;
    }
  return out;
}

}  // namespace

ClosureAnswer closure_membership(const std::vector<TailPoint>& u, const ClosureQuery& q) {
  auto check_index = [&](std::size_t i) {
    if (i >= u.size()) throw Error(ErrorKind::InvalidQuery, "tail index " + std::to_string(i) + " is not a maximal tail");
  };
  check_index(q.t0);
  if (q.w.empty() && q.y.empty()) throw Error(ErrorKind::InvalidQuery, "W and Y are both empty");
  check_rank(q.f0, u[q.t0].rank, "query character");
  for (std::size_t i : q.w) {
    check_index(i);
    if (u[i].tau) throw Error(ErrorKind::InvalidQuery, "W contains a tau tail");
  }
  for (const auto& [i, d] : q.y) {
    check_index(i);
    if (!u[i].tau) throw Error(ErrorKind::InvalidQuery, "Y contains a gamma tail");
    if (d.empty()) throw Error(ErrorKind::InvalidQuery, "character set of a Y tail is empty");
    for (const auto& f : d.elements) check_rank(f, u[i].rank, "character in D");
  }

  const bool tau0 = u[q.t0].tau;
  std::optional<ClosureAnswer> w_part;
  std::optional<ClosureAnswer> y_part;
  if (!q.w.empty()) w_part = cover(u, q.t0, q.w, tau0 ? "2" : "1");
  if (!q.y.empty()) {
    if (tau0) {
      y_part = case_four(u, q);
    } else {
      std::vector<std::size_t> ys;
      for (const auto& [i, d] : q.y) ys.push_back(i);
      y_part = cover(u, q.t0, ys, "3");
    }
  }
  if (w_part && y_part) {
    if (w_part->verdict) return *w_part;
    if (y_part->verdict) return *y_part;
    ClosureAnswer out;
    out.case_id = w_part->case_id + "|" + y_part->case_id;
    out.uncovered = w_part->uncovered;
    return out;
  }
  return w_part ? *w_part : *y_part;
}

std::vector<TailPoint> tail_points(const PrimAnalysis& a) {
  std::vector<TailPoint> out;
  for (const auto& s : a.strata) out.push_back({s.tail.tail, s.tail.cls == TailClass::Tau, s.rank()});
  return out;
}

std::vector<std::string> topology_caveats(const PrimAnalysis& a) {
  std::vector<std::string> out = a.hypotheses.caveats;
  for (const auto& s : a.strata)
    if (s.tail.cls == TailClass::GammaUpToBound) {
      out.push_back("gamma classification up to bound " + a.bound.to_string());
      break;
    }
  if (!a.hypotheses.prim_ready()) out.push_back("hypotheses unverified");
  if (a.hypotheses.strongly_connected == Verdict::Fail || a.hypotheses.strongly_connected == Verdict::Inconclusive)
    out.push_back("hypothesis (3) " + to_string(a.hypotheses.strongly_connected));
  return out;
}

std::vector<SpecializationEdge> specialization_preorder(const std::vector<TailPoint>& u) {
  std::vector<SpecializationEdge> out;
  auto zero = [&](std::size_t i) { return RationalCharacter{std::vector<Angle>(u[i].rank)}; };
  for (std::size_t from = 0; from < u.size(); ++from)
    for (std::size_t to = 0; to < u.size(); ++to) {
      ClosureQuery q;
      q.t0 = to;
      q.f0 = zero(to);
      if (u[from].tau)
        q.y = {{from, CharacterSet::finite({zero(from)})}};
      else
        q.w = {from};
      const ClosureAnswer ans = closure_membership(u, q);
      if (!ans.verdict) continue;
      out.push_back({from, to, ans.case_id == "4b" ? "iff f0=f" : "always"});
    }
  return out;
}

std::string specialization_dot(const KGraph& g, const std::vector<TailPoint>& u,
                               const std::vector<SpecializationEdge>& edges) {
  std::ostringstream os;
  os << "digraph prim {\n";
  for (std::size_t i = 0; i < u.size(); ++i)
    os << "  s" << i << " [label=\"" << set_name(g, u[i].vertices) << (u[i].tau ? " tau" : " gamma") << " rank "
       << u[i].rank << "\"];\n";
  for (const auto& e : edges) os << "  s" << e.from << " -> s" << e.to << " [label=\"" << e.label << "\"];\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------

IdealPresentation ideal_presentation(const SelfSimilarKGraph& ss, const TailAnalysis& t,
                                     const RationalCharacter& f, const Degree& bound) {
  const KGraph& g = ss.graph();
  IdealPresentation out;
  out.bound = bound;
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v)
    if (!t.tail[v]) out.vertex_generators.push_back(v);
  if (t.per.is_zero()) return out;
  check_rank(f, t.per.rank(), "character");
  const Restriction rh = restrict_to(ss, t.h);
  for (const auto& pair : cycline_pairs_up_to(rh.graph, bound)) {
    if (pair.mu == pair.nu) continue;
    const CyclineTriple lifted = rh.lift(g, pair);
    out.relations.push_back(
        {lifted.mu, lifted.nu, evaluate(t.per, f, difference(lifted.mu.degree(), lifted.nu.degree()))});
  }
  return out;
}

}  // namespace sskg
