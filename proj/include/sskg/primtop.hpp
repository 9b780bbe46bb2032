#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sskg/action.hpp"
#include "sskg/lattice.hpp"
#include "sskg/tails.hpp"

namespace sskg {

enum class Verdict { Pass, Fail, Auto, Assumed, Inconclusive, Vacuous };
std::string to_string(Verdict v);

struct TailHypotheses {
  VertexSet tail;
  /// Every cycline triple of (G, ΛT) is a pair, up to the bound.
  TriplesReport triples;
  /// H_T ΛT strongly connected; only meaningful for tau tails.
  Verdict strongly_connected = Verdict::Vacuous;
  std::string note;
};

struct HypothesisReport {
  Degree bound;
  /// Vertex action is trivial by construction of SelfSimilarKGraph.
  Verdict vertex_fixing = Verdict::Pass;
  Verdict pseudo_free = Verdict::Pass;
  PseudoFreeResult pseudo_free_detail;
  Verdict triples_are_pairs = Verdict::Pass;
  Verdict strongly_connected = Verdict::Vacuous;
  Verdict ideal_generation = Verdict::Auto;
  std::vector<TailHypotheses> tails;
  std::vector<std::string> caveats;

  /// The hypotheses needed to enumerate Prim hold (the triples check up to
  /// the bound).
  bool prim_ready() const;
  std::vector<std::string> failures() const;
};

struct PrimStratum {
  TailAnalysis tail;
  /// Dual of Per: a point when the rank is 0, a torus of this rank otherwise.
  std::size_t rank() const { return tail.per.rank(); }
};

/// Maximal tails with classification, Per and H_T, computed once.
struct PrimAnalysis {
  Degree bound;
  std::vector<PrimStratum> strata;
  HypothesisReport hypotheses;

  const PrimStratum* find(const VertexSet& t) const;
  std::size_t index_of(const VertexSet& t) const;
};

/// Runs every check; never throws on hypothesis failures (those are
/// recorded in the report). A tau tail whose bounded H_T comes back empty is
/// kept with an empty H and an Inconclusive verdict.
PrimAnalysis analyze(const SelfSimilarKGraph& ss, const Degree& bound);
HypothesisReport check_hypotheses(const SelfSimilarKGraph& ss, const Degree& bound);
/// Throws HypothesisUnverified listing the failed hypotheses.
std::vector<PrimStratum> enumerate_prim(const SelfSimilarKGraph& ss, const Degree& bound);

// ---------------------------------------------------------------------------
// Closure queries over an abstract universe of maximal tails.

struct TailPoint {
  VertexSet vertices;
  bool tau = false;
  std::size_t rank = 0;
};

struct ClosureQuery {
  std::size_t t0 = 0;
  RationalCharacter f0;
  std::vector<std::size_t> w;
  std::vector<std::pair<std::size_t, CharacterSet>> y;
};

struct ClosureAnswer {
  bool verdict = false;
  /// "1", "2", "3", "4a" or "4b"; mixed queries join the two parts with "|".
  std::string case_id;
  std::vector<std::size_t> witness_tails;
  std::optional<VertexId> uncovered;
  std::vector<std::string> caveats;
};

/// Membership of (T0, f0) in the closure of the set of points given by W and
/// (Y, D). Throws InvalidQuery on malformed queries.
ClosureAnswer closure_membership(const std::vector<TailPoint>& universe, const ClosureQuery& q);

std::vector<TailPoint> tail_points(const PrimAnalysis& a);
/// Adds the caveats that apply to every topology answer for this graph.
std::vector<std::string> topology_caveats(const PrimAnalysis& a);

struct SpecializationEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  /// "always" or "iff f0=f".
  std::string label;
};

/// Edge from -> to when points of `to` lie in the closure of a point of
/// `from`, derived from singleton closure queries.
std::vector<SpecializationEdge> specialization_preorder(const std::vector<TailPoint>& universe);
std::string specialization_dot(const KGraph& g, const std::vector<TailPoint>& universe,
                               const std::vector<SpecializationEdge>& edges);

// ---------------------------------------------------------------------------
// Ideal presentation

struct IdealRelation {
  Path mu;
  Path nu;
  /// s_mu - e^{2 pi i scalar} s_nu lies in the ideal.
  Angle scalar;
};

struct IdealPresentation {
  std::vector<VertexId> vertex_generators;
  std::vector<IdealRelation> relations;
  Degree bound;
};

/// Generators of I_{T,f}: s_v for v outside T and the non-degenerate cycline
/// pairs of H_T ΛT up to the bound, with f evaluated on their degree
/// difference.
IdealPresentation ideal_presentation(const SelfSimilarKGraph& ss, const TailAnalysis& t,
                                     const RationalCharacter& f, const Degree& bound);

}  // namespace sskg
