#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sskg/action.hpp"
#include "sskg/kgraph.hpp"
#include "sskg/lattice.hpp"

namespace sskg {

/// Vertex subset as a membership mask indexed by VertexId.
using VertexSet = std::vector<bool>;

VertexSet vertex_set(std::size_t n, std::initializer_list<VertexId> members);
std::vector<VertexId> members(const VertexSet& s);
bool is_subset(const VertexSet& a, const VertexSet& b);
std::string set_name(const KGraph& g, const VertexSet& s);

bool is_hereditary(const KGraph& g, const VertexSet& h);
bool is_saturated(const KGraph& g, const VertexSet& h);
/// Least hereditary saturated set containing a.
VertexSet hereditary_saturated_closure(const KGraph& g, const VertexSet& a);

/// The three tail conditions, with condition (2) checked on unit degrees.
bool is_maximal_tail(const KGraph& g, const VertexSet& t);
/// All maximal tails, ordered by decreasing size and then by membership mask.
std::vector<VertexSet> maximal_tails(const KGraph& g, std::size_t max_vertices = 22);

/// Every ordered pair of vertices of h is joined by a path of g.
bool strongly_connected(const KGraph& g, const VertexSet& h);

/// Induced self-similar k-graph on the paths whose vertices all lie in
/// `subset`, with id maps in both directions (-1 where absent).
struct Restriction {
  SelfSimilarKGraph graph;
  std::vector<VertexId> vertex_to_parent;
  std::vector<EdgeId> edge_to_parent;
  std::vector<VertexId> vertex_from_parent;
  std::vector<EdgeId> edge_from_parent;

  Path lift(const KGraph& parent, const Path& p) const;
  CyclineTriple lift(const KGraph& parent, const CyclineTriple& t) const;
};

/// Every vertex of `subset` must receive edges of every color from inside it;
/// maximal tails and their hereditary subsets qualify.
Restriction restrict_to(const SelfSimilarKGraph& ss, const VertexSet& subset);

enum class TailClass { Gamma, Tau, GammaUpToBound };
std::string to_string(TailClass c);

struct TailAnalysis {
  VertexSet tail;
  TailClass cls = TailClass::Gamma;
  /// Structural (k = 1) answers are exact; otherwise complete up to `bound`.
  bool exact = false;
  Degree bound;
  PerLattice per;
  /// Cycline pair of ΛT with nonzero degree difference (parent ids).
  std::optional<CyclineTriple> witness;
  VertexSet h;
  bool h_exact = false;
  bool h_hereditary = true;
};

/// k = 1: the vertices of the unique cycle without entrances in ΛT, or an
/// empty set when there is none.
VertexSet cycle_without_entrances(const KGraph& g, const VertexSet& t);

/// Classification, Per lattice and H_T. When the bounded H_T computation
/// comes back empty this throws EmptyResult, or keeps the empty set if
/// `allow_empty`.
TailAnalysis analyze_tail(const SelfSimilarKGraph& ss, const VertexSet& t, const Degree& bound,
                          bool allow_empty = false);

/// Bounded H_T: v passes when for all p, q <= bound with p - q in `per` every
/// mu in vΛ^pT has exactly one cycline partner in vΛ^qT. Runs on the
/// restriction to T.
VertexSet bounded_h(const Restriction& rt, const PerLattice& per, const Degree& bound);

}  // namespace sskg
