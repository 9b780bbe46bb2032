#pragma once

#include <random>
#include <string>
#include <vector>

#include "sskg/action.hpp"
#include "sskg/document.hpp"
#include "sskg/lattice.hpp"
#include "sskg/primtop.hpp"
#include "sskg/tails.hpp"

namespace fixtures {

/// Loads graphs/<name>.sskg.
std::string read_graph_text(const std::string& name);
sskg::GraphDocument load_document(const std::string& name);
sskg::SelfSimilarKGraph load(const std::string& name);
sskg::SelfSimilarKGraph from_text(const std::string& text);

sskg::VertexId vertex(const sskg::KGraph& g, const std::string& name);
sskg::EdgeId edge(const sskg::KGraph& g, const std::string& name);
/// Vertex set from names.
sskg::VertexSet set(const sskg::KGraph& g, std::initializer_list<const char*> names);
/// Path from edge names, range end first.
sskg::Path path(const sskg::KGraph& g, std::initializer_list<const char*> edges);
sskg::GroupElem element(const sskg::FiniteGroup& grp, const std::string& name);

/// Random 3-vertex 1-graph: every vertex receives one or two edges, at least
/// one vertex receives two.
sskg::SelfSimilarKGraph random_1graph(std::mt19937& rng);
/// Random 3-vertex 2-graph with equal color matrices and random square
/// bijections.
sskg::SelfSimilarKGraph random_2graph(std::mt19937& rng);

sskg::Angle angle(std::int64_t num, std::int64_t den);
sskg::RationalCharacter chr(std::initializer_list<sskg::Angle> angles);

}  // namespace fixtures

namespace oracle {

/// Normal form by breadth-first square rewriting to the color-sorted word.
std::vector<sskg::EdgeId> rewrite_normal_form(const sskg::Skeleton& sk, const std::vector<sskg::Square>& squares,
                                              const std::vector<sskg::EdgeId>& word);

/// Composable edge words ending at range v whose color sequence is the
/// block sequence of p.
std::vector<std::vector<sskg::EdgeId>> words_of_degree(const sskg::Skeleton& sk, sskg::VertexId v,
                                                      const sskg::Degree& p);

/// g·word and g|_word folded edge by edge.
std::pair<std::vector<sskg::EdgeId>, sskg::GroupElem> fold_action(const sskg::SelfSimilarKGraph& ss,
                                                                  sskg::GroupElem g,
                                                                  const std::vector<sskg::EdgeId>& word);

/// mu (g·λ) and ν λ agree on their common initial segment for every λ in
/// s(ν)Λ^{depth·1}, restricted to λ with source in `within` when given.
bool cycline_prefix(const sskg::SelfSimilarKGraph& ss, const sskg::Path& mu, sskg::GroupElem g,
                    const sskg::Path& nu, int depth, const sskg::VertexSet* within = nullptr);

/// Tail conditions straight from the definition, condition (2) over all
/// degrees up to `bound`.
bool tail_conditions(const sskg::KGraph& g, const sskg::VertexSet& t, int bound);
std::vector<sskg::VertexSet> maximal_tails_by_subsets(const sskg::KGraph& g, int bound);

/// Intersection of all hereditary saturated supersets of a; saturation over
/// degrees up to `bound`.
sskg::VertexSet sigma_by_subsets(const sskg::KGraph& g, const sskg::VertexSet& a, int bound);

/// Smith invariants from gcds of minors.
std::vector<std::int64_t> determinantal_invariants(const sskg::IntMatrix& m, std::size_t columns);

/// v is in H_T when every mu in vΛ^pT has exactly one cycline partner in
/// vΛ^qT for p, q <= bound with p - q in per (prefix oracle).
sskg::VertexSet h_by_uniqueness(const sskg::SelfSimilarKGraph& ss, const sskg::VertexSet& t,
                                const sskg::PerLattice& per, int bound, int depth);

/// Infinite paths reachable from x by at most n moves, deduplicated by the
/// initial segment of degree `window`·1.
std::vector<std::vector<sskg::EdgeId>> move_closure(const sskg::SelfSimilarKGraph& ss, const sskg::InfinitePath& x,
                                                    int n, int window);
std::vector<sskg::EdgeId> window_word(const sskg::KGraph& g, const sskg::InfinitePath& x, int window);

/// Subgroup of Q/Z^r generated by gens, listed by brute-force multiples.
bool subgroup_contains(const std::vector<sskg::RationalCharacter>& gens, const sskg::RationalCharacter& f0);

/// The closure theorem stated directly on sets.
bool theorem_closure(const std::vector<sskg::TailPoint>& universe, const sskg::ClosureQuery& q);

}  // namespace oracle
