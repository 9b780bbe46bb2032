#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sskg/kgraph.hpp"

namespace sskg {

using GroupElem = std::int32_t;

/// Finite group given by its multiplication table.
class FiniteGroup {
 public:
  static FiniteGroup trivial();
  /// table[a][b] = ab. Throws Malformed unless the table is a group with the
  /// given identity.
  static FiniteGroup from_table(std::vector<std::string> names,
                                std::vector<std::vector<GroupElem>> table, GroupElem identity);

  std::size_t order() const { return names_.size(); }
  GroupElem identity() const { return identity_; }
  GroupElem mul(GroupElem a, GroupElem b) const { return table_[a][b]; }
  GroupElem inverse(GroupElem a) const { return inverse_[a]; }
  const std::string& name(GroupElem a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<GroupElem>>& table() const { return table_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<GroupElem>> table_;
  std::vector<GroupElem> inverse_;
  GroupElem identity_ = 0;
};

/// act[g][e] = g·e and restriction[g][e] = g|_e. Vertices are fixed.
struct ActionTable {
  std::vector<std::vector<EdgeId>> act;
  std::vector<std::vector<GroupElem>> restriction;
  friend bool operator==(const ActionTable&, const ActionTable&) = default;
};

/// A validated self-similar k-graph (G, Λ) with trivial vertex action.
class SelfSimilarKGraph {
 public:
  const KGraph& graph() const { return graph_; }
  const FiniteGroup& group() const { return group_; }
  const ActionTable& table() const { return table_; }
  bool trivial_group() const { return group_.order() == 1; }

  EdgeId act(GroupElem g, EdgeId e) const { return table_.act[g][e]; }
  GroupElem restriction(GroupElem g, EdgeId e) const { return table_.restriction[g][e]; }

  Path act(GroupElem g, const Path& mu) const;
  GroupElem restriction(GroupElem g, const Path& mu) const;
  InfinitePath act(GroupElem g, const InfinitePath& x) const;

 private:
  friend SelfSimilarKGraph validate_action(KGraph, FiniteGroup, ActionTable);
  SelfSimilarKGraph(KGraph g, FiniteGroup grp, ActionTable t)
      : graph_(std::move(g)), group_(std::move(grp)), table_(std::move(t)) {}

  KGraph graph_;
  FiniteGroup group_;
  ActionTable table_;
};

/// Verifies the self-similarity axioms on edges and across every
/// factorization square. Throws AxiomError with the axiom number (0 for the
/// action law (gh)·e = g·(h·e), 1·e = e).
SelfSimilarKGraph validate_action(KGraph graph, FiniteGroup group, ActionTable table);
SelfSimilarKGraph trivial_action(KGraph graph);

struct PseudoFreeResult {
  bool pseudo_free = true;
  /// Counterexample: g != 1 with g·path = path and g|_path = 1.
  std::optional<GroupElem> g;
  std::optional<Path> path;
};

/// Exact decision by reachability in the automaton on (h, v) whose moves
/// follow edges fixed by h.
PseudoFreeResult pseudo_free_check(const SelfSimilarKGraph& ss);

struct CyclineTriple {
  Path mu;
  GroupElem g = 0;
  Path nu;

  friend bool operator==(const CyclineTriple&, const CyclineTriple&) = default;
};

/// Decides whether mu (g·x) = nu x for every x in s(nu)Λ^∞. Triples violating
/// s(mu) = g·s(nu) are reported as not cycline.
bool cycline_check(const SelfSimilarKGraph& ss, const Path& mu, GroupElem g, const Path& nu);

/// All cycline triples with d(mu), d(nu) <= bound, sorted by (mu, g, nu).
/// Complete up to the bound only.
std::vector<CyclineTriple> cycline_triples_up_to(const SelfSimilarKGraph& ss, const Degree& bound);
std::vector<CyclineTriple> cycline_pairs_up_to(const SelfSimilarKGraph& ss, const Degree& bound);

struct TriplesReport {
  bool pass = true;
  Degree bound;
  std::optional<CyclineTriple> witness;
};

/// PASS when no cycline triple with g != 1 exists up to the bound.
TriplesReport verify_triples_are_pairs(const SelfSimilarKGraph& ss, const Degree& bound);

std::string triple_name(const SelfSimilarKGraph& ss, const CyclineTriple& t);

}  // namespace sskg
