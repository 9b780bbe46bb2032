#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sskg/action.hpp"
#include "sskg/kgraph.hpp"
#include "sskg/lattice.hpp"
#include "sskg/tails.hpp"

namespace sskg {

struct GroupSpec {
  std::vector<std::string> names;
  GroupElem identity = 0;
  std::vector<std::vector<GroupElem>> table;
  /// Identity rows are implicit in documents but stored here in full.
  ActionTable action;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct QuerySpec {
  VertexSet point;
  RationalCharacter f0;
  std::vector<VertexSet> w;
  std::vector<std::pair<VertexSet, CharacterSet>> y;

  friend bool operator==(const QuerySpec&, const QuerySpec&) = default;
};

struct GraphDocument {
  Skeleton skeleton;
  std::vector<Square> squares;
  /// Absent means the trivial group.
  std::optional<GroupSpec> group;
  std::vector<QuerySpec> queries;

  friend bool operator==(const GraphDocument&, const GraphDocument&) = default;
};

/// Throws ParseError (SyntaxError, DuplicateId, DanglingReference) at the
/// first problem.
GraphDocument parse_document(std::string_view text);
std::string serialize(const GraphDocument& doc);

/// Validates the graph and the action.
SelfSimilarKGraph build(const GraphDocument& doc);

}  // namespace sskg
