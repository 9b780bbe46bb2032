#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sskg/document.hpp"
#include "sskg/error.hpp"
#include "sskg/lattice.hpp"

namespace sskg {

using Json = nlohmann::ordered_json;

struct RunOptions {
  /// Defaults to 4 in every color.
  std::optional<Degree> bound;
  int depth = 6;
  /// Uniform characters tried by repr-check.
  std::vector<Angle> angles{Angle(0, 1), Angle(1, 2), Angle(1, 3)};
};

const std::vector<std::string>& command_names();

/// One of validate | tails | per | prim | hypotheses | closure | spec-order |
/// repr-check. `dot` receives the DOT export of spec-order when non-null.
Json run_command(const std::string& command, const GraphDocument& doc, const RunOptions& opts,
                 std::string* dot = nullptr);

Json error_json(const Error& e);

Degree parse_bound(const std::string& text);
std::vector<Angle> parse_angles(const std::string& text);

}  // namespace sskg
